//! End-to-end tests of the binary: exit codes, output shapes, determinism,
//! and the environment-override rules.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quartic_theta::siegel::random_tau;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quartic-theta"));
    // Isolate from ambient configuration.
    cmd.env_remove("QTHETA_TOL");
    cmd.env_remove("QTHETA_COMPARE_TOL");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn write_tau(dir: &Path, name: &str, seed: u64) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, random_tau(seed, 3, 0.3).to_json()).expect("write tau");
    path
}

#[test]
fn bitangents_produces_28_sorted_lines_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let tau = write_tau(dir.path(), "tau.json", 5);
    let out1 = run(&["bitangents", tau.to_str().unwrap()]);
    let out2 = run(&["bitangents", tau.to_str().unwrap()]);
    assert!(out1.status.success(), "{}", stderr_of(&out1));
    assert_eq!(out1.stdout, out2.stdout, "byte-identical across runs");
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out1)).unwrap();
    assert_eq!(doc["genus"], 3);
    assert_eq!(doc["bitangents"].as_array().unwrap().len(), 28);

    // -o writes the same document to a file
    let out_path = dir.path().join("bit.json");
    let out3 = run(&[
        "bitangents",
        tau.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert!(out3.status.success());
    assert_eq!(std::fs::read(&out_path).unwrap(), out1.stdout);
}

#[test]
fn bitangents_rejects_invalid_tau_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let tau = write_tau(dir.path(), "tau.json", 5);
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&tau).unwrap()).unwrap();
    doc["tau"][0][1][0] = serde_json::json!(0.75); // breaks symmetry
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["bitangents", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("symmetric"), "names the failed invariant");
}

#[test]
fn bitangents_rejects_hyperelliptic_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let tau = dir.path().join("iI.json");
    let entry = |i: usize, j: usize| {
        if i == j {
            serde_json::json!([0.0, 1.0])
        } else {
            serde_json::json!([0.0, 0.0])
        }
    };
    let rows: Vec<serde_json::Value> = (0..3)
        .map(|i| serde_json::Value::Array((0..3).map(|j| entry(i, j)).collect()))
        .collect();
    std::fs::write(
        &tau,
        serde_json::to_string(&serde_json::json!({"genus": 3, "tau": rows})).unwrap(),
    )
    .unwrap();
    let out = run(&["bitangents", tau.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("hyperelliptic"));
}

#[test]
fn weber_verify_random_passes_and_is_byte_deterministic() {
    let out1 = run(&["weber-verify", "--random", "5", "--seed", "1", "--json"]);
    let out2 = run(&["weber-verify", "--random", "5", "--seed", "1", "--json"]);
    assert!(out1.status.success(), "{}", stderr_of(&out1));
    assert_eq!(out1.stdout, out2.stdout, "same seed, same report bytes");
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out1)).unwrap();
    assert_eq!(doc["pass"], true);
    for trial in doc["trials"].as_array().unwrap() {
        assert!(trial["residual"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn weber_verify_accepts_tau_file() {
    let dir = tempfile::tempdir().unwrap();
    let tau = write_tau(dir.path(), "tau.json", 7);
    let out = run(&["weber-verify", tau.to_str().unwrap(), "--seed", "2"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(stdout_of(&out).contains("residual"));
}

#[test]
fn weber_verify_corrupt_exits_nonzero() {
    let out = run(&["weber-verify", "--random", "2", "--seed", "1", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("FAIL"));
}

#[test]
fn weber_verify_requires_exactly_one_source() {
    let out = run(&["weber-verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fingerprint_compare_same_and_different() {
    let dir = tempfile::tempdir().unwrap();
    let tau_a = write_tau(dir.path(), "a.json", 5);
    let tau_b = write_tau(dir.path(), "b.json", 99);
    let bit_a = dir.path().join("bit_a.json");
    let bit_b = dir.path().join("bit_b.json");
    let fp_a = dir.path().join("fp_a.json");
    assert!(run(&["bitangents", tau_a.to_str().unwrap(), "-o", bit_a.to_str().unwrap()])
        .status
        .success());
    assert!(run(&["bitangents", tau_b.to_str().unwrap(), "-o", bit_b.to_str().unwrap()])
        .status
        .success());
    let fp_out = run(&["fingerprint", bit_a.to_str().unwrap(), "-o", fp_a.to_str().unwrap()]);
    assert!(fp_out.status.success(), "{}", stderr_of(&fp_out));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&fp_a).unwrap()).unwrap();
    assert_eq!(doc["quotients"].as_array().unwrap().len(), 36);

    // fingerprint vs its own bitangent file: SAME, exit 0
    let same = run(&["compare", fp_a.to_str().unwrap(), bit_a.to_str().unwrap()]);
    assert_eq!(same.status.code(), Some(0));
    assert!(stdout_of(&same).starts_with("SAME"));

    // independent curves: DIFFERENT, exit 1
    let diff = run(&["compare", fp_a.to_str().unwrap(), bit_b.to_str().unwrap()]);
    assert_eq!(diff.status.code(), Some(1));
    assert!(stdout_of(&diff).starts_with("DIFFERENT"));

    // malformed input: exit 2
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{not json").unwrap();
    let bad = run(&["compare", fp_a.to_str().unwrap(), broken.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn compare_env_override_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let tau_a = write_tau(dir.path(), "a.json", 5);
    let tau_b = write_tau(dir.path(), "b.json", 99);
    let bit_a = dir.path().join("bit_a.json");
    let bit_b = dir.path().join("bit_b.json");
    assert!(run(&["bitangents", tau_a.to_str().unwrap(), "-o", bit_a.to_str().unwrap()])
        .status
        .success());
    assert!(run(&["bitangents", tau_b.to_str().unwrap(), "-o", bit_b.to_str().unwrap()])
        .status
        .success());

    // Env loosens the tolerance beyond the real deviation: SAME.
    let env_out = bin()
        .env("QTHETA_COMPARE_TOL", "10")
        .args(["compare", bit_a.to_str().unwrap(), bit_b.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(env_out.status.code(), Some(0));

    // The flag beats the env variable: DIFFERENT again.
    let flag_out = bin()
        .env("QTHETA_COMPARE_TOL", "10")
        .args([
            "compare",
            bit_a.to_str().unwrap(),
            bit_b.to_str().unwrap(),
            "--compare-tol",
            "1e-6",
        ])
        .output()
        .unwrap();
    assert_eq!(flag_out.status.code(), Some(1));
}

#[test]
fn config_invariant_violations_exit_2() {
    let out = run(&["selftest", "--tol", "1e-3"]); // compare_tol default 1e-6 < tol
    assert_eq!(out.status.code(), Some(2));
    let bad_env = bin()
        .env("QTHETA_TOL", "bogus")
        .args(["aronhold", "enumerate"])
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn aronhold_enumerate_prints_288_sets() {
    let out = run(&["aronhold", "enumerate"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).lines().count(), 288);
}

#[test]
fn aronhold_find_satisfies_constraints() {
    let out = run(&["aronhold", "find", "--m1", "000|000", "--m2", "110|001", "--json"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let members: Vec<quartic_theta::Characteristic> = doc["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(members.len(), 7);
    let first3 = members[0].add(&members[1]).unwrap().add(&members[2]).unwrap();
    assert_eq!(first3.to_string(), "110|001");
    assert_eq!(doc["sum"], "000|000");

    // odd characteristic as pair member: rejected
    let bad = run(&["aronhold", "find", "--m1", "000|000", "--m2", "001|001"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn theta_eval_reports_value_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let tau = write_tau(dir.path(), "tau.json", 5);
    let out = run(&[
        "theta", "eval", "--char", "000|000", "--tau", tau.to_str().unwrap(), "--json",
    ]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["char"], "000|000");
    assert!(doc["value"].as_array().unwrap().len() == 2);
    assert!(doc["tail_bound"].as_f64().unwrap() < 1e-12);
    // with explicit z
    let out_z = run(&[
        "theta", "eval", "--char", "001|001", "--tau", tau.to_str().unwrap(),
        "--z", "[[0.1,0.0],[0.0,0.2],[0.05,-0.1]]",
    ]);
    assert!(out_z.status.success(), "{}", stderr_of(&out_z));
}

#[test]
fn json_errors_carry_a_code_field() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{oops").unwrap();
    let out = run(&["bitangents", broken.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(doc["error"]["code"].is_string());
    assert!(doc["error"]["message"].is_string());
}

#[test]
fn transform_check_passes_with_seed_7() {
    let out = run(&["transform-check", "--seed", "7"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(stdout_of(&out).contains("[PASS]"));
}

#[test]
fn selftest_scoreboard_passes() {
    let out = run(&["selftest"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert_eq!(text.matches("[PASS]").count(), 8);
    assert!(text.contains("selftest: 8/8 criteria passed"));
}
