//! Command-line front end: file I/O and subcommands orchestrating the
//! library, plus the self-test harness.
//!
//! Exit codes: 0 success (or SAME for `compare`); 1 failed numeric verdict
//! (DIFFERENT, a failed verification, a failed suite); 2 invalid input or
//! configuration; 3 numerical-guard rejections (hyperelliptic or otherwise
//! degenerate inputs).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use quartic_theta::bitangents::extract_bitangents_with_cap;
use quartic_theta::characteristics::{
    aronhold_for_pair, enumerate, enumerate_aronhold_sets, Characteristic, ParityFilter,
};
use quartic_theta::selftest::{format_line, run_all, run_criterion};
use quartic_theta::siegel::{random_tau, SiegelPoint};
use quartic_theta::theta::{DEFAULT_RADIUS_CAP, DEFAULT_TOL};
use quartic_theta::weber::{
    compare_curves, fingerprint_from_bitangents, weber_lhs, weber_rhs, Fingerprint, Verdict,
    WeberInstance,
};
use quartic_theta::{BitangentSet, Error};

const DEFAULT_COMPARE_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "quartic-theta",
    version,
    about = "Genus-3 theta constants, the 28 bitangents of a plane quartic, and curve-identity fingerprints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct ConfigArgs {
    /// Series truncation tolerance (default 1e-12; env QTHETA_TOL)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Comparison tolerance for verdicts (default 1e-6; env QTHETA_COMPARE_TOL)
    #[arg(long, global = true)]
    compare_tol: Option<f64>,
    /// Seed for every randomized subcommand
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Machine-readable JSON output (including errors, with a code field)
    #[arg(long, global = true)]
    json: bool,
    /// Write the primary output to a file instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the 28 bitangent lines from a period-matrix JSON file
    Bitangents {
        /// Period matrix JSON: {"genus":3,"tau":[[[re,im]x3]x3]}
        tau_file: PathBuf,
    },
    /// Verify the determinantal reconstruction identity trial by trial
    WeberVerify {
        /// Period matrix JSON; trials draw random even pairs at this point
        tau_file: Option<PathBuf>,
        /// Run N trials on fresh random period matrices instead
        #[arg(long, value_name = "N", conflicts_with = "tau_file")]
        random: Option<usize>,
        /// Corrupt one bitangent coordinate per trial (must make trials fail)
        #[arg(long)]
        corrupt: bool,
    },
    /// Rebuild the fingerprint of 36 quotients from a bitangent JSON file
    Fingerprint {
        /// Bitangent set JSON as produced by `bitangents`
        bitangents_file: PathBuf,
    },
    /// Decide SAME or DIFFERENT for two fingerprint (or bitangent) files
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
    },
    /// Aronhold systems of odd characteristics
    Aronhold {
        #[command(subcommand)]
        action: AronholdAction,
    },
    /// Run the scalar-collapse suites for the transformation laws
    TransformCheck,
    /// Evaluate theta series directly
    Theta {
        #[command(subcommand)]
        action: ThetaAction,
    },
    /// Run the full acceptance suite and print a scoreboard
    Selftest,
}

#[derive(Subcommand)]
enum AronholdAction {
    /// Print all 288 Aronhold sets, one per line
    Enumerate,
    /// Print the deterministic Aronhold set constrained by an even pair
    Find {
        /// Even characteristic, e.g. 000|000 (total sum of the set)
        #[arg(long)]
        m1: String,
        /// Even characteristic, distinct from m1 (sum of the first three)
        #[arg(long)]
        m2: String,
    },
}

#[derive(Subcommand)]
enum ThetaAction {
    /// Evaluate theta with a characteristic at a period matrix
    Eval {
        /// Characteristic, e.g. 001|011
        #[arg(long = "char")]
        character: String,
        /// Period matrix JSON file
        #[arg(long)]
        tau: PathBuf,
        /// Optional argument z as JSON [[re,im],[re,im],[re,im]] (default 0)
        #[arg(long)]
        z: Option<String>,
    },
}

/// Resolved run configuration: flags take precedence over the QTHETA_*
/// environment overrides, which take precedence over defaults.
struct RunConfig {
    tol: f64,
    compare_tol: f64,
    seed: u64,
    radius_cap: u32,
    output_path: Option<PathBuf>,
    json: bool,
}

struct Failure {
    exit: u8,
    code: &'static str,
    message: String,
}

impl Failure {
    fn new(exit: u8, code: &'static str, message: impl Into<String>) -> Self {
        Failure {
            exit,
            code,
            message: message.into(),
        }
    }
}

/// Map library errors onto exit codes: validation and parse problems are 2,
/// numerical-guard rejections are 3.
fn classify(err: Error) -> Failure {
    let (code, exit) = match &err {
        Error::HyperellipticOrDegenerate(_) => ("hyperelliptic-or-degenerate", 3),
        Error::RadiusOverflow { .. } => ("radius-overflow", 3),
        Error::DegenerateDenominator { .. } => ("degenerate-denominator", 3),
        Error::ZeroGradient(_) => ("zero-gradient", 3),
        Error::AronholdNotFound(..) => ("aronhold-not-found", 3),
        _ => ("invalid-input", 2),
    };
    Failure::new(exit, code, err.to_string())
}

fn env_or(flag: Option<f64>, var: &str, default: f64) -> Result<f64, Failure> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(var) {
        Ok(text) => text.trim().parse::<f64>().map_err(|_| {
            Failure::new(
                2,
                "config",
                format!("{var} must parse as a float, got {text:?}"),
            )
        }),
        Err(_) => Ok(default),
    }
}

impl RunConfig {
    fn resolve(args: &ConfigArgs) -> Result<Self, Failure> {
        let tol = env_or(args.tol, "QTHETA_TOL", DEFAULT_TOL)?;
        let compare_tol = env_or(args.compare_tol, "QTHETA_COMPARE_TOL", DEFAULT_COMPARE_TOL)?;
        if !(tol > 0.0) {
            return Err(Failure::new(2, "config", format!("tol must be positive, got {tol}")));
        }
        if !(compare_tol > tol) {
            return Err(Failure::new(
                2,
                "config",
                format!("compare_tol ({compare_tol}) must exceed tol ({tol})"),
            ));
        }
        Ok(RunConfig {
            tol,
            compare_tol,
            seed: args.seed,
            radius_cap: DEFAULT_RADIUS_CAP,
            output_path: args.output.clone(),
            json: args.json,
        })
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), Failure> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cfg.output_path {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::new(2, "io", format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(2, "io", format!("cannot read {}: {e}", path.display())))
}

fn load_point(path: &PathBuf) -> Result<SiegelPoint, Failure> {
    SiegelPoint::from_json(&read_file(path)?).map_err(classify)
}

fn parse_char(text: &str) -> Result<Characteristic, Failure> {
    text.parse::<Characteristic>().map_err(classify)
}

fn complex_pair(v: Complex64) -> [f64; 2] {
    [v.re, v.im]
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = cli.config.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json_mode {
                let doc = json!({"error": {"code": f.code, "message": f.message}});
                println!("{}", serde_json::to_string_pretty(&doc).expect("static shape"));
            } else {
                eprintln!("error[{}]: {}", f.code, f.message);
            }
            ExitCode::from(f.exit)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = RunConfig::resolve(&cli.config)?;
    match cli.command {
        Command::Bitangents { tau_file } => cmd_bitangents(&cfg, &tau_file),
        Command::WeberVerify {
            tau_file,
            random,
            corrupt,
        } => cmd_weber_verify(&cfg, tau_file.as_ref(), random, corrupt),
        Command::Fingerprint { bitangents_file } => cmd_fingerprint(&cfg, &bitangents_file),
        Command::Compare { file_a, file_b } => cmd_compare(&cfg, &file_a, &file_b),
        Command::Aronhold { action } => match action {
            AronholdAction::Enumerate => cmd_aronhold_enumerate(&cfg),
            AronholdAction::Find { m1, m2 } => cmd_aronhold_find(&cfg, &m1, &m2),
        },
        Command::TransformCheck => cmd_transform_check(&cfg),
        Command::Theta { action } => match action {
            ThetaAction::Eval { character, tau, z } => {
                cmd_theta_eval(&cfg, &character, &tau, z.as_deref())
            }
        },
        Command::Selftest => cmd_selftest(&cfg),
    }
}

fn cmd_bitangents(cfg: &RunConfig, tau_file: &PathBuf) -> Result<u8, Failure> {
    let point = load_point(tau_file)?;
    let set = extract_bitangents_with_cap(&point, cfg.tol, cfg.radius_cap).map_err(classify)?;
    emit(cfg, &set.to_json())?;
    Ok(0)
}

fn random_even_pair(rng: &mut ChaCha8Rng, evens: &[Characteristic]) -> (Characteristic, Characteristic) {
    let i = rng.random_range(0..evens.len());
    let mut j = rng.random_range(0..evens.len());
    while j == i {
        j = rng.random_range(0..evens.len());
    }
    (evens[i].clone(), evens[j].clone())
}

fn cmd_weber_verify(
    cfg: &RunConfig,
    tau_file: Option<&PathBuf>,
    random: Option<usize>,
    corrupt: bool,
) -> Result<u8, Failure> {
    let evens = enumerate(3, ParityFilter::Even);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials: Vec<(SiegelPoint, Characteristic, Characteristic)> = match (tau_file, random) {
        (Some(path), None) => {
            let point = load_point(path)?;
            (0..10)
                .map(|_| {
                    let (m1, m2) = random_even_pair(&mut rng, &evens);
                    (point.clone(), m1, m2)
                })
                .collect()
        }
        (None, Some(n)) => (0..n)
            .map(|_| {
                let rho = rng.random_range(0.05..=0.3);
                let tau_seed: u64 = rng.random();
                let (m1, m2) = random_even_pair(&mut rng, &evens);
                (random_tau(tau_seed, 3, rho), m1, m2)
            })
            .collect(),
        _ => {
            return Err(Failure::new(
                2,
                "usage",
                "pass a period-matrix file or --random N (exactly one)",
            ))
        }
    };

    let mut lines_out = String::new();
    let mut trial_docs = Vec::new();
    let mut max_residual = 0.0f64;
    let mut all_ok = true;
    for (index, (point, m1, m2)) in trials.iter().enumerate() {
        let mut lines =
            extract_bitangents_with_cap(point, cfg.tol, cfg.radius_cap).map_err(classify)?;
        if corrupt {
            // Corrupt a line this trial's instance is guaranteed to use.
            let target = aronhold_for_pair(m1, m2).map_err(classify)?.members()[0].clone();
            lines = corrupt_one_line(&lines, &target).map_err(classify)?;
        }
        let lhs = weber_lhs(m1, m2, point, cfg.tol).map_err(classify)?;
        let rhs = WeberInstance::new(&lines, m1, m2)
            .and_then(|inst| weber_rhs(&inst))
            .map_err(classify)?;
        let residual = (lhs - rhs).norm() / lhs.norm();
        max_residual = max_residual.max(residual);
        let ok = residual < cfg.compare_tol;
        all_ok &= ok;
        let _ = writeln!(
            lines_out,
            "trial {index:02}  m1={m1}  m2={m2}  residual={residual:.3e}  {}",
            if ok { "ok" } else { "FAIL" }
        );
        trial_docs.push(json!({
            "trial": index,
            "m1": m1.to_string(),
            "m2": m2.to_string(),
            "residual": residual,
            "ok": ok,
        }));
    }
    let _ = writeln!(
        lines_out,
        "weber-verify: {}/{} trials below {:e}  max residual {max_residual:.3e}",
        trial_docs.iter().filter(|t| t["ok"].as_bool() == Some(true)).count(),
        trials.len(),
        cfg.compare_tol
    );
    if cfg.json {
        let doc = json!({
            "trials": trial_docs,
            "max_residual": max_residual,
            "compare_tol": cfg.compare_tol,
            "pass": all_ok,
        });
        emit(cfg, &serde_json::to_string_pretty(&doc).expect("static shape"))?;
    } else {
        emit(cfg, &lines_out)?;
    }
    Ok(if all_ok { 0 } else { 1 })
}

/// Multiply the largest coordinate of the targeted line by (1 + 1e-3): a
/// deliberately broken input that the identity must reject. A non-uniform
/// perturbation is essential — a uniform rescale of a whole line is
/// invisible by scale independence.
fn corrupt_one_line(
    set: &BitangentSet,
    target: &Characteristic,
) -> quartic_theta::Result<BitangentSet> {
    let lines: Vec<_> = set
        .lines()
        .iter()
        .map(|l| {
            if l.character() == target {
                let mut coords = *l.coords();
                let lead = (0..3)
                    .max_by(|&a, &b| {
                        coords[a]
                            .norm()
                            .partial_cmp(&coords[b].norm())
                            .expect("finite coords")
                    })
                    .expect("three coords");
                coords[lead] *= Complex64::new(1.001, 0.0);
                quartic_theta::BitangentLine::new(l.character().clone(), coords)
            } else {
                Ok(l.clone())
            }
        })
        .collect::<quartic_theta::Result<_>>()?;
    BitangentSet::from_lines(lines)
}

fn cmd_fingerprint(cfg: &RunConfig, bitangents_file: &PathBuf) -> Result<u8, Failure> {
    let set = BitangentSet::from_json(&read_file(bitangents_file)?).map_err(classify)?;
    let fp = fingerprint_from_bitangents(&set).map_err(classify)?;
    emit(cfg, &fp.to_json())?;
    Ok(0)
}

/// Accept either a fingerprint file or a bitangent file (rebuilding the
/// fingerprint from the lines in the latter case).
fn load_fingerprint(path: &PathBuf) -> Result<Fingerprint, Failure> {
    let text = read_file(path)?;
    match Fingerprint::from_json(&text) {
        Ok(fp) => Ok(fp),
        Err(fp_err) => match BitangentSet::from_json(&text) {
            Ok(set) => fingerprint_from_bitangents(&set).map_err(classify),
            Err(_) => Err(classify(fp_err)),
        },
    }
}

fn cmd_compare(cfg: &RunConfig, file_a: &PathBuf, file_b: &PathBuf) -> Result<u8, Failure> {
    let fa = load_fingerprint(file_a)?;
    let fb = load_fingerprint(file_b)?;
    let report = compare_curves(&fa, &fb, cfg.compare_tol).map_err(classify)?;
    let verdict = match report.verdict {
        Verdict::Same => "SAME",
        Verdict::Different => "DIFFERENT",
    };
    if cfg.json {
        let deviations: serde_json::Map<String, serde_json::Value> = report
            .deviations
            .iter()
            .map(|(m, d)| (m.to_string(), json!(d)))
            .collect();
        let doc = json!({
            "verdict": verdict,
            "max_deviation": report.max_deviation,
            "compare_tol": report.tol,
            "deviations": deviations,
        });
        emit(cfg, &serde_json::to_string_pretty(&doc).expect("static shape"))?;
    } else {
        emit(
            cfg,
            &format!(
                "{verdict}  max deviation {:.3e}  (tolerance {:e})",
                report.max_deviation, report.tol
            ),
        )?;
    }
    Ok(match report.verdict {
        Verdict::Same => 0,
        Verdict::Different => 1,
    })
}

fn cmd_aronhold_enumerate(cfg: &RunConfig) -> Result<u8, Failure> {
    let sets = enumerate_aronhold_sets(3).map_err(classify)?;
    if cfg.json {
        let rows: Vec<Vec<String>> = sets
            .iter()
            .map(|s| s.members().iter().map(|m| m.to_string()).collect())
            .collect();
        let doc = json!({"count": rows.len(), "sets": rows});
        emit(cfg, &serde_json::to_string_pretty(&doc).expect("static shape"))?;
    } else {
        let mut out = String::new();
        for s in &sets {
            let row: Vec<String> = s.members().iter().map(|m| m.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        emit(cfg, &out)?;
    }
    Ok(0)
}

fn cmd_aronhold_find(cfg: &RunConfig, m1: &str, m2: &str) -> Result<u8, Failure> {
    let m1 = parse_char(m1)?;
    let m2 = parse_char(m2)?;
    let set = aronhold_for_pair(&m1, &m2).map_err(classify)?;
    let members: Vec<String> = set.members().iter().map(|m| m.to_string()).collect();
    if cfg.json {
        let doc = json!({
            "m1": m1.to_string(),
            "m2": m2.to_string(),
            "members": members,
            "sum": set.sum().to_string(),
        });
        emit(cfg, &serde_json::to_string_pretty(&doc).expect("static shape"))?;
    } else {
        emit(cfg, &members.join(" "))?;
    }
    Ok(0)
}

fn cmd_transform_check(cfg: &RunConfig) -> Result<u8, Failure> {
    let report = run_criterion(4, cfg.seed);
    if cfg.json {
        let doc = json!({
            "index": report.index,
            "name": report.name,
            "passed": report.passed,
            "detail": report.detail,
        });
        emit(cfg, &serde_json::to_string_pretty(&doc).expect("static shape"))?;
    } else {
        emit(cfg, &format_line(&report))?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_theta_eval(
    cfg: &RunConfig,
    character: &str,
    tau: &PathBuf,
    z: Option<&str>,
) -> Result<u8, Failure> {
    let m = parse_char(character)?;
    let point = load_point(tau)?;
    let z_values: Vec<Complex64> = match z {
        None => vec![Complex64::new(0.0, 0.0); point.genus()],
        Some(text) => {
            let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| {
                Failure::new(2, "invalid-input", format!("--z must be JSON [[re,im],...]: {e}"))
            })?;
            pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect()
        }
    };
    let value = quartic_theta::theta::theta(&m, &point, &z_values, cfg.tol).map_err(classify)?;
    if cfg.json {
        let doc = json!({
            "char": m.to_string(),
            "value": complex_pair(value.value),
            "tail_bound": value.tail_bound,
            "radius": value.radius,
        });
        emit(cfg, &serde_json::to_string_pretty(&doc).expect("static shape"))?;
    } else {
        emit(
            cfg,
            &format!(
                "theta[{m}] = {:+.15e} {:+.15e}i  (tail bound {:.3e}, radius {})",
                value.value.re, value.value.im, value.tail_bound, value.radius
            ),
        )?;
    }
    Ok(0)
}

fn cmd_selftest(cfg: &RunConfig) -> Result<u8, Failure> {
    let reports = run_all(cfg.seed);
    let passed = reports.iter().filter(|r| r.passed).count();
    if cfg.json {
        let rows: Vec<serde_json::Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "index": r.index,
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                })
            })
            .collect();
        let doc = json!({
            "seed": cfg.seed,
            "criteria": rows,
            "passed": passed == reports.len(),
        });
        emit(cfg, &serde_json::to_string_pretty(&doc).expect("static shape"))?;
    } else {
        let mut out = String::new();
        for r in &reports {
            let _ = writeln!(out, "{}", format_line(r));
        }
        let _ = writeln!(out, "selftest: {passed}/{} criteria passed (seed {})", reports.len(), cfg.seed);
        emit(cfg, &out)?;
    }
    Ok(if passed == reports.len() { 0 } else { 1 })
}
