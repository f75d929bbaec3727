//! The acceptance gate: one test per criterion, each printing a single
//! `[PASS]`/`[FAIL]` line with the measured numbers.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! scoreboard lines; each test also asserts its criterion.

use quartic_theta::selftest::{format_line, run_criterion, DEFAULT_SEED};

fn check(index: usize) {
    let report = run_criterion(index, DEFAULT_SEED);
    println!("{}", format_line(&report));
    assert!(report.passed, "{}", format_line(&report));
}

#[test]
fn criterion_1_combinatorial_counts() {
    check(1);
}

#[test]
fn criterion_2_weber_identity() {
    check(2);
}

#[test]
fn criterion_3_scale_and_coordinate_independence() {
    check(3);
}

#[test]
fn criterion_4_transformation_collapse() {
    check(4);
}

#[test]
fn criterion_5_theta4_invariance_and_separation() {
    check(5);
}

#[test]
fn criterion_6_numerical_analysis() {
    check(6);
}

#[test]
fn criterion_7_decision_procedure() {
    check(7);
}

#[test]
fn criterion_8_aronhold_pair_coverage() {
    check(8);
}
