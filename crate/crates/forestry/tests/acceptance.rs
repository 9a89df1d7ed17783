//! Acceptance suite: every verification criterion at its stated size and
//! tolerance, one pass/fail line per criterion.
//!
//! Run with `cargo test -p forestry --test acceptance -- --nocapture` to
//! see the lines; each criterion is also an assertion, so a red test is a
//! failed criterion. The heavy Monte Carlo criteria (9 and 10) take a few
//! minutes on two cores.

use forestry::verify::{
    criterion_1_codec_bijections, criterion_2_exact_counts, criterion_3_constants,
    criterion_4_probability_identity, criterion_5_weighted_sum_identity,
    criterion_6_saddle_contracts, criterion_7_asymptotic_convergence,
    criterion_8_search_exactness, criterion_9_moment_cross_validation,
    criterion_10_concentration_diagnostic, Caps, Check,
};

fn report(check: Check) {
    println!(
        "[{}] {}: {}: {}",
        if check.passed { "PASS" } else { "FAIL" },
        check.id,
        check.name,
        check.details
    );
    assert!(check.passed, "{} failed: {}", check.id, check.details);
}

#[test]
fn criterion_01_codec_bijections() {
    report(criterion_1_codec_bijections(&Caps::acceptance()));
}

#[test]
fn criterion_02_exact_counts_vs_brute_force() {
    report(criterion_2_exact_counts(&Caps::acceptance()));
}

#[test]
fn criterion_03_structural_constants() {
    report(criterion_3_constants(&Caps::acceptance()));
}

#[test]
fn criterion_04_probability_identity() {
    report(criterion_4_probability_identity(&Caps::acceptance()));
}

#[test]
fn criterion_05_weighted_sum_identity() {
    report(criterion_5_weighted_sum_identity(&Caps::acceptance()));
}

#[test]
fn criterion_06_saddle_point_contracts() {
    report(criterion_6_saddle_contracts(&Caps::acceptance()));
}

#[test]
fn criterion_07_asymptotic_convergence() {
    report(criterion_7_asymptotic_convergence(&Caps::acceptance()));
}

#[test]
fn criterion_08_search_exactness() {
    report(criterion_8_search_exactness(&Caps::acceptance()));
}

#[test]
fn criterion_09_moment_cross_validation() {
    report(criterion_9_moment_cross_validation(&Caps::acceptance()));
}

#[test]
fn criterion_10_concentration_window_check() {
    report(criterion_10_concentration_diagnostic(&Caps::acceptance()));
}
