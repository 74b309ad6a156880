//! Acceptance suite: every check runs at documented full scale with its
//! pinned tolerance and runtime budget, and prints one PASS/FAIL line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to watch the
//! lines as they complete.

use steiner_surfaces::verify::{run_all, Scale, Verification};

const SUITE_SEED: u64 = 7;

fn suite() -> &'static Vec<Verification> {
    use std::sync::OnceLock;
    static RESULTS: OnceLock<Vec<Verification>> = OnceLock::new();
    RESULTS.get_or_init(|| {
        let results = run_all(SUITE_SEED, Scale::Full);
        for (i, r) in results.iter().enumerate() {
            println!("criterion {:2}: {}", i + 1, r.line_with_timing());
        }
        results
    })
}

fn assert_criterion(index: usize, name: &str) {
    let results = suite();
    let r = &results[index];
    assert_eq!(r.name, name, "criterion order changed");
    assert!(
        r.seconds < r.budget_seconds,
        "criterion {} overran its {}s budget: {}",
        index + 1,
        r.budget_seconds,
        r.line_with_timing()
    );
    assert!(r.passed, "criterion {} failed: {}", index + 1, r.line_with_timing());
}

#[test]
fn criterion_01_euclidean_triangle_exactness() {
    assert_criterion(0, "euclidean-triangle");
}

#[test]
fn criterion_02_hyperbolic_curve() {
    assert_criterion(1, "hyperbolic-curve");
}

#[test]
fn criterion_03_taylor_envelope() {
    assert_criterion(2, "taylor-envelope");
}

#[test]
fn criterion_04_closed_form_vs_solver() {
    assert_criterion(3, "closed-form-vs-solver");
}

#[test]
fn criterion_05_strict_deficit_witness() {
    assert_criterion(4, "strict-deficit-witness");
}

#[test]
fn criterion_06_quotient_consistency() {
    assert_criterion(5, "quotient-consistency");
}

#[test]
fn criterion_07_moore_bounds() {
    assert_criterion(6, "moore-bounds");
}

#[test]
fn criterion_08_covering_properties() {
    assert_criterion(7, "covering-properties");
}

#[test]
fn criterion_09_oracle_equivalence() {
    assert_criterion(8, "oracle-equivalence");
}

#[test]
fn criterion_10_sphere_probe() {
    assert_criterion(9, "sphere-probe");
}
