//! The release gate. Each criterion runs one verification suite (or, for
//! the last one, the binary itself) under a pinned wall-clock budget and
//! prints a single PASS or FAIL line. Budgets are generous multiples of
//! the times measured on a single-core container; they exist to catch
//! complexity regressions, not to benchmark.
//!
//! Run with `--nocapture` to see the verdict lines of passing criteria.

#[allow(dead_code)]
mod common;

use std::time::{Duration, Instant};

use strata_cli::suites::{run_suite, SuiteConfig};

const ESSENTIAL_CATALOGUE_BUDGET: Duration = Duration::from_secs(5);
const CLOSURE_BUDGET: Duration = Duration::from_secs(30);
const MU_VANISHING_BUDGET: Duration = Duration::from_secs(60);
const MOBIUS_EULER_BUDGET: Duration = Duration::from_secs(60);
const SUPERADDITIVITY_BUDGET: Duration = Duration::from_secs(10);
const KAPPA_BUDGET: Duration = Duration::from_secs(10);
const TYPE_ORDER_BUDGET: Duration = Duration::from_secs(60);
const DELPEZZO_BUDGET: Duration = Duration::from_secs(10);
const STABILITY_CONSTANTS_BUDGET: Duration = Duration::from_secs(1);
const BUILD_P_BUDGET: Duration = Duration::from_secs(120);
const VERIFY_RUN_BUDGET: Duration = Duration::from_secs(300);

/// Runs one suite with the default configuration and enforces the verdict
/// and the budget, printing the criterion line either way.
fn suite_criterion(number: u32, suite: &str, budget: Duration) {
    let start = Instant::now();
    let checks = run_suite(suite, &SuiteConfig::default()).expect("suite name is valid");
    let elapsed = start.elapsed();
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| {
            format!(
                "{} ({})",
                c.name,
                c.counterexample.as_deref().unwrap_or("no counterexample")
            )
        })
        .collect();
    let within = elapsed <= budget;
    let verdict = if failures.is_empty() && within { "PASS" } else { "FAIL" };
    println!(
        "criterion {number:2} [{suite}]: {verdict} ({:.2}s of {}s budget, {} checks)",
        elapsed.as_secs_f64(),
        budget.as_secs(),
        checks.len()
    );
    assert!(failures.is_empty(), "criterion {number} failing checks: {failures:?}");
    assert!(
        within,
        "criterion {number} took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_01_essential_catalogues() {
    suite_criterion(1, "essential-catalogue", ESSENTIAL_CATALOGUE_BUDGET);
}

#[test]
fn criterion_02_saturation_closure() {
    suite_criterion(2, "closure", CLOSURE_BUDGET);
}

#[test]
fn criterion_03_stalk_vanishing() {
    suite_criterion(3, "mu-vanishing", MU_VANISHING_BUDGET);
}

#[test]
fn criterion_04_euler_matches_mobius() {
    suite_criterion(4, "mobius-euler", MOBIUS_EULER_BUDGET);
}

#[test]
fn criterion_05_energy_superadditivity() {
    suite_criterion(5, "superadditivity", SUPERADDITIVITY_BUDGET);
}

#[test]
fn criterion_06_kappa_bounds() {
    suite_criterion(6, "kappa", KAPPA_BUDGET);
}

#[test]
fn criterion_07_type_order() {
    suite_criterion(7, "type-order", TYPE_ORDER_BUDGET);
}

#[test]
fn criterion_08_del_pezzo_calculators() {
    suite_criterion(8, "delpezzo", DELPEZZO_BUDGET);
}

#[test]
fn criterion_09_stability_constants() {
    suite_criterion(9, "stability-constants", STABILITY_CONSTANTS_BUDGET);
}

#[test]
fn criterion_10_census_certificates() {
    suite_criterion(10, "build-p", BUILD_P_BUDGET);
}

#[test]
fn criterion_11_deterministic_reports() {
    let run = |jobs: &str| {
        let start = Instant::now();
        let (code, stdout, stderr) =
            common::run_strata(&["verify", "--suite", "all", "--jobs", jobs]);
        let elapsed = start.elapsed();
        assert_eq!(code, 0, "verify run failed: {stderr}");
        assert!(
            elapsed <= VERIFY_RUN_BUDGET,
            "verify run took {elapsed:?}, budget {VERIFY_RUN_BUDGET:?}"
        );
        stdout
    };
    let first = run("1");
    let second = run("1");
    let parallel = run("0");
    let identical = first == second && first == parallel;
    let verdict = if identical { "PASS" } else { "FAIL" };
    println!("criterion 11 [deterministic reports]: {verdict} (3 runs compared byte for byte)");
    assert!(identical, "verify reports differ between runs");
}
