//! Acceptance criteria A1 to A10. Each criterion prints one PASS/FAIL line
//! with its runtime against the budget.

use std::time::{Duration, Instant};

use topogame::suites::{list_suites, run_checks, run_suite, RunReport, Status, SuiteConfig};

fn cfg() -> SuiteConfig {
    SuiteConfig { seed: 0, jobs: 0 }
}

/// Runs the named checks of a suite and reports one line for the criterion.
fn criterion(id: &str, suite: &str, checks: &[&str], budget_secs: u64) -> bool {
    let start = Instant::now();
    let report = run_checks(suite, Some(checks), &cfg()).expect("suite runs");
    let elapsed = start.elapsed();
    let selected: Vec<_> = report.checks.iter().filter(|c| checks.contains(&c.id.as_str())).collect();
    assert_eq!(selected.len(), checks.len(), "{suite} lacks a check of {checks:?}");
    let passed = selected.iter().all(|c| c.status == Status::Pass);
    let in_time = elapsed <= Duration::from_secs(budget_secs);
    let details: Vec<String> = selected.iter().map(|c| format!("{}: {}", c.id, c.detail)).collect();
    println!(
        "{} {id} [{suite}] {:.2}s (budget {budget_secs}s) {}",
        if passed && in_time { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        details.join("; ")
    );
    if !passed {
        println!("{}", report.to_json(true));
    }
    passed && in_time
}

#[test]
fn a01_forward_duality_on_rationals() {
    assert!(criterion("A1", "open-picking-duality", &["forward-rationals"], 5));
}

#[test]
fn a02_exact_duality_on_small_spaces() {
    assert!(criterion("A2", "open-picking-duality", &["forward-finite", "claim-finite", "claim-strategy"], 60));
}

#[test]
fn a03_dense_union_equivalence() {
    assert!(criterion("A3", "pr-dense-union", &["hyperspace-to-pairs", "pairs-to-hyperspace"], 120));
}

#[test]
fn a04_double_selector_on_rationals() {
    assert!(criterion("A4", "double-selector", &["selector-rationals", "selector-deterministic"], 30));
}

#[test]
fn a05_diagonal_selector() {
    assert!(criterion("A5", "diagonal-selector", &["selection-meets-pibase", "witness-permanence"], 10));
}

#[test]
fn a06_property_p() {
    assert!(criterion("A6", "property-p", &["property-p-equivalence", "padding-preserves"], 60));
}

#[test]
fn a07_product_pointing() {
    assert!(criterion("A7", "product-pointing", &["rectangles-rationals"], 30));
}

#[test]
fn a08_splus_transformers() {
    let start = Instant::now();
    let mut ok = true;
    for (suite, check) in [
        ("splus-union", "union-decompositions"),
        ("splus-restrict", "restrict-opens"),
        ("splus-lift", "lift-dense"),
    ] {
        ok &= criterion("A8", suite, &[check], 120);
    }
    let total = start.elapsed();
    let in_time = total <= Duration::from_secs(120);
    println!("{} A8 total {:.2}s (budget 120s)", if ok && in_time { "PASS" } else { "FAIL" }, total.as_secs_f64());
    assert!(ok && in_time);
}

#[test]
fn a09_pibase_and_finite_triviality() {
    let start = Instant::now();
    let a = criterion("A9", "pibase-dgame", &["pibase-rationals"], 60);
    let b = criterion("A9", "finite-triviality", &["winners-finite", "solver-strategies"], 60);
    let total = start.elapsed();
    let in_time = total <= Duration::from_secs(60);
    println!("{} A9 total {:.2}s (budget 60s)", if a && b && in_time { "PASS" } else { "FAIL" }, total.as_secs_f64());
    assert!(a && b && in_time);
}

fn reproducible(name: &str) -> (bool, RunReport) {
    let a = run_suite(name, &cfg()).unwrap();
    let b = run_suite(name, &SuiteConfig { seed: 0, jobs: 1 }).unwrap();
    (a.to_json(false) == b.to_json(false), a)
}

#[test]
fn a10_reports_are_reproducible() {
    let start = Instant::now();
    let mut ok = true;
    for (name, _) in list_suites() {
        let (same, report) = reproducible(name);
        println!("  {name}: {} ({:?})", if same { "identical" } else { "DIFFERS" }, report.status);
        ok &= same;
    }
    println!("{} A10 all suites byte-identical across reruns {:.2}s", if ok { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
    assert!(ok);
}
