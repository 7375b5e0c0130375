//! End-to-end acceptance gate: every published guarantee, one line each.

use qpot::cli::suites;

#[test]
fn acceptance() {
    let reports = suites::run_all();
    for report in &reports {
        println!("{report}");
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();
    assert!(
        failed.is_empty(),
        "{} of {} criteria failed: {}",
        failed.len(),
        reports.len(),
        failed.join(", ")
    );
}
