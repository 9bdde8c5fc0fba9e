//! The acceptance gate: runs the full criterion suite on the shipped
//! catalog with the default configuration and prints one line per
//! criterion. Everything is exact; a failure here is a real defect.

use nilorbit::acceptance::{format_lines, run_acceptance, RunConfig};

#[test]
fn acceptance_suite_passes() {
    let outcome = run_acceptance(&RunConfig::default()).expect("suite runs");
    for line in format_lines(&outcome) {
        println!("{line}");
    }
    for c in &outcome.report.criteria {
        assert!(
            c.passed,
            "criterion {} ({}) failed: {:?}",
            c.id, c.name, c.failures
        );
    }
    assert!(outcome.report.passed);
}
