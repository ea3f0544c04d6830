//! Acceptance criteria, one line each. Run with `--nocapture` to see them.

use mackey_core::suite::run_criterion;

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for n in 1..=8 {
        let result = run_criterion(n, 0).unwrap_or_else(|e| panic!("criterion {n} errored: {e}"));
        println!("{}", result.line());
        if !result.passed() {
            for c in result.report.failures().take(5) {
                println!("    {} {}", c.name, c.witness.as_deref().unwrap_or(""));
            }
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
