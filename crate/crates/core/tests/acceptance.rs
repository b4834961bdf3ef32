//! End-to-end acceptance run: one pass/fail line per criterion.

use galoisirr::corpus::default_corpus;
use galoisirr::suite::{check_theorem, render_results, MIN_COPRIME_ACTIONS};

#[test]
fn acceptance_criteria() {
    let results = check_theorem(&default_corpus(), 0xC0FFEE, MIN_COPRIME_ACTIONS);
    print!("{}", render_results(&results));
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert_eq!(results.len(), 9);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
