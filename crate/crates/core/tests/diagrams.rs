use std::sync::Arc;

use hyperdoc::corpus::{self, Size};
use hyperdoc::diagrams::{parse_term, print_term, sweep, sweep_cases};
use hyperdoc::{Category, Limits};

#[test]
fn sweep_over_named_categories() {
    let cats: Vec<Arc<Category>> = corpus::categories(Size::Small).into_iter().map(|e| e.category).collect();
    let s = sweep(&cats, 1, 0, Limits::default());
    assert!(s.triples >= 200, "only {} triples", s.triples);
    assert_eq!(s.passed, s.triples, "{:?}", s.failures.first());
    assert!(s.round_trips > 0);
    assert_eq!(s.round_trip_failures, 0);
    assert!(s.degenerate_checked > 0);
    assert_eq!(s.degenerate_iso, s.degenerate_checked);
    assert_eq!(s.false_claims, 0);
}

#[test]
fn case_terms_print_and_parse_back() {
    for (t, _) in sweep_cases() {
        let printed = print_term(&t);
        assert_eq!(parse_term(&printed).unwrap(), t, "{printed}");
    }
}
