//! Fault injection: flipping the sign of the X·Y product must break the suite.
//! Kept in its own test binary because the switch is process-global.

use spindla::pauli::inject_xy_sign_flip;
use spindla::verify::{check_pauli_relations, run_suite, Suite};

#[test]
fn xy_sign_flip_is_detected() {
    assert!(check_pauli_relations().passed);
    inject_xy_sign_flip(true);
    let relations = check_pauli_relations();
    let suite = run_suite(Suite::All, 3, 42);
    inject_xy_sign_flip(false);
    assert!(!relations.passed);
    let failed: Vec<_> = suite.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    assert!(failed.len() > 1, "only {failed:?} failed");
    assert!(check_pauli_relations().passed);
}
