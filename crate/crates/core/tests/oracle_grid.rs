//! Enumeration versus closed forms over the full small grid.

use hra_core::oracle::{verify_formulas, EnumerationLimits};

#[test]
fn grid_up_to_eight() {
    let report = verify_formulas(8, 8, &EnumerationLimits::default()).unwrap();
    assert!(report.all_pass, "{:?}", report.first_mismatch);
    assert!(report.rows.iter().any(|r| r.family == "distinguishable"));
}
