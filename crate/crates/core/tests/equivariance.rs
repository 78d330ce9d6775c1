//! Column-permutation equivariance of every registered method.

mod support;

use fslib::Method;
use support::equivariance::equivariance_failures;

#[test]
fn every_method_is_column_equivariant() {
    let mut failures = Vec::new();
    for m in Method::ALL {
        for seed in [3, 17] {
            failures.extend(equivariance_failures(m, seed));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
