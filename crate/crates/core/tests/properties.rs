//! Each invariant in `testkit::invariants`, run on freshly seeded inputs.

use cdga::testkit::invariants::{self, Check};
use cdga::testkit::Gen;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

fn holds(check: Check, seed: u64) -> Result<(), TestCaseError> {
    check(&mut Gen::new(seed)).map_err(|e| TestCaseError::fail(format!("seed {seed}: {e}")))
}

macro_rules! properties {
    ($($name:ident),* $(,)?) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(36))]
            $(
                #[test]
                fn $name(seed in any::<u64>()) {
                    holds(invariants::$name, seed)?;
                }
            )*
        }
    };
}

properties!(
    complexes_shifts_and_duals,
    cones_are_exact,
    kunneth_and_koszul,
    tensor_of_chain_maps,
    homotopy_kernel_of_surjection,
    balanced_iff_leibniz,
    truncation,
    comparison_kernel,
    dual_bases,
    diagonal_class,
    diagonal_multiplication_balanced,
    ring_basis_independence,
    formal_massey_vanish,
    massey_indeterminacy,
);

#[test]
fn every_invariant_is_covered() {
    assert_eq!(invariants::ALL.len(), 14);
}
