//! Linear operators on presented algebras and the curved-differential checks.
//!
//! Every "degreewise" statement is verified on a [`TestSet`] of canonical
//! words up to a length cutoff. Operator powers are evaluated by repeated
//! application; no matrices are formed.

mod checks;
mod dga;
mod linear;
mod testset;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use checks::{
    binomial_ad_power, check_binomial, check_cda_axioms, check_curvature_ideal_nilpotent,
    check_normal_form, check_power_commutation, check_structural_identities,
    check_unit_annihilation, first_nonvanishing, iterate_d, nilpotency_index, normal_form_power,
    verify_bound_4n_minus_2, AxiomReport, BoundReport, IdealReport, Nilpotency,
    MAX_IDEAL_PRODUCTS,
};
pub use dga::CurvedDga;
pub use linear::{left_minus_right, LinearOperator, OperatorKind};
pub use testset::{spanning_test_set, spanning_test_set_over, TestSet, MAX_TEST_SET};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generator `{0}` has no assigned value under the derivation")]
    MissingGeneratorValue(String),
    #[error("{0}")]
    InhomogeneousOperand(String),
    #[error("{0}")]
    DegreeMismatch(String),
    #[error("binomial expansion needs even-degree curvature, got degree {0}")]
    OddCurvature(i64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("test set exceeds {limit} elements")]
    TestSetTooLarge { limit: usize },
    #[error("{0}")]
    InvalidArgument(String),
}
