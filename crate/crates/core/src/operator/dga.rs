use std::sync::Arc;

use super::{LinearOperator, OperatorError};
use crate::algebra::{Element, Presentation};

/// A candidate curved dg-algebra `(A, d, c)`.
///
/// Construction only checks shapes: `d` has degree 1 (graded) or 0
/// (ungraded diagnostics) and `c` is homogeneous of degree `2 |d|`.
/// Whether `d^2 = ad_c` and `d(c) = 0` actually hold is the job of
/// [`check_cda_axioms`](super::check_cda_axioms).
#[derive(Clone, Debug)]
pub struct CurvedDga {
    d: LinearOperator,
    c: Element,
    ad_c: LinearOperator,
}

impl CurvedDga {
    pub fn new(d: LinearOperator, c: Element) -> Result<Self, OperatorError> {
        if !d.presentation().compatible(c.presentation()) {
            return Err(crate::algebra::AlgebraError::MixedPresentations.into());
        }
        if !(0..=1).contains(&d.degree()) {
            return Err(OperatorError::DegreeMismatch(format!(
                "differential must have degree 1 (or 0 in ungraded mode), got {}",
                d.degree()
            )));
        }
        let curvature_degree = 2 * d.degree();
        let ad_c = LinearOperator::inner_derivation_with_degree(&c, Some(curvature_degree))
            .map_err(|_| {
                OperatorError::DegreeMismatch(format!(
                    "curvature `{c}` must be homogeneous of degree {curvature_degree}"
                ))
            })?;
        Ok(CurvedDga { d, c, ad_c })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.d.presentation()
    }

    pub fn d(&self) -> &LinearOperator {
        &self.d
    }

    pub fn curvature(&self) -> &Element {
        &self.c
    }

    pub fn ad_c(&self) -> &LinearOperator {
        &self.ad_c
    }

    pub fn curvature_degree(&self) -> i64 {
        2 * self.d.degree()
    }

    pub fn left_c(&self) -> LinearOperator {
        LinearOperator::left_mult(&self.c, Some(self.curvature_degree())).expect("checked in new")
    }

    pub fn right_c(&self) -> LinearOperator {
        LinearOperator::right_mult(&self.c, Some(self.curvature_degree())).expect("checked in new")
    }

    pub fn is_graded(&self) -> bool {
        self.d.degree() == 1
    }
}
