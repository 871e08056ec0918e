use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::OperatorError;
use crate::algebra::{Element, Presentation, Scalar, Word};

#[derive(Clone, Debug)]
pub enum OperatorKind {
    Identity,
    /// `a -> [x, a]`
    InnerDerivation(Element),
    /// `a -> x a`
    LeftMult(Element),
    /// `a -> a x`
    RightMult(Element),
    /// Extension of generator values by the graded Leibniz rule.
    Leibniz(BTreeMap<u32, Element>),
    Sum(Vec<(Scalar, LinearOperator)>),
    /// Applied right to left, as in `f ∘ g`.
    Compose(Vec<LinearOperator>),
    Power(Box<LinearOperator>, u32),
}

/// A degree-homogeneous linear endomorphism of a presented algebra.
#[derive(Clone, Debug)]
pub struct LinearOperator {
    kind: OperatorKind,
    degree: i64,
    pres: Arc<Presentation>,
}

fn operand_degree(x: &Element, declared: Option<i64>) -> Result<i64, OperatorError> {
    match declared {
        Some(d) if x.is_homogeneous_of(d) => Ok(d),
        Some(d) => Err(OperatorError::InhomogeneousOperand(format!(
            "`{x}` is not homogeneous of degree {d}"
        ))),
        None if x.is_zero() => Ok(0),
        None => x.homogeneous_degree().ok_or_else(|| {
            OperatorError::InhomogeneousOperand(format!("`{x}` is not homogeneous"))
        }),
    }
}

impl LinearOperator {
    pub fn identity(p: &Arc<Presentation>) -> Self {
        LinearOperator {
            kind: OperatorKind::Identity,
            degree: 0,
            pres: p.clone(),
        }
    }

    /// `ad_x = [x, -]`; `x` must be homogeneous (zero is taken to be degree 0).
    pub fn inner_derivation(x: &Element) -> Result<Self, OperatorError> {
        Self::inner_derivation_with_degree(x, None)
    }

    pub fn inner_derivation_with_degree(
        x: &Element,
        degree: Option<i64>,
    ) -> Result<Self, OperatorError> {
        Ok(LinearOperator {
            degree: operand_degree(x, degree)?,
            kind: OperatorKind::InnerDerivation(x.clone()),
            pres: x.presentation().clone(),
        })
    }

    pub fn left_mult(x: &Element, degree: Option<i64>) -> Result<Self, OperatorError> {
        Ok(LinearOperator {
            degree: operand_degree(x, degree)?,
            kind: OperatorKind::LeftMult(x.clone()),
            pres: x.presentation().clone(),
        })
    }

    pub fn right_mult(x: &Element, degree: Option<i64>) -> Result<Self, OperatorError> {
        Ok(LinearOperator {
            degree: operand_degree(x, degree)?,
            kind: OperatorKind::RightMult(x.clone()),
            pres: x.presentation().clone(),
        })
    }

    /// A derivation of the given degree determined by its values on generators.
    ///
    /// Values are not degree-checked here; [`check_cda_axioms`](super::check_cda_axioms)
    /// reports degree and well-definedness problems instead.
    pub fn leibniz(
        p: &Arc<Presentation>,
        degree: i64,
        values: BTreeMap<String, Element>,
    ) -> Result<Self, OperatorError> {
        let mut by_index = BTreeMap::new();
        for (name, v) in values {
            let g = p
                .generator_index(&name)
                .ok_or(crate::algebra::AlgebraError::UnknownGenerator(name))?;
            if !v.presentation().compatible(p) {
                return Err(crate::algebra::AlgebraError::MixedPresentations.into());
            }
            by_index.insert(g, v);
        }
        Ok(LinearOperator {
            kind: OperatorKind::Leibniz(by_index),
            degree,
            pres: p.clone(),
        })
    }

    pub fn sum(terms: Vec<(Scalar, LinearOperator)>) -> Result<Self, OperatorError> {
        let first = terms
            .first()
            .ok_or_else(|| OperatorError::InvalidArgument("empty operator sum".into()))?;
        let (degree, pres) = (first.1.degree, first.1.pres.clone());
        for (_, op) in &terms {
            op.same_presentation(&pres)?;
            if op.degree != degree {
                return Err(OperatorError::DegreeMismatch(format!(
                    "cannot add operators of degrees {degree} and {}",
                    op.degree
                )));
            }
        }
        Ok(LinearOperator {
            kind: OperatorKind::Sum(terms),
            degree,
            pres,
        })
    }

    /// `ops[0] ∘ ops[1] ∘ ...`
    pub fn compose(ops: Vec<LinearOperator>) -> Result<Self, OperatorError> {
        let pres = ops
            .first()
            .ok_or_else(|| OperatorError::InvalidArgument("empty composition".into()))?
            .pres
            .clone();
        for op in &ops {
            op.same_presentation(&pres)?;
        }
        Ok(LinearOperator {
            degree: ops.iter().map(|o| o.degree).sum(),
            kind: OperatorKind::Compose(ops),
            pres,
        })
    }

    pub fn power(&self, k: u32) -> Self {
        LinearOperator {
            degree: self.degree * k as i64,
            kind: OperatorKind::Power(Box::new(self.clone()), k),
            pres: self.pres.clone(),
        }
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    /// Inner and Leibniz derivations; these obey the graded Leibniz rule.
    pub fn is_derivation(&self) -> bool {
        matches!(
            self.kind,
            OperatorKind::InnerDerivation(_) | OperatorKind::Leibniz(_)
        )
    }

    fn same_presentation(&self, p: &Arc<Presentation>) -> Result<(), OperatorError> {
        if self.pres.compatible(p) {
            Ok(())
        } else {
            Err(crate::algebra::AlgebraError::MixedPresentations.into())
        }
    }

    pub fn apply(&self, a: &Element) -> Result<Element, OperatorError> {
        self.same_presentation(a.presentation())?;
        match &self.kind {
            OperatorKind::Identity => Ok(a.clone()),
            OperatorKind::InnerDerivation(x) => Ok(x.graded_commutator(a)?),
            OperatorKind::LeftMult(x) => Ok(x.multiply(a)?),
            OperatorKind::RightMult(x) => Ok(a.multiply(x)?),
            OperatorKind::Leibniz(values) => {
                let mut acc = Element::zero(&self.pres);
                for (w, c) in a.terms() {
                    acc = acc.add(&self.leibniz_on_word(values, w)?.scale(c))?;
                }
                Ok(acc)
            }
            OperatorKind::Sum(terms) => {
                let mut acc = Element::zero(&self.pres);
                for (q, op) in terms {
                    acc = acc.add(&op.apply(a)?.scale(q))?;
                }
                Ok(acc)
            }
            OperatorKind::Compose(ops) => {
                let mut cur = a.clone();
                for op in ops.iter().rev() {
                    cur = op.apply(&cur)?;
                }
                Ok(cur)
            }
            OperatorKind::Power(op, k) => {
                let mut cur = a.clone();
                for _ in 0..*k {
                    if cur.is_zero() {
                        break;
                    }
                    cur = op.apply(&cur)?;
                }
                Ok(cur)
            }
        }
    }

    /// `D(g1...gn) = sum_i (-1)^{p(|g1|+...+|g_{i-1}|)} g1..g_{i-1} D(g_i) g_{i+1}..gn`,
    /// evaluated on an arbitrary (not necessarily reduced) word.
    fn leibniz_on_word(
        &self,
        values: &BTreeMap<u32, Element>,
        w: &Word,
    ) -> Result<Element, OperatorError> {
        let p = &self.pres;
        let mut acc = Element::zero(p);
        let mut prefix_degree = 0i64;
        for (i, &g) in w.letters().iter().enumerate() {
            let value = values.get(&g).ok_or_else(|| {
                OperatorError::MissingGeneratorValue(p.generator_name(g).to_string())
            })?;
            let prefix = Element::monomial(p, w.slice(0, i), Scalar::one());
            let suffix = Element::monomial(p, w.slice(i + 1, w.len()), Scalar::one());
            let mut term = prefix.multiply(value)?.multiply(&suffix)?;
            if (self.degree * prefix_degree).rem_euclid(2) == 1 {
                term = term.neg();
            }
            acc = acc.add(&term)?;
            prefix_degree += p.generators()[g as usize].degree;
        }
        Ok(acc)
    }

    /// For a Leibniz derivation, the first relation `lhs -> rhs` with
    /// `D(lhs) != D(rhs)`, which means `D` does not descend to the quotient.
    /// Other operator kinds are defined on the quotient directly.
    pub fn relation_defect(&self) -> Result<Option<(String, Element)>, OperatorError> {
        let OperatorKind::Leibniz(values) = &self.kind else {
            return Ok(None);
        };
        let p = &self.pres;
        for rel in p.relations() {
            let on_lhs = self.leibniz_on_word(values, &rel.lhs)?;
            let mut on_rhs = Element::zero(p);
            for (w, c) in &rel.rhs {
                on_rhs = on_rhs.add(&self.leibniz_on_word(values, w)?.scale(c))?;
            }
            let defect = on_lhs.sub(&on_rhs)?;
            if !defect.is_zero() {
                let rhs = Element::from_terms(p, rel.rhs.clone());
                let desc = format!("{} -> {}", p.format_word(&rel.lhs), rhs);
                return Ok(Some((desc, defect)));
            }
        }
        Ok(None)
    }
}

/// `L_c - R_c`, equal to `ad_c` for homogeneous `c` of even degree.
pub fn left_minus_right(c: &Element, degree: i64) -> Result<LinearOperator, OperatorError> {
    LinearOperator::sum(vec![
        (Scalar::one(), LinearOperator::left_mult(c, Some(degree))?),
        (-Scalar::one(), LinearOperator::right_mult(c, Some(degree))?),
    ])
}
