use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::{PersistenceError, Simplex, SimplicialComplex};
use crate::algebra::{Element, Presentation, Scalar, Word};

/// Entry times of the simplices of a complex, monotone along faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    times: BTreeMap<Simplex, Scalar>,
}

impl Filtration {
    pub fn new(
        complex: &SimplicialComplex,
        times: BTreeMap<Simplex, Scalar>,
    ) -> Result<Self, PersistenceError> {
        if let Some(s) = complex.simplices().find(|s| !times.contains_key(*s)) {
            return Err(PersistenceError::MissingEntryTime(s.to_string()));
        }
        for s in complex.simplices() {
            let t = &times[s];
            for f in s.facets() {
                let tf = &times[&f];
                if tf > t {
                    return Err(PersistenceError::Monotonicity {
                        face: f.to_string(),
                        face_time: tf.to_string(),
                        simplex: s.to_string(),
                        simplex_time: t.to_string(),
                    });
                }
            }
        }
        if let Some(extra) = times.keys().find(|s| !complex.contains(s)) {
            return Err(PersistenceError::ComplexMismatch(format!(
                "{extra} is not in the complex"
            )));
        }
        Ok(Filtration { times })
    }

    pub fn time(&self, s: &Simplex) -> Option<&Scalar> {
        self.times.get(s)
    }

    pub fn times(&self) -> &BTreeMap<Simplex, Scalar> {
        &self.times
    }

    /// Distinct entry times in increasing order.
    pub fn critical_values(&self) -> Vec<Scalar> {
        let mut v: Vec<Scalar> = self.times.values().cloned().collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `max_sigma |f(sigma) - g(sigma)|` over a common complex.
pub fn sup_shift(f: &Filtration, g: &Filtration) -> Result<Scalar, PersistenceError> {
    if f.times.len() != g.times.len() || f.times.keys().ne(g.times.keys()) {
        return Err(PersistenceError::ComplexMismatch(
            "filtrations are defined on different complexes".into(),
        ));
    }
    Ok(f.times
        .iter()
        .map(|(s, t)| (t - &g.times[s]).abs())
        .max()
        .unwrap_or_else(Scalar::zero))
}

/// A linear functional on the degree-2 part, given on canonical basis words.
#[derive(Clone, Debug)]
pub struct LinearFunctional {
    pres: Arc<Presentation>,
    coeffs: BTreeMap<Word, Scalar>,
}

impl LinearFunctional {
    pub fn new(
        p: &Arc<Presentation>,
        coeffs: BTreeMap<Word, Scalar>,
    ) -> Result<Self, PersistenceError> {
        for w in coeffs.keys() {
            let shown = p.format_word(w);
            if p.word_degree(w) != 2 {
                return Err(PersistenceError::InvalidFunctional(format!(
                    "`{shown}` is not in degree 2"
                )));
            }
            if !p.is_irreducible(w) {
                return Err(PersistenceError::InvalidFunctional(format!(
                    "`{shown}` is not a canonical basis word"
                )));
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LinearFunctional {
            pres: p.clone(),
            coeffs,
        })
    }

    /// Keys are space-separated words, e.g. `{"x": 1}`.
    pub fn from_named(
        p: &Arc<Presentation>,
        coeffs: &BTreeMap<String, Scalar>,
    ) -> Result<Self, PersistenceError> {
        let mut by_word = BTreeMap::new();
        for (w, c) in coeffs {
            by_word.insert(p.parse_word(w)?, c.clone());
        }
        Self::new(p, by_word)
    }

    pub fn evaluate(&self, c: &Element) -> Result<Scalar, PersistenceError> {
        if !c.presentation().compatible(&self.pres) {
            return Err(crate::algebra::AlgebraError::MixedPresentations.into());
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(w, q)| q * c.coeff_of(w))
            .fold(Scalar::zero(), |a, b| a + b))
    }

    /// The l1 norm of the coefficients, dual to the l-infinity coefficient norm.
    pub fn norm(&self) -> Scalar {
        self.coeffs.values().map(Signed::abs).fold(Scalar::zero(), |a, b| a + b)
    }
}

/// How a curvature element determines entry times: a base time per
/// dimension plus, on tagged simplices, a functional of the curvature.
#[derive(Clone, Debug)]
pub struct CurvatureFiltrationSpec {
    pub base_times: BTreeMap<usize, Scalar>,
    pub tagged: BTreeMap<Simplex, String>,
    pub functionals: BTreeMap<String, LinearFunctional>,
}

impl CurvatureFiltrationSpec {
    pub fn new(
        base_times: BTreeMap<usize, Scalar>,
        tagged: BTreeMap<Simplex, String>,
        functionals: BTreeMap<String, LinearFunctional>,
    ) -> Result<Self, PersistenceError> {
        if let Some(name) = tagged.values().find(|n| !functionals.contains_key(*n)) {
            return Err(PersistenceError::UnknownFunctional(name.clone()));
        }
        Ok(CurvatureFiltrationSpec {
            base_times,
            tagged,
            functionals,
        })
    }

    /// `L = max_j ||l_j||`, the Lipschitz constant of `c -> phi_c` in the sup norm.
    pub fn lipschitz_constant(&self) -> Scalar {
        self.functionals
            .values()
            .map(LinearFunctional::norm)
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

pub fn curvature_filtration(
    complex: &SimplicialComplex,
    spec: &CurvatureFiltrationSpec,
    c: &Element,
) -> Result<Filtration, PersistenceError> {
    if !c.is_homogeneous_of(2) {
        return Err(PersistenceError::CurvatureNotDegreeTwo(c.to_string()));
    }
    if let Some(s) = spec.tagged.keys().find(|s| !complex.contains(s)) {
        return Err(PersistenceError::ComplexMismatch(format!(
            "tagged simplex {s} is not in the complex"
        )));
    }
    let mut times = BTreeMap::new();
    for s in complex.simplices() {
        let base = spec
            .base_times
            .get(&s.dim())
            .ok_or(PersistenceError::MissingBaseTime(s.dim()))?;
        let shift = match spec.tagged.get(s) {
            Some(name) => spec.functionals[name].evaluate(c)?,
            None => Scalar::zero(),
        };
        times.insert(s.clone(), base + shift);
    }
    Filtration::new(complex, times)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::algebra::scalar::{int, ratio};
    use crate::fixtures;

    #[test]
    fn toy_entry_times() {
        let toy = fixtures::toy_scenario();
        let tau = Simplex::parse("1 2 3").unwrap();
        let f0 = curvature_filtration(&toy.complex, &toy.spec, &toy.curvatures["c0"]).unwrap();
        assert_eq!(f0.time(&Simplex::parse("4").unwrap()), Some(&int(0)));
        assert_eq!(f0.time(&Simplex::parse("1 3").unwrap()), Some(&int(1)));
        assert_eq!(f0.time(&tau), Some(&int(2)));
        let half = parse_element("1/2 x", &toy.presentation).unwrap();
        let f = curvature_filtration(&toy.complex, &toy.spec, &half).unwrap();
        assert_eq!(f.time(&tau), Some(&ratio(5, 2)));
    }

    #[test]
    fn triangle_before_edges_is_rejected() {
        let toy = fixtures::toy_scenario();
        let c = parse_element("-2 x", &toy.presentation).unwrap();
        assert!(matches!(
            curvature_filtration(&toy.complex, &toy.spec, &c),
            Err(PersistenceError::Monotonicity { .. })
        ));
        // equal times are allowed
        let c = parse_element("-1 x", &toy.presentation).unwrap();
        assert!(curvature_filtration(&toy.complex, &toy.spec, &c).is_ok());
    }

    #[test]
    fn curvature_must_be_degree_two() {
        let toy = fixtures::toy_scenario();
        let c = parse_element("x + y", &toy.presentation).unwrap();
        assert!(matches!(
            curvature_filtration(&toy.complex, &toy.spec, &c),
            Err(PersistenceError::CurvatureNotDegreeTwo(_))
        ));
    }

    #[test]
    fn missing_base_time() {
        let toy = fixtures::toy_scenario();
        let mut spec = toy.spec.clone();
        spec.base_times.remove(&1);
        assert!(matches!(
            curvature_filtration(&toy.complex, &spec, &toy.curvatures["c0"]),
            Err(PersistenceError::MissingBaseTime(1))
        ));
    }

    #[test]
    fn shifts() {
        let toy = fixtures::toy_scenario();
        let f = curvature_filtration(&toy.complex, &toy.spec, &toy.curvatures["c0"]).unwrap();
        let g = curvature_filtration(&toy.complex, &toy.spec, &toy.curvatures["c1"]).unwrap();
        assert_eq!(sup_shift(&f, &g).unwrap(), ratio(3, 10));
        assert_eq!(sup_shift(&f, &f).unwrap(), int(0));
        let moved = Filtration::new(
            &toy.complex,
            f.times().iter().map(|(s, t)| (s.clone(), t + int(1))).collect(),
        )
        .unwrap();
        assert_eq!(sup_shift(&f, &moved).unwrap(), int(1));
        let other = crate::persistence::flag_complex(&[1, 2], &[(1, 2)], 1).unwrap();
        let h = Filtration::new(
            &other,
            other.simplices().map(|s| (s.clone(), int(0))).collect(),
        )
        .unwrap();
        assert!(matches!(sup_shift(&f, &h), Err(PersistenceError::ComplexMismatch(_))));
    }

    #[test]
    fn functional_validation_and_norm() {
        let p = fixtures::counterexample_presentation();
        let ell = LinearFunctional::from_named(
            &p,
            &BTreeMap::from([("x".to_string(), int(1)), ("x y".to_string(), ratio(-1, 2))]),
        )
        .unwrap();
        assert_eq!(ell.norm(), ratio(3, 2));
        let c = parse_element("3 x - 4 x y + y x", &p).unwrap();
        assert_eq!(ell.evaluate(&c).unwrap(), int(5));
        for bad in ["y", "theta theta"] {
            let r = LinearFunctional::from_named(&p, &BTreeMap::from([(bad.to_string(), int(1))]));
            assert!(matches!(r, Err(PersistenceError::InvalidFunctional(_))), "{bad}");
        }
    }
}
