use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::word::{add_term, Terms, Word};
use super::{AlgebraError, Presentation, Scalar};

/// An element of a presented algebra, always held in rewritten normal form.
///
/// Equality is structural on the normal form. Over a confluent presentation
/// this coincides with equality in the quotient algebra.
#[derive(Clone)]
pub struct Element {
    pres: Arc<Presentation>,
    terms: Terms,
}

impl Element {
    pub fn zero(p: &Arc<Presentation>) -> Self {
        Element {
            pres: p.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(p: &Arc<Presentation>) -> Self {
        Self::scalar(p, Scalar::one())
    }

    pub fn scalar(p: &Arc<Presentation>, q: Scalar) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, Word::empty(), q);
        Element {
            pres: p.clone(),
            terms,
        }
    }

    pub fn generator(p: &Arc<Presentation>, name: &str) -> Result<Self, AlgebraError> {
        let g = p
            .generator_index(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
        Ok(Self::monomial(p, Word::letter(g), Scalar::one()))
    }

    pub fn monomial(p: &Arc<Presentation>, word: Word, coeff: Scalar) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, word, coeff);
        Self::from_terms(p, terms)
    }

    /// Rewrites an arbitrary linear combination of words into normal form.
    pub fn from_terms(p: &Arc<Presentation>, terms: Terms) -> Self {
        Element {
            pres: p.clone(),
            terms: p.normalize(terms),
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub(crate) fn ensure_same(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.pres.compatible(&other.pres) {
            Ok(())
        } else {
            Err(AlgebraError::MixedPresentations)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.ensure_same(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_term(&mut terms, w.clone(), c.clone());
        }
        Ok(Element {
            pres: self.pres.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, q: &Scalar) -> Element {
        if q.is_zero() {
            return Element::zero(&self.pres);
        }
        Element {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect(),
        }
    }

    /// Product in the quotient algebra.
    pub fn multiply(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.ensure_same(other)?;
        let mut raw = Terms::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                self.pres.check_len(wa.len() + wb.len())?;
                add_term(&mut raw, wa.concat(wb), ca * cb);
            }
        }
        Ok(Element::from_terms(&self.pres, raw))
    }

    pub fn pow(&self, n: u32) -> Result<Element, AlgebraError> {
        let mut acc = Element::one(&self.pres);
        for _ in 0..n {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `[a, b] = ab - (-1)^{|a||b|} ba`, extended bilinearly over homogeneous parts.
    pub fn graded_commutator(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.ensure_same(other)?;
        let p = &self.pres;
        let mut raw = Terms::new();
        for (wa, ca) in &self.terms {
            let da = p.word_degree(wa);
            for (wb, cb) in &other.terms {
                p.check_len(wa.len() + wb.len())?;
                let db = p.word_degree(wb);
                let c = ca * cb;
                let swapped = if (da * db).rem_euclid(2) == 0 { -c.clone() } else { c.clone() };
                add_term(&mut raw, wa.concat(wb), c);
                add_term(&mut raw, wb.concat(wa), swapped);
            }
        }
        Ok(Element::from_terms(p, raw))
    }

    /// Canonical form of `sum q_i * e_i`. The empty combination has no
    /// presentation to attach to, so the caller supplies one for that case.
    pub fn linear_combine(
        p: &Arc<Presentation>,
        terms: &[(Scalar, Element)],
    ) -> Result<Element, AlgebraError> {
        let mut acc = Element::zero(p);
        for (q, e) in terms {
            acc = acc.add(&e.scale(q))?;
        }
        Ok(acc)
    }

    pub fn degree_components(&self) -> BTreeMap<i64, Element> {
        let mut parts: BTreeMap<i64, Terms> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts
                .entry(self.pres.word_degree(w))
                .or_default()
                .insert(w.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|(d, terms)| {
                (
                    d,
                    Element {
                        pres: self.pres.clone(),
                        terms,
                    },
                )
            })
            .collect()
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|w| self.pres.word_degree(w)).collect()
    }

    /// The degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let ds = self.degrees();
        if ds.len() == 1 {
            ds.into_iter().next()
        } else {
            None
        }
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, degree: i64) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    /// Largest absolute coefficient; 0 for the zero element.
    pub fn coeff_norm_inf(&self) -> Scalar {
        self.terms
            .values()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.pres.compatible(&other.pres) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.pres, &self.terms))
    }
}

/// Renders in the expression grammar so the output re-parses to the same element.
pub(crate) fn format_terms(p: &Presentation, terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let word = p.format_word(w);
        if word.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&word);
        } else {
            out.push_str(&format!("{mag} {word}"));
        }
    }
    out
}
