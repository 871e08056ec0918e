use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::Scalar;

/// A monomial in the free algebra: a sequence of generator indices.
///
/// Indices are lex ranks within the owning presentation, so the derived
/// comparison below is exactly the length-then-lexicographic order used to
/// orient relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn letter(g: u32) -> Self {
        Word(vec![g])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Leftmost position at which `factor` occurs.
    pub fn find(&self, factor: &Word) -> Option<usize> {
        if factor.len() > self.len() {
            return None;
        }
        (0..=self.len() - factor.len()).find(|&i| self.0[i..i + factor.len()] == factor.0[..])
    }

    pub fn contains(&self, factor: &Word) -> bool {
        self.find(factor).is_some()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finitely supported linear combination of words, zero coefficients absent.
pub type Terms = BTreeMap<Word, Scalar>;

pub(crate) fn add_term(terms: &mut Terms, word: Word, coeff: Scalar) {
    use num_traits::Zero;
    if coeff.is_zero() {
        return;
    }
    match terms.entry(word) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}
