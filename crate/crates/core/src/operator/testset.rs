use std::sync::Arc;

use num_traits::One;

use super::OperatorError;
use crate::algebra::{Element, Presentation, Scalar, Word};

/// Upper bound on the number of test elements before enumeration gives up.
pub const MAX_TEST_SET: usize = 100_000;

/// Every canonical word up to a length cutoff, as elements in length-lex order.
///
/// Operators are linear, so vanishing on this set certifies vanishing on the
/// span of all words of length at most `max_word_len`.
#[derive(Clone, Debug)]
pub struct TestSet {
    elements: Vec<Element>,
    max_word_len: usize,
    generators: Vec<String>,
}

impl TestSet {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn max_word_len(&self) -> usize {
        self.max_word_len
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }
}

pub fn spanning_test_set(
    p: &Arc<Presentation>,
    max_word_len: usize,
) -> Result<TestSet, OperatorError> {
    let all: Vec<String> = p.generators().iter().map(|g| g.name.clone()).collect();
    spanning_test_set_over(p, max_word_len, &all)
}

/// Like [`spanning_test_set`] but only words in the listed generators.
pub fn spanning_test_set_over<S: AsRef<str>>(
    p: &Arc<Presentation>,
    max_word_len: usize,
    generators: &[S],
) -> Result<TestSet, OperatorError> {
    if max_word_len < 1 {
        return Err(OperatorError::InvalidArgument(
            "test set word length must be at least 1".into(),
        ));
    }
    let mut letters: Vec<u32> = generators
        .iter()
        .map(|n| {
            p.generator_index(n.as_ref())
                .ok_or_else(|| crate::algebra::AlgebraError::UnknownGenerator(n.as_ref().into()))
        })
        .collect::<Result<_, _>>()?;
    letters.sort_unstable();
    letters.dedup();

    let mut words = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_word_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in &letters {
                let candidate = w.concat(&Word::letter(g));
                if p.is_irreducible(&candidate) {
                    next.push(candidate);
                }
            }
        }
        if words.len() + next.len() > MAX_TEST_SET {
            return Err(OperatorError::TestSetTooLarge {
                limit: MAX_TEST_SET,
            });
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(TestSet {
        elements: words
            .into_iter()
            .map(|w| Element::monomial(p, w, Scalar::one()))
            .collect(),
        max_word_len,
        generators: letters.iter().map(|&g| p.generator_name(g).to_string()).collect(),
    })
}
