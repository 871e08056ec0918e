use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::Zero;

use super::parse::{parse_raw_expression, RawTerm};
use super::word::{add_term, Terms, Word};
use super::{AlgebraError, Scalar};

/// Rewrite cutoff used when a presentation does not set one.
pub const DEFAULT_WORD_LIMIT: usize = 32;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// An oriented monomial rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Terms,
}

/// Two one-step rewrites of an overlap word, before normalization.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Word,
    pub left: Terms,
    pub right: Terms,
}

/// A finitely presented graded algebra `k<generators> / (relations)` over the rationals.
///
/// Generators are stored in lex-rank order, so a [`Word`]'s letters index
/// directly into [`Presentation::generators`].
#[derive(Debug)]
pub struct Presentation {
    id: u64,
    generators: Vec<Generator>,
    index: HashMap<String, u32>,
    relations: Vec<Relation>,
    word_limit: usize,
}

impl Presentation {
    pub fn builder() -> PresentationBuilder {
        PresentationBuilder::default()
    }

    pub(crate) fn from_parts(
        generators: Vec<Generator>,
        relations: Vec<Relation>,
        word_limit: usize,
    ) -> Arc<Self> {
        let index = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), i as u32))
            .collect();
        Arc::new(Presentation {
            id: fresh_id(),
            generators,
            index,
            relations,
            word_limit,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Same generators, order, rules and cutoff. Elements of compatible
    /// presentations can be mixed freely.
    pub fn compatible(&self, other: &Presentation) -> bool {
        self.id == other.id
            || (self.word_limit == other.word_limit
                && self.generators == other.generators
                && self.relations == other.relations)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn word_limit(&self) -> usize {
        self.word_limit
    }

    /// True when every generator sits in degree 0.
    pub fn is_ungraded(&self) -> bool {
        self.generators.iter().all(|g| g.degree == 0)
    }

    pub fn generator_index(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn generator_name(&self, g: u32) -> &str {
        &self.generators[g as usize].name
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|&g| self.generators[g as usize].degree)
            .sum()
    }

    /// Resolves a whitespace-separated list of names; the empty string is the unit word.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlgebraError> {
        let names: Vec<&str> = text.split_whitespace().collect();
        self.resolve_names(&names)
    }

    pub fn resolve_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Word, AlgebraError> {
        names
            .iter()
            .map(|n| {
                self.generator_index(n.as_ref())
                    .ok_or_else(|| AlgebraError::UnknownGenerator(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from_letters)
    }

    /// Space-separated generator names; empty for the unit word.
    pub fn format_word(&self, w: &Word) -> String {
        w.letters()
            .iter()
            .map(|&g| self.generator_name(g))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<(), AlgebraError> {
        if len > self.word_limit {
            Err(AlgebraError::WordLengthExceeded {
                length: len,
                limit: self.word_limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        find_redex(&self.relations, w).is_none()
    }

    /// Fully rewrites a linear combination of words.
    pub fn normalize(&self, terms: Terms) -> Terms {
        normalize_with(&self.relations, terms)
    }

    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        critical_pairs(&self.relations)
    }

    /// First critical pair whose two rewrites reach different normal forms,
    /// returned with both normal forms. `None` certifies local confluence.
    pub fn first_unjoinable_pair(&self) -> Option<CriticalPair> {
        self.critical_pairs().into_iter().find_map(|cp| {
            let left = self.normalize(cp.left);
            let right = self.normalize(cp.right);
            (left != right).then_some(CriticalPair {
                word: cp.word,
                left,
                right,
            })
        })
    }

    pub fn is_confluent(&self) -> bool {
        self.first_unjoinable_pair().is_none()
    }

    pub(crate) fn format_terms(&self, terms: &Terms) -> String {
        super::element::format_terms(self, terms)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} -> {}", self.format_word(&r.lhs), self.format_terms(&r.rhs)))
            .collect();
        write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
    }
}

pub(crate) fn find_redex<'a>(rules: &'a [Relation], w: &Word) -> Option<(usize, &'a Relation)> {
    let letters = w.letters();
    for pos in 0..letters.len() {
        for rule in rules {
            let lhs = rule.lhs.letters();
            if letters[pos..].starts_with(lhs) {
                return Some((pos, rule));
            }
        }
    }
    None
}

/// Rewrites largest words first. Every rewrite produces strictly smaller
/// words, so each word is expanded at most once.
pub(crate) fn normalize_with(rules: &[Relation], mut pending: Terms) -> Terms {
    let mut out = Terms::new();
    while let Some((word, coeff)) = pending.pop_last() {
        match find_redex(rules, &word) {
            None => {
                out.insert(word, coeff);
            }
            Some((pos, rule)) => {
                let prefix = word.slice(0, pos);
                let suffix = word.slice(pos + rule.lhs.len(), word.len());
                for (m, c) in &rule.rhs {
                    add_term(&mut pending, prefix.concat(m).concat(&suffix), &coeff * c);
                }
            }
        }
    }
    out
}

fn wrap(prefix: &Word, terms: &Terms, suffix: &Word) -> Terms {
    terms
        .iter()
        .map(|(w, c)| (prefix.concat(w).concat(suffix), c.clone()))
        .collect()
}

pub(crate) fn critical_pairs(rules: &[Relation]) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for (i, a) in rules.iter().enumerate() {
        for (j, b) in rules.iter().enumerate() {
            let (la, lb) = (a.lhs.len(), b.lhs.len());
            // proper overlaps: suffix of a.lhs == prefix of b.lhs
            for k in 1..la.min(lb) {
                if a.lhs.letters()[la - k..] == b.lhs.letters()[..k] {
                    let tail = b.lhs.slice(k, lb);
                    let head = a.lhs.slice(0, la - k);
                    out.push(CriticalPair {
                        word: a.lhs.concat(&tail),
                        left: wrap(&Word::empty(), &a.rhs, &tail),
                        right: wrap(&head, &b.rhs, &Word::empty()),
                    });
                }
            }
            // inclusions: b.lhs is a factor of a.lhs
            if i != j && lb <= la && !(la == lb && j < i) {
                if let Some(p) = a.lhs.find(&b.lhs) {
                    out.push(CriticalPair {
                        word: a.lhs.clone(),
                        left: a.rhs.clone(),
                        right: wrap(&a.lhs.slice(0, p), &b.rhs, &a.lhs.slice(p + lb, la)),
                    });
                }
            }
        }
    }
    out
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

struct PendingRelation {
    lhs: String,
    rhs: Vec<RawTerm>,
}

/// Collects generators and relations by name, validating everything in [`build`](Self::build).
#[derive(Default)]
pub struct PresentationBuilder {
    generators: Vec<Generator>,
    order: Option<Vec<String>>,
    relations: Vec<PendingRelation>,
    word_limit: Option<usize>,
    error: Option<AlgebraError>,
}

impl PresentationBuilder {
    pub fn generator(mut self, name: &str, degree: i64) -> Self {
        self.generators.push(Generator {
            name: name.to_string(),
            degree,
        });
        self
    }

    /// Lex order on generator names, smallest first. Defaults to declaration order.
    pub fn order<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.order = Some(names.iter().map(|s| s.as_ref().to_string()).collect());
        self
    }

    /// Adds `lhs -> rhs` with the right-hand side in the element expression grammar.
    pub fn relation(mut self, lhs: &str, rhs: &str) -> Self {
        match parse_raw_expression(rhs) {
            Ok(terms) => self.relations.push(PendingRelation {
                lhs: lhs.to_string(),
                rhs: terms,
            }),
            Err(e) => {
                self.error.get_or_insert(e);
            }
        }
        self
    }

    /// Adds `lhs -> rhs` with the right-hand side as explicit `(coefficient, word)` pairs.
    pub fn relation_terms(mut self, lhs: &str, rhs: Vec<(Scalar, String)>) -> Self {
        self.relations.push(PendingRelation {
            lhs: lhs.to_string(),
            rhs: rhs
                .into_iter()
                .map(|(coeff, w)| RawTerm {
                    coeff,
                    names: w.split_whitespace().map(str::to_string).collect(),
                })
                .collect(),
        });
        self
    }

    pub fn word_limit(mut self, limit: usize) -> Self {
        self.word_limit = Some(limit);
        self
    }

    pub fn build(self) -> Result<Arc<Presentation>, AlgebraError> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !valid_identifier(&g.name) {
                return Err(AlgebraError::InvalidName(g.name.clone()));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        let generators = match &self.order {
            None => self.generators.clone(),
            Some(order) => {
                let as_set: HashSet<&str> = order.iter().map(String::as_str).collect();
                if order.len() != self.generators.len() || as_set != seen {
                    return Err(AlgebraError::InvalidOrder);
                }
                order
                    .iter()
                    .map(|n| self.generators.iter().find(|g| &g.name == n).unwrap().clone())
                    .collect()
            }
        };
        let word_limit = self.word_limit.unwrap_or(DEFAULT_WORD_LIMIT);
        // resolve names against a rule-free shell first
        let shell = Presentation::from_parts(generators.clone(), Vec::new(), word_limit);
        let mut relations = Vec::with_capacity(self.relations.len());
        for pending in &self.relations {
            let lhs = shell.parse_word(&pending.lhs)?;
            if lhs.len() < 2 {
                return Err(AlgebraError::InvalidRelation(format!(
                    "left-hand side `{}` must have length at least 2",
                    pending.lhs
                )));
            }
            shell.check_len(lhs.len())?;
            let lhs_degree = shell.word_degree(&lhs);
            let mut rhs = Terms::new();
            for t in &pending.rhs {
                let w = shell.resolve_names(&t.names)?;
                if t.coeff.is_zero() {
                    continue;
                }
                if w >= lhs {
                    return Err(AlgebraError::OrderingViolation {
                        lhs: shell.format_word(&lhs),
                        rhs: shell.format_word(&w),
                    });
                }
                if shell.word_degree(&w) != lhs_degree {
                    return Err(AlgebraError::InhomogeneousRelation(shell.format_word(&lhs)));
                }
                add_term(&mut rhs, w, t.coeff.clone());
            }
            relations.push(Relation { lhs, rhs });
        }
        for i in 0..relations.len() {
            let rhs = std::mem::take(&mut relations[i].rhs);
            relations[i].rhs = normalize_with(&relations, rhs);
        }
        Ok(Presentation::from_parts(generators, relations, word_limit))
    }
}
