//! Exact arithmetic in finitely presented graded algebras over the rationals.
//!
//! A [`Presentation`] fixes graded generators and monomial rewrite rules
//! `lhs -> rhs`. Rules are oriented by the length-lex order, so rewriting
//! always terminates; [`complete_presentation`] closes the rule set under
//! critical pairs so that normal forms decide equality in the quotient.

mod completion;
mod element;
mod parse;
mod presentation;
pub mod scalar;
mod word;

use thiserror::Error;

pub use completion::complete_presentation;
pub use element::Element;
pub use parse::parse_element;
pub use presentation::{
    CriticalPair, Generator, Presentation, PresentationBuilder, Relation, DEFAULT_WORD_LIMIT,
};
pub use scalar::Scalar;
pub use word::{Terms, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("malformed expression at offset {position}: {message}")]
    MalformedExpression { position: usize, message: String },
    #[error("elements belong to different presentations")]
    MixedPresentations,
    #[error("word of length {length} exceeds the rewrite cutoff {limit}")]
    WordLengthExceeded { length: usize, limit: usize },
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("lex order must list every generator exactly once")]
    InvalidOrder,
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("relation `{lhs}` is not length-lex larger than right-hand monomial `{rhs}`")]
    OrderingViolation { lhs: String, rhs: String },
    #[error("relation with left-hand side `{0}` is not homogeneous")]
    InhomogeneousRelation(String),
    #[error("completion produced an inadmissible rule: {0}")]
    GeneratedRuleRejected(String),
    #[error(
        "completion did not stabilize within {max_rounds} rounds; \
         critical pair on `{overlap}` rewrites to `{left}` and `{right}`"
    )]
    CompletionDiverged {
        max_rounds: usize,
        overlap: String,
        left: String,
        right: String,
    },
}
