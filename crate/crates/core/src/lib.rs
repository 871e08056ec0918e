//! Exact operator calculus on curved dg-algebras and curvature-controlled
//! persistent homology.
//!
//! * [`algebra`]: presented graded algebras over the rationals with
//!   canonical forms from a completed rewriting system.
//! * [`operator`]: inner derivations, Leibniz derivations and their iterates,
//!   with checkers for the curved axioms, the `d^{2m} = (ad_c)^m` normal form
//!   and the `(4n-2)` nilpotency bound.
//! * [`persistence`]: flag complexes, curvature-driven filtrations, barcodes,
//!   bottleneck distance and stability checks.
//! * [`formats`]: JSON file schemas; [`fixtures`]: built-in worked examples.

pub mod algebra;
pub mod fixtures;
pub mod formats;
pub mod operator;
pub mod persistence;
pub mod report;

pub use algebra::{parse_element, Element, Presentation, Scalar};
