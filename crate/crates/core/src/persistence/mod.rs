//! Curvature-controlled filtrations of finite simplicial complexes and their
//! persistence barcodes, with exact bottleneck distances.

mod barcode;
mod bottleneck;
mod complex;
mod filtration;
mod stability;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use barcode::{compute_barcode, Bar, Barcode, Extended};
pub use bottleneck::{bottleneck_distance, match_bars, BarMatching, Side};
pub use complex::{flag_complex, Simplex, SimplicialComplex};
pub use filtration::{
    curvature_filtration, sup_shift, CurvatureFiltrationSpec, Filtration, LinearFunctional,
};
pub use stability::{verify_stability, StabilityReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PersistenceError {
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("edge references unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("simplex {simplex} is missing its face {face}")]
    NotFaceClosed { simplex: String, face: String },
    #[error("simplex {0} has no entry time")]
    MissingEntryTime(String),
    #[error(
        "filtration is not monotone: face {face} enters at {face_time} \
         after simplex {simplex} at {simplex_time}"
    )]
    Monotonicity {
        face: String,
        face_time: String,
        simplex: String,
        simplex_time: String,
    },
    #[error("{0}")]
    ComplexMismatch(String),
    #[error("invalid functional: {0}")]
    InvalidFunctional(String),
    #[error("unknown functional `{0}`")]
    UnknownFunctional(String),
    #[error("no base time for dimension {0}")]
    MissingBaseTime(usize),
    #[error("curvature `{0}` is not homogeneous of degree 2")]
    CurvatureNotDegreeTwo(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
