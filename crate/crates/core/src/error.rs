use thiserror::Error;

use crate::linalg::Scalar;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse rational {0:?}")]
    ParseScalar(String),

    #[error("not simple or wrong form: Casimir does not act as a scalar on the adjoint")]
    NotSimple,

    #[error("unsupported Cartan subalgebra: {0}")]
    UnsupportedCartan(String),

    #[error("bilinear form restricted to the Cartan subalgebra is degenerate")]
    DegenerateForm,

    #[error("cutoff exceeded: grade {grade} is above cutoff {cutoff}")]
    CutoffExceeded { grade: i64, cutoff: usize },

    #[error("no conformal structure at critical level k = {0}")]
    CriticalLevel(Scalar),

    #[error("expected a state of grade {expected}, found grade {found}")]
    WrongGrade { expected: usize, found: usize },

    #[error("labels of family {found} given where {expected} was expected")]
    FamilyMismatch { expected: String, found: String },

    #[error("nothing testable at cutoff {0}")]
    Untestable(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
