//! Exact computations with affine vertex operator superalgebras at positive
//! integer level: structure constants, truncated vacuum modules, simple
//! quotients, graded `C_2` quotients and integrability conditions.

pub mod affinevoa;
pub mod c2;
pub mod error;
pub mod integrability;
pub mod liesuper;
pub mod linalg;
pub mod realizations;

pub use error::{Error, Result};
pub use linalg::Scalar;
