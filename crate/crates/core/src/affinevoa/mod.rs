//! Truncated vacuum modules `V^k(g)` and their quotients, with the exact
//! mode calculus of the affine superalgebra.
//!
//! States are vectors in the PBW basis of negative modes applied to the
//! vacuum, graded by conformal weight and truncated at a cutoff `N`. Every
//! operation that would leave grades `0..=N` fails with
//! [`Error::CutoffExceeded`](crate::Error::CutoffExceeded).

mod conformal;
mod engine;
mod ideal;
mod identities;
mod module;
pub mod pbw;

pub use conformal::{
    conformal, virasoro, virasoro_check, ConformalData, ConformalJson, VirasoroSummary,
};
pub use engine::ModeEngine;
pub use ideal::{
    check_positive_integer, ideal_closure, is_closed, is_perfect, is_singular,
    residual_singular_vectors, simple_quotient, theta_power, SimpleQuotient, SimpleQuotientJson,
};
pub use identities::{
    commutator_identity_check, weight_one_bracket, weight_one_form, zhu_circle, zhu_star,
};
pub use module::{
    build_vacuum, build_vacuum_for, GradeBasis, ModuleReport, State, TermJson, TruncatedModule,
};
pub use pbw::{Mode, Monomial};
