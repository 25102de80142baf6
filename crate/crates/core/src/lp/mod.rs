//! Exact LP machinery: a bounded dual simplex and the row-generated cut LP.

pub mod simplex;
mod vc;

pub use vc::{
    has_half_edge, max_fractional_edge, separate, solve_lpvc, solve_lpvc_with, ConstraintRow,
    FractionalSolution, LpOptions, LpSolution, SeparationResult,
};
pub(crate) use vc::fractional_min_cut;
