//! Symmetric-matrix primitives: eigendecomposition, Fantope and simplex
//! projections, entrywise norms, and the proximal maps of the ℓ1 and SLOPE
//! regularizers.
//!
//! Everything here is pure and reentrant; no operation keeps shared state.

mod eig;
mod projection;
mod prox;
mod slope;
mod sym;

pub use eig::{eig_sym, EigSym};
pub use projection::{project_fantope, project_simplex, FantopeElement, PSD_TOL, TRACE_TOL};
pub use prox::{prox_l1, prox_slope};
pub use slope::{slope_norm, SlopeWeights};
pub use sym::SymMatrix;
