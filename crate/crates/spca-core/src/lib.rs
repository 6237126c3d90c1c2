//! Robust sparse PCA over the Fantope.
//!
//! The estimation problem is the SDP relaxation of sparse PCA: recover the
//! rank-one projector `β*β*ᵀ` of a spiked covariance matrix by optimizing a
//! linear objective over the Fantope `{Z ⪰ 0, Tr Z = 1}`. Four estimator
//! families are provided behind one projected proximal solver:
//!
//! * plain ERM (closed form: top eigenprojector of the empirical covariance),
//! * ℓ1- or SLOPE-regularized ERM,
//! * minmax median-of-means (MOM), robust to heavy tails and contamination,
//! * regularized minmax MOM.
//!
//! [`model`] simulates spiked-covariance data with Gaussian or Student-t
//! tails and adversarial contamination; [`rates`] evaluates the closed-form
//! radii, regularization intervals and error envelopes the estimators are
//! expected to track, plus Monte-Carlo concentration diagnostics; [`eval`]
//! scores estimates and runs seeded parameter sweeps.

pub mod dataio;
pub mod error;
pub mod estimators;
pub mod eval;
pub mod linalg;
pub mod model;
pub mod mom;
pub mod rates;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use linalg::{FantopeElement, SlopeWeights, SymMatrix};
