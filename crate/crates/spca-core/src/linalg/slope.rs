use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

/// Weight sequence of the SLOPE norm on `d×d` matrices.
///
/// The weight at rank `j` (1-based, over the `d²` entry slots sorted by
/// decreasing absolute value) is `b_j = sqrt(log(e d² / j) + t)`. The
/// sequence is strictly decreasing and at the diagonal ranks `j = k²` it
/// equals `sqrt(log(e d²/k²) + t)`, so the `k²` heaviest ranks correspond
/// to the `[k]×[k]` block of a `k`-sparse support.
#[derive(Debug, Clone)]
pub struct SlopeWeights {
    dim: usize,
    t: Option<f64>,
    weights: Vec<f64>,
}

impl SlopeWeights {
    pub fn new(dim: usize, t: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidModel("SlopeWeights with dim = 0".into()));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidModel(format!("SlopeWeights needs t > 0, got {t}")));
        }
        let m = dim * dim;
        let log_ed2 = 1.0 + 2.0 * (dim as f64).ln();
        let weights = (1..=m)
            .map(|j| (log_ed2 - (j as f64).ln() + t).sqrt())
            .collect::<Vec<f64>>();
        debug_assert!(weights.iter().all(|w| *w > 0.0));
        Ok(SlopeWeights { dim, t: Some(t), weights })
    }

    /// Analysis default `t = 2 log(e d²/k²)` when a sparsity target is known;
    /// `k = 1` for the sparsity-agnostic convention.
    pub fn with_analysis_t(dim: usize, k: usize) -> Result<Self> {
        let k = k.max(1) as f64;
        let t = 2.0 * (1.0 + 2.0 * (dim as f64).ln() - 2.0 * k.ln());
        Self::new(dim, t)
    }

    /// Arbitrary nonincreasing positive weight sequence of length `d²`.
    pub fn custom(dim: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != dim * dim {
            return Err(Error::DimMismatch { expected: dim * dim, got: weights.len() });
        }
        if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidModel("SLOPE weights must be positive".into()));
        }
        if weights.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidModel("SLOPE weights must be nonincreasing".into()));
        }
        Ok(SlopeWeights { dim, t: None, weights })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `t` parameter of the canonical weights; `None` for custom sequences.
    pub fn t(&self) -> Option<f64> {
        self.t
    }

    /// Weights indexed by rank, nonincreasing, length `d²`.
    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    /// Diagonal-rank weight `b_kk(t) = sqrt(log(e d²/k²) + t)`, `k` 1-based.
    pub fn diagonal(&self, k: usize) -> f64 {
        self.weights[k * k - 1]
    }
}

/// Sorted weighted ℓ1 norm: `Σ_j b_j |M|↓_j` over the `d²` entries.
pub fn slope_norm(m: &SymMatrix, w: &SlopeWeights) -> Result<f64> {
    if m.dim() != w.dim() {
        return Err(Error::DimMismatch { expected: w.dim(), got: m.dim() });
    }
    let sorted = m.abs_entries_desc();
    Ok(sorted.iter().zip(w.as_slice()).map(|(x, b)| x * b).sum())
}
