use nalgebra::DMatrix;

use crate::error::Result;
use crate::linalg::SymMatrix;

/// Eigendecomposition of a symmetric matrix, eigenvalues nonincreasing.
#[derive(Debug, Clone)]
pub struct EigSym {
    /// Eigenvalues sorted in nonincreasing order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: DMatrix<f64>,
}

impl EigSym {
    /// Reconstructs `V diag(w) Vᵀ` for arbitrary replacement eigenvalues `w`.
    pub fn reconstruct_with(&self, w: &[f64]) -> SymMatrix {
        let d = self.vectors.nrows();
        debug_assert_eq!(w.len(), d);
        let mut scaled = self.vectors.clone();
        for (j, &wj) in w.iter().enumerate() {
            scaled.column_mut(j).scale_mut(wj);
        }
        let m = &scaled * self.vectors.transpose();
        // exact symmetry despite floating-point drift in the product
        SymMatrix::from_inner_unchecked((&m + m.transpose()) * 0.5)
    }

    /// The gap `λ1 - λ2` (zero for 1x1 matrices).
    pub fn top_gap(&self) -> f64 {
        if self.values.len() < 2 {
            f64::INFINITY
        } else {
            self.values[0] - self.values[1]
        }
    }
}

/// Full symmetric eigendecomposition, eigenvalues sorted nonincreasing.
pub fn eig_sym(m: &SymMatrix) -> Result<EigSym> {
    // SymMatrix construction already guarantees finiteness; decompose directly.
    let eig = m.as_matrix().clone().symmetric_eigen();
    let d = m.dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_unstable_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(d, d);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(EigSym { values, vectors })
}
