use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Dense symmetric `d×d` real matrix.
///
/// Carrier for covariance matrices and Fantope iterates. Symmetry and
/// finiteness are enforced on construction; arithmetic helpers preserve
/// symmetry so no re-validation happens on hot paths.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    inner: DMatrix<f64>,
}

impl SymMatrix {
    /// Wraps a square matrix, requiring exact symmetry and finite entries.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidMatrix(format!(
                "matrix is {}x{}, expected square",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        for i in 0..m.nrows() {
            for j in (i + 1)..m.ncols() {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric at ({i},{j}): {} vs {}",
                        m[(i, j)],
                        m[(j, i)]
                    )));
                }
            }
        }
        Ok(SymMatrix { inner: m })
    }

    /// Symmetrizes an arbitrary square matrix as `(M + Mᵀ)/2`.
    pub fn symmetrized(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidMatrix(format!(
                "matrix is {}x{}, expected square",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        let half = (&m + m.transpose()) * 0.5;
        Ok(SymMatrix { inner: half })
    }

    /// Builds from a row-major slice of length `d*d`.
    pub fn from_row_slice(d: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != d * d {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, got {}",
                d * d,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(d, d, entries))
    }

    /// `f(i, j)` must itself be symmetric in `(i, j)`; only `j >= i` is evaluated.
    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = f(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        SymMatrix { inner: m }
    }

    pub fn zeros(d: usize) -> Self {
        SymMatrix { inner: DMatrix::zeros(d, d) }
    }

    pub fn identity(d: usize) -> Self {
        SymMatrix { inner: DMatrix::identity(d, d) }
    }

    /// Rank-one outer product `vvᵀ`.
    pub fn outer(v: &[f64]) -> Self {
        let x = DVector::from_column_slice(v);
        SymMatrix { inner: &x * x.transpose() }
    }

    pub(crate) fn from_inner_unchecked(m: DMatrix<f64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        SymMatrix { inner: m }
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.inner
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.inner
    }

    pub fn trace(&self) -> f64 {
        self.inner.trace()
    }

    /// Frobenius inner product `⟨A, B⟩ = Σ a_ij b_ij`.
    pub fn inner_product(&self, other: &SymMatrix) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.inner.iter().zip(other.inner.iter()).map(|(a, b)| a * b).sum()
    }

    /// `‖M‖_2`, the entrywise Euclidean (Frobenius) norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `‖M‖_1`, the sum of absolute entries.
    pub fn entrywise_l1(&self) -> f64 {
        self.inner.iter().map(|v| v.abs()).sum()
    }

    /// `‖M‖_∞`, the largest absolute entry.
    pub fn entrywise_linf(&self) -> f64 {
        self.inner.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Absolute entries rearranged in nonincreasing order (`d²` values).
    pub fn abs_entries_desc(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.inner.iter().map(|x| x.abs()).collect();
        v.sort_unstable_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix { inner: &self.inner * c }
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        debug_assert_eq!(self.dim(), other.dim());
        SymMatrix { inner: &self.inner + &other.inner }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        debug_assert_eq!(self.dim(), other.dim());
        SymMatrix { inner: &self.inner - &other.inner }
    }

    /// `self + c * other`, the solver's gradient-step primitive.
    pub fn axpy(&self, c: f64, other: &SymMatrix) -> SymMatrix {
        debug_assert_eq!(self.dim(), other.dim());
        let mut m = self.inner.clone();
        m.iter_mut().zip(other.inner.iter()).for_each(|(a, b)| *a += c * b);
        SymMatrix { inner: m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_and_non_finite() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(SymMatrix::new(m), Err(Error::InvalidMatrix(_))));
        let m = DMatrix::from_row_slice(2, 2, &[1.0, f64::NAN, f64::NAN, 4.0]);
        assert!(matches!(SymMatrix::new(m), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn norms_zero_matrix() {
        let z = SymMatrix::zeros(3);
        assert_eq!(z.frobenius_norm(), 0.0);
        assert_eq!(z.entrywise_l1(), 0.0);
        assert_eq!(z.entrywise_linf(), 0.0);
    }

    #[test]
    fn norms_identity() {
        let i2 = SymMatrix::identity(2);
        assert!((i2.frobenius_norm() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(i2.entrywise_l1(), 2.0);
        assert_eq!(i2.entrywise_linf(), 1.0);
    }

    #[test]
    fn norms_hand_case() {
        // [[1,-2],[-2,1]]: L1 = 6, Linf = 2, Frobenius = sqrt(10)
        let m = SymMatrix::from_row_slice(2, &[1.0, -2.0, -2.0, 1.0]).unwrap();
        assert_eq!(m.entrywise_l1(), 6.0);
        assert_eq!(m.entrywise_linf(), 2.0);
        assert!((m.frobenius_norm() - 10f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn outer_product_is_symmetric() {
        let m = SymMatrix::outer(&[1.0, -2.0, 0.5]);
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert_eq!(m.get(0, 1), -2.0);
        assert_eq!(m.trace(), 1.0 + 4.0 + 0.25);
    }
}
