use crate::error::Result;
use crate::linalg::{eig_sym, SymMatrix};

/// Tolerance on eigenvalue nonnegativity after projection.
pub const PSD_TOL: f64 = 1e-9;
/// Tolerance on `|trace - 1|` after projection.
pub const TRACE_TOL: f64 = 1e-9;

/// A point of the Fantope `{Z ⪰ 0, Tr Z = 1}` (within [`PSD_TOL`] / [`TRACE_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct FantopeElement {
    matrix: SymMatrix,
}

impl FantopeElement {
    /// Validates the PSD and unit-trace invariants (runs an eigendecomposition).
    pub fn new(matrix: SymMatrix) -> Result<Self> {
        let tr = matrix.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(crate::Error::InvalidMatrix(format!(
                "trace {tr} is not 1 within {TRACE_TOL:e}"
            )));
        }
        let eig = eig_sym(&matrix)?;
        if let Some(&min) = eig.values.last() {
            if min < -PSD_TOL {
                return Err(crate::Error::InvalidMatrix(format!(
                    "eigenvalue {min} below -{PSD_TOL:e}"
                )));
            }
        }
        Ok(FantopeElement { matrix })
    }

    /// Used where feasibility holds by construction (projection output,
    /// rank-one projectors of unit vectors).
    pub(crate) fn from_feasible_unchecked(matrix: SymMatrix) -> Self {
        FantopeElement { matrix }
    }

    /// Rank-one projector `vvᵀ` of a unit vector.
    pub fn rank_one(v: &[f64]) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(crate::Error::NotUnit((norm - 1.0).abs()));
        }
        Ok(FantopeElement { matrix: SymMatrix::outer(v) })
    }

    /// Uniform barycenter `I_d / d`, the solver's default starting point.
    pub fn barycenter(d: usize) -> Self {
        FantopeElement { matrix: SymMatrix::identity(d).scale(1.0 / d as f64) }
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SymMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Euclidean projection onto the probability simplex `{w ≥ 0, Σw_i = 1}`.
///
/// Sort-and-shift: the active set is found from the sorted values, the
/// common shift is subtracted, and the result is renormalized so the sum
/// is exactly one after thresholding.
pub fn project_simplex(v: &[f64]) -> Vec<f64> {
    let d = v.len();
    assert!(d > 0, "empty vector");
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));

    let mut cumsum = 0.0;
    let mut tau = 0.0;
    for (k, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - 1.0) / (k + 1) as f64;
        if u - t > 0.0 {
            tau = t;
        }
    }
    let mut w: Vec<f64> = v.iter().map(|&x| (x - tau).max(0.0)).collect();
    let sum: f64 = w.iter().sum();
    if sum > 0.0 {
        for x in &mut w {
            *x /= sum;
        }
    } else {
        // degenerate: all mass clipped, fall back to uniform
        w.fill(1.0 / d as f64);
    }
    w
}

/// Frobenius projection onto the Fantope: eigendecompose and project the
/// spectrum onto the probability simplex.
pub fn project_fantope(m: &SymMatrix) -> Result<FantopeElement> {
    let eig = eig_sym(m)?;
    let w = project_simplex(&eig.values);
    let z = eig.reconstruct_with(&w);
    Ok(FantopeElement::from_feasible_unchecked(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simplex_already_feasible() {
        assert_eq!(project_simplex(&[0.5, 0.5]), vec![0.5, 0.5]);
    }

    #[test]
    fn simplex_vertex() {
        assert_eq!(project_simplex(&[1.0, 0.0]), vec![1.0, 0.0]);
    }

    #[test]
    fn simplex_hand_kkt() {
        // (0.8, 0.6): shift tau = 0.2, projection (0.6, 0.4)
        let w = project_simplex(&[0.8, 0.6]);
        assert_relative_eq!(w[0], 0.6, max_relative = 1e-12);
        assert_relative_eq!(w[1], 0.4, max_relative = 1e-12);
    }

    #[test]
    fn simplex_negative_entries() {
        let w = project_simplex(&[2.0, -1.0]);
        assert_relative_eq!(w[0], 1.0, max_relative = 1e-12);
        assert_eq!(w[1], 0.0);
        let w = project_simplex(&[-3.0, -4.0]);
        assert_relative_eq!(w[0], 1.0, max_relative = 1e-12);
        assert_eq!(w[1], 0.0);
    }

    #[test]
    fn fantope_fixes_feasible_points() {
        let d = 4;
        let bar = FantopeElement::barycenter(d);
        let p = project_fantope(bar.matrix()).unwrap();
        assert!(p.matrix().sub(bar.matrix()).frobenius_norm() < 1e-12);

        let beta = [0.6, 0.8, 0.0];
        let z = SymMatrix::outer(&beta);
        let p = project_fantope(&z).unwrap();
        assert!(p.matrix().sub(&z).frobenius_norm() < 1e-10);
    }

    #[test]
    fn fantope_diag_case() {
        // diag(2, 0) -> diag(1, 0)
        let m = SymMatrix::from_row_slice(2, &[2.0, 0.0, 0.0, 0.0]).unwrap();
        let p = project_fantope(&m).unwrap();
        assert_relative_eq!(p.matrix().get(0, 0), 1.0, max_relative = 1e-12);
        assert!(p.matrix().get(1, 1).abs() < 1e-12);
        assert!(p.matrix().get(0, 1).abs() < 1e-12);
    }

    #[test]
    fn fantope_idempotent() {
        let m = SymMatrix::from_row_slice(3, &[1.5, -0.3, 0.2, -0.3, 0.1, 0.7, 0.2, 0.7, -2.0])
            .unwrap();
        let p1 = project_fantope(&m).unwrap();
        let p2 = project_fantope(p1.matrix()).unwrap();
        assert!(p2.matrix().sub(p1.matrix()).frobenius_norm() < 1e-8);
        assert!((p1.matrix().trace() - 1.0).abs() <= TRACE_TOL);
    }

    #[test]
    fn validating_constructor_rejects_bad_trace() {
        let m = SymMatrix::identity(3);
        assert!(FantopeElement::new(m).is_err());
    }
}
