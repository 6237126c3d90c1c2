use crate::error::{Error, Result};
use crate::linalg::{SlopeWeights, SymMatrix};

/// Proximal map of `τ‖·‖_1`: entrywise soft-thresholding.
pub fn prox_l1(m: &SymMatrix, tau: f64) -> SymMatrix {
    debug_assert!(tau >= 0.0);
    let mut out = m.as_matrix().clone();
    for v in out.iter_mut() {
        *v = soft(*v, tau);
    }
    // entrywise map of a symmetric argument stays symmetric; average out drift
    SymMatrix::symmetrized(out).expect("finite by construction")
}

fn soft(x: f64, tau: f64) -> f64 {
    if x > tau {
        x - tau
    } else if x < -tau {
        x + tau
    } else {
        0.0
    }
}

/// Proximal map of `τ‖·‖_SLOPE`, the sorted-ℓ1 prox.
///
/// Entries are rearranged by decreasing absolute value, `τ b` is subtracted,
/// the nonincreasing order is restored by pool-adjacent-violators, negatives
/// are clipped, and signs and positions are put back.
pub fn prox_slope(m: &SymMatrix, w: &SlopeWeights, tau: f64) -> Result<SymMatrix> {
    if m.dim() != w.dim() {
        return Err(Error::DimMismatch { expected: w.dim(), got: m.dim() });
    }
    debug_assert!(tau >= 0.0);
    let d = m.dim();
    let entries: Vec<f64> = m.as_matrix().iter().copied().collect();
    let n = entries.len();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| entries[b].abs().total_cmp(&entries[a].abs()));

    let z: Vec<f64> = order
        .iter()
        .zip(w.as_slice())
        .map(|(&i, b)| entries[i].abs() - tau * b)
        .collect();
    let fitted = isotonic_nonincreasing(&z);

    let mut out = vec![0.0; n];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = entries[i].signum() * fitted[rank].max(0.0);
    }
    let mat = nalgebra::DMatrix::from_iterator(d, d, out);
    SymMatrix::symmetrized(mat)
}

/// Uniform-weight PAVA for a nonincreasing fit (least squares).
fn isotonic_nonincreasing(z: &[f64]) -> Vec<f64> {
    let mut sums: Vec<f64> = Vec::with_capacity(z.len());
    let mut counts: Vec<usize> = Vec::with_capacity(z.len());
    for &v in z {
        sums.push(v);
        counts.push(1);
        // pool while the last block mean exceeds the one before it
        while sums.len() >= 2 {
            let k = sums.len();
            let last = sums[k - 1] / counts[k - 1] as f64;
            let prev = sums[k - 2] / counts[k - 2] as f64;
            if last <= prev {
                break;
            }
            let (s, c) = (sums.pop().unwrap(), counts.pop().unwrap());
            sums[k - 2] += s;
            counts[k - 2] += c;
        }
    }
    let mut out = Vec::with_capacity(z.len());
    for (s, c) in sums.iter().zip(&counts) {
        let mean = s / *c as f64;
        out.extend(std::iter::repeat(mean).take(*c));
    }
    out
}
