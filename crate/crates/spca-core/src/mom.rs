//! Median-of-means machinery: equipartition of the sample indices and the
//! per-block increment statistics used by the minmax estimators.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{FantopeElement, SymMatrix};
use crate::model::Samples;

/// Equipartition of `[N]` into `K` blocks of size `floor(N/K)`.
///
/// Trailing indices (`N mod K`) are dropped. Without a shuffle seed the
/// blocks are contiguous; with one, a seeded permutation is split
/// contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct MomPartition {
    n: usize,
    k: usize,
    block_size: usize,
    /// Flat index list, block `b` is `indices[b*block_size..(b+1)*block_size]`.
    indices: Vec<usize>,
}

impl MomPartition {
    pub fn sample_count(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.k
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.indices[b * self.block_size..(b + 1) * self.block_size]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[usize]> {
        self.indices.chunks(self.block_size)
    }
}

/// Builds the equipartition; `1 <= K <= N` is required.
pub fn make_partition(n: usize, k: usize, shuffle_seed: Option<u64>) -> Result<MomPartition> {
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let block_size = n / k;
    let used = block_size * k;
    let indices = match shuffle_seed {
        None => (0..used).collect(),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            perm.truncate(used);
            perm
        }
    };
    Ok(MomPartition { n, k, block_size, indices })
}

/// Per-block empirical means of `X_i X_iᵀ`.
pub fn block_means(samples: Samples<'_>, part: &MomPartition) -> Vec<SymMatrix> {
    let d = samples.dim();
    part.blocks()
        .map(|block| {
            let mut x = nalgebra::DMatrix::zeros(block.len(), d);
            for (r, &i) in block.iter().enumerate() {
                x.row_mut(r).copy_from_slice(samples.row(i));
            }
            let gram = x.transpose() * &x;
            SymMatrix::from_inner_unchecked(
                (&gram + gram.transpose()) * (0.5 / block.len() as f64),
            )
        })
        .collect()
}

/// Median block of the increments `⟨Â_k, Z' - Z⟩`, given precomputed block
/// means. Returns the median value and the index of the realizing block.
///
/// For even `K` the lower of the two middle order statistics is taken, so
/// the value is always achieved by an actual block.
pub fn median_increment_from_means(
    means: &[SymMatrix],
    z: &SymMatrix,
    z_prime: &SymMatrix,
) -> (f64, usize) {
    debug_assert!(!means.is_empty());
    let diff = z_prime.sub(z);
    let mut vals: Vec<(f64, usize)> = means
        .iter()
        .enumerate()
        .map(|(i, m)| (m.inner_product(&diff), i))
        .collect();
    let mid = (vals.len() - 1) / 2;
    vals.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let (value, block) = vals[mid];
    (value, block)
}

/// `MOM_K(ℓ_Z - ℓ_{Z'})` evaluated from scratch on a dataset.
pub fn mom_increment(
    samples: Samples<'_>,
    part: &MomPartition,
    z: &FantopeElement,
    z_prime: &FantopeElement,
) -> Result<(f64, usize)> {
    if z.dim() != samples.dim() {
        return Err(Error::DimMismatch { expected: samples.dim(), got: z.dim() });
    }
    if z_prime.dim() != samples.dim() {
        return Err(Error::DimMismatch { expected: samples.dim(), got: z_prime.dim() });
    }
    let means = block_means(samples, part);
    Ok(median_increment_from_means(&means, z.matrix(), z_prime.matrix()))
}
