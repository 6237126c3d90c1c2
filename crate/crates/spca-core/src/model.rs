//! Spiked-covariance data generation and adversarial contamination.
//!
//! Samples are drawn as `X = Σ^{1/2} ζ` with `Σ = θ β*β*ᵀ + I_d` and ζ having
//! i.i.d. standardized coordinates (Gaussian or scaled Student-t). The square
//! root is applied in closed form, `Σ^{1/2} = I + (sqrt(1+θ) - 1) β*β*ᵀ`.
//! Contamination replaces a chosen set of samples after generation; inliers
//! are never touched and the outlier positions are kept in a mask that is
//! for evaluation only — estimators never see it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StudentT};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

/// Coordinate law of the standardized noise vector ζ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Tail {
    Gaussian,
    /// Student-t with `nu > 4` degrees of freedom, scaled to unit variance.
    StudentT { nu: f64 },
}

impl Tail {
    fn validate(&self) -> Result<()> {
        if let Tail::StudentT { nu } = self {
            if !(*nu > 4.0) {
                return Err(Error::InvalidModel(format!(
                    "Student-t tail requires nu > 4, got {nu}"
                )));
            }
        }
        Ok(())
    }
}

/// Parameters of the spiked covariance law `Σ = θ β*β*ᵀ + I_d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpikedModel {
    d: usize,
    k: usize,
    theta: f64,
    beta_star: Vec<f64>,
    tail: Tail,
}

impl SpikedModel {
    /// Canonical model: `β*` puts mass `1/sqrt(k)` on the first `k` coordinates.
    pub fn new(d: usize, k: usize, theta: f64, tail: Tail) -> Result<Self> {
        let mut beta = vec![0.0; d];
        if k == 0 || k > d {
            return Err(Error::InvalidModel(format!("need 1 <= k <= d, got k={k}, d={d}")));
        }
        let v = 1.0 / (k as f64).sqrt();
        beta.iter_mut().take(k).for_each(|b| *b = v);
        Self::with_beta_star(d, k, theta, beta, tail)
    }

    /// Custom unit `k`-sparse spike direction.
    pub fn with_beta_star(
        d: usize,
        k: usize,
        theta: f64,
        beta_star: Vec<f64>,
        tail: Tail,
    ) -> Result<Self> {
        if k == 0 || k > d {
            return Err(Error::InvalidModel(format!("need 1 <= k <= d, got k={k}, d={d}")));
        }
        if beta_star.len() != d {
            return Err(Error::InvalidModel(format!(
                "beta_star has length {}, expected {d}",
                beta_star.len()
            )));
        }
        // theta = 0 is allowed: a no-signal model is a legitimate simulation cell
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(Error::InvalidModel(format!("theta must be >= 0, got {theta}")));
        }
        let norm = beta_star.iter().map(|b| b * b).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidModel(format!("beta_star norm {norm} is not 1")));
        }
        let support = beta_star.iter().filter(|b| **b != 0.0).count();
        if support > k {
            return Err(Error::InvalidModel(format!(
                "beta_star support {support} exceeds sparsity k={k}"
            )));
        }
        tail.validate()?;
        Ok(SpikedModel { d, k, theta, beta_star, tail })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn sparsity(&self) -> usize {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn beta_star(&self) -> &[f64] {
        &self.beta_star
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Population covariance `θ β*β*ᵀ + I_d`.
    pub fn covariance(&self) -> SymMatrix {
        let mut m = SymMatrix::outer(&self.beta_star).scale(self.theta).into_matrix();
        for i in 0..self.d {
            m[(i, i)] += 1.0;
        }
        SymMatrix::from_inner_unchecked(m)
    }

    /// Population oracle `Z* = β*β*ᵀ`.
    pub fn oracle(&self) -> crate::linalg::FantopeElement {
        crate::linalg::FantopeElement::rank_one(&self.beta_star)
            .expect("beta_star is unit by construction")
    }
}

/// Where the adversary writes its outliers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Placement {
    /// Replace the first `|O|` samples (default; exchangeable estimators
    /// cannot see the difference).
    FirstIndices,
    /// Explicit index set.
    Indices { indices: Vec<usize> },
    /// Positions drawn without replacement from the contamination seed.
    SeededRandom,
}

/// What the adversary writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContaminationStrategy {
    /// Every outlier becomes `magnitude * direction` (unit direction).
    LargeSpike { direction: Vec<f64>, magnitude: f64 },
    /// Outliers are `scale * g` with `g ~ N(0, I_d)`.
    HugeGaussian { scale: f64 },
    /// Outliers are `scale * v` with `v` unit, orthogonal to `β*` and
    /// supported off `support(β*)` — the direction is precomputed from the
    /// model via [`ContaminationSpec::anti_signal`].
    AntiSignal { direction: Vec<f64>, scale: f64 },
}

/// Full contamination request: how many, what and where.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContaminationSpec {
    pub num_outliers: usize,
    pub strategy: ContaminationStrategy,
    pub placement: Placement,
}

impl ContaminationSpec {
    pub fn large_spike(num_outliers: usize, direction: Vec<f64>, magnitude: f64) -> Self {
        ContaminationSpec {
            num_outliers,
            strategy: ContaminationStrategy::LargeSpike { direction, magnitude },
            placement: Placement::FirstIndices,
        }
    }

    pub fn huge_gaussian(num_outliers: usize, scale: f64) -> Self {
        ContaminationSpec {
            num_outliers,
            strategy: ContaminationStrategy::HugeGaussian { scale },
            placement: Placement::FirstIndices,
        }
    }

    /// Builds the maximally misleading direction for `model`: the first
    /// standard basis vector outside `support(β*)`.
    pub fn anti_signal(model: &SpikedModel, num_outliers: usize, scale: f64) -> Result<Self> {
        let off = (0..model.dim())
            .find(|&j| model.beta_star()[j] == 0.0)
            .ok_or_else(|| Error::InvalidModel("beta_star has full support".into()))?;
        let mut direction = vec![0.0; model.dim()];
        direction[off] = 1.0;
        Ok(ContaminationSpec {
            num_outliers,
            strategy: ContaminationStrategy::AntiSignal { direction, scale },
            placement: Placement::FirstIndices,
        })
    }
}

/// Borrowed view of the sample block — the only thing estimators receive.
#[derive(Debug, Clone, Copy)]
pub struct Samples<'a> {
    d: usize,
    n: usize,
    data: &'a [f64],
}

impl<'a> Samples<'a> {
    pub fn new(d: usize, n: usize, data: &'a [f64]) -> Self {
        assert_eq!(data.len(), d * n);
        Samples { d, n, data }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn row(&self, i: usize) -> &'a [f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn raw(&self) -> &'a [f64] {
        self.data
    }
}

/// `N` samples in `R^d` plus the evaluation-only outlier mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    d: usize,
    n: usize,
    /// Row-major `n × d`.
    samples: Vec<f64>,
    /// Evaluation-only; estimators never read this.
    hidden_outlier_mask: Vec<bool>,
    seed: u64,
}

impl Dataset {
    pub fn from_samples(d: usize, samples: Vec<f64>, seed: u64) -> Result<Self> {
        if d == 0 || samples.len() % d != 0 || samples.is_empty() {
            return Err(Error::InvalidModel(format!(
                "sample buffer of length {} is not a positive multiple of d={d}",
                samples.len()
            )));
        }
        let n = samples.len() / d;
        Ok(Dataset { d, n, samples, hidden_outlier_mask: vec![false; n], seed })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn samples(&self) -> Samples<'_> {
        Samples { d: self.d, n: self.n, data: &self.samples }
    }

    /// Evaluation-only outlier positions.
    pub fn outlier_mask(&self) -> &[bool] {
        &self.hidden_outlier_mask
    }

    pub(crate) fn set_mask(&mut self, mask: Vec<bool>) {
        assert_eq!(mask.len(), self.n);
        self.hidden_outlier_mask = mask;
    }
}

/// Draws `n` i.i.d. samples from the spiked model. Deterministic given `seed`.
pub fn sample_spiked(model: &SpikedModel, n: usize, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::InvalidModel("need at least one sample".into()));
    }
    let d = model.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spike_gain = (1.0 + model.theta()).sqrt() - 1.0;
    let beta = model.beta_star();

    let mut samples = vec![0.0; n * d];
    let mut draw_row = |rng: &mut ChaCha8Rng, row: &mut [f64]| match model.tail() {
        Tail::Gaussian => {
            let normal = Normal::new(0.0, 1.0).expect("valid normal");
            row.iter_mut().for_each(|x| *x = normal.sample(rng));
        }
        Tail::StudentT { nu } => {
            let t = StudentT::new(nu).expect("nu > 4 validated");
            let scale = ((nu - 2.0) / nu).sqrt();
            row.iter_mut().for_each(|x| *x = scale * t.sample(rng));
        }
    };

    for i in 0..n {
        let row = &mut samples[i * d..(i + 1) * d];
        draw_row(&mut rng, row);
        let dot: f64 = row.iter().zip(beta).map(|(x, b)| x * b).sum();
        let gain = spike_gain * dot;
        row.iter_mut().zip(beta).for_each(|(x, b)| *x += gain * b);
    }
    Dataset::from_samples(d, samples, seed)
}

/// Replaces exactly `spec.num_outliers` samples. All other samples are
/// bit-identical to the input; the mask records the replaced positions.
pub fn contaminate(data: Dataset, spec: &ContaminationSpec, seed: u64) -> Result<Dataset> {
    let n = data.len();
    let d = data.dim();
    let m = spec.num_outliers;
    if m > n {
        return Err(Error::TooManyOutliers { requested: m, available: n });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positions: Vec<usize> = match &spec.placement {
        Placement::FirstIndices => (0..m).collect(),
        Placement::Indices { indices } => {
            if indices.len() != m {
                return Err(Error::InvalidModel(format!(
                    "placement lists {} indices for {m} outliers",
                    indices.len()
                )));
            }
            for &i in indices {
                if i >= n {
                    return Err(Error::InvalidModel(format!("outlier index {i} >= N={n}")));
                }
            }
            let mut sorted = indices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m {
                return Err(Error::InvalidModel("duplicate outlier indices".into()));
            }
            sorted
        }
        Placement::SeededRandom => {
            // Floyd's sampling without replacement, then sorted for determinism
            let mut chosen = std::collections::BTreeSet::new();
            for j in (n - m)..n {
                let t = rng.random_range(0..=j);
                if !chosen.insert(t) {
                    chosen.insert(j);
                }
            }
            chosen.into_iter().collect()
        }
    };

    let mut out = data;
    let mut mask = vec![false; n];
    for &i in &positions {
        mask[i] = true;
        let row = &mut out.samples[i * d..(i + 1) * d];
        match &spec.strategy {
            ContaminationStrategy::LargeSpike { direction, magnitude } => {
                if direction.len() != d {
                    return Err(Error::DimMismatch { expected: d, got: direction.len() });
                }
                row.iter_mut().zip(direction).for_each(|(x, v)| *x = magnitude * v);
            }
            ContaminationStrategy::HugeGaussian { scale } => {
                let normal = Normal::new(0.0, 1.0).expect("valid normal");
                row.iter_mut().for_each(|x| *x = scale * normal.sample(&mut rng));
            }
            ContaminationStrategy::AntiSignal { direction, scale } => {
                if direction.len() != d {
                    return Err(Error::DimMismatch { expected: d, got: direction.len() });
                }
                row.iter_mut().zip(direction).for_each(|(x, v)| *x = scale * v);
            }
        }
    }
    out.set_mask(mask);
    Ok(out)
}

/// Uncentered empirical covariance `(1/N) Σ X_i X_iᵀ`.
pub fn empirical_covariance(samples: Samples<'_>) -> SymMatrix {
    let (d, n) = (samples.dim(), samples.len());
    let x = nalgebra::DMatrix::from_row_slice(n, d, samples.raw());
    let gram = x.transpose() * &x;
    SymMatrix::from_inner_unchecked((&gram + gram.transpose()) * (0.5 / n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(v: &[f64]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn model_validation() {
        assert!(SpikedModel::new(5, 2, 2.0, Tail::Gaussian).is_ok());
        assert!(SpikedModel::new(5, 0, 2.0, Tail::Gaussian).is_err());
        assert!(SpikedModel::new(5, 6, 2.0, Tail::Gaussian).is_err());
        assert!(SpikedModel::new(5, 2, -1.0, Tail::Gaussian).is_err());
        assert!(SpikedModel::new(5, 2, 2.0, Tail::StudentT { nu: 3.0 }).is_err());
        let bad_beta = SpikedModel::with_beta_star(3, 1, 1.0, vec![0.5, 0.5, 0.5], Tail::Gaussian);
        assert!(bad_beta.is_err());
    }

    #[test]
    fn covariance_top_eigenvalue() {
        let model = SpikedModel::new(6, 2, 3.0, Tail::Gaussian).unwrap();
        let sigma = model.covariance();
        let eig = crate::linalg::eig_sym(&sigma).unwrap();
        assert!((eig.values[0] - 4.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic() {
        let model = SpikedModel::new(4, 2, 1.5, Tail::StudentT { nu: 8.0 }).unwrap();
        let a = sample_spiked(&model, 50, 7).unwrap();
        let b = sample_spiked(&model, 50, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_spiked(&model, 50, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn contaminate_zero_outliers_is_identity() {
        let model = SpikedModel::new(3, 1, 1.0, Tail::Gaussian).unwrap();
        let data = sample_spiked(&model, 10, 1).unwrap();
        let spec = ContaminationSpec::large_spike(0, vec![1.0, 0.0, 0.0], 100.0);
        let out = contaminate(data.clone(), &spec, 0).unwrap();
        assert_eq!(out, data);
    }

    #[test]
    fn contaminate_all_samples() {
        let model = SpikedModel::new(3, 1, 1.0, Tail::Gaussian).unwrap();
        let data = sample_spiked(&model, 5, 1).unwrap();
        let spec = ContaminationSpec::large_spike(5, vec![1.0, 0.0, 0.0], 10.0);
        let out = contaminate(data, &spec, 0).unwrap();
        assert!(out.outlier_mask().iter().all(|&b| b));
    }

    #[test]
    fn large_spike_magnitude_and_inliers_untouched() {
        let model = SpikedModel::new(3, 1, 1.0, Tail::Gaussian).unwrap();
        let data = sample_spiked(&model, 10, 42).unwrap();
        let spec = ContaminationSpec::large_spike(2, vec![1.0, 0.0, 0.0], 1e3);
        let out = contaminate(data.clone(), &spec, 0).unwrap();

        let spiked: Vec<usize> = (0..10)
            .filter(|&i| norm(out.samples().row(i)) >= 1e3 - 1e-9)
            .collect();
        assert_eq!(spiked, vec![0, 1]);
        assert_eq!(out.outlier_mask().iter().filter(|&&b| b).count(), 2);

        // byte-compare the inliers
        for i in 2..10 {
            assert_eq!(out.samples().row(i), data.samples().row(i));
        }
    }

    #[test]
    fn too_many_outliers_rejected() {
        let model = SpikedModel::new(3, 1, 1.0, Tail::Gaussian).unwrap();
        let data = sample_spiked(&model, 4, 1).unwrap();
        let spec = ContaminationSpec::huge_gaussian(5, 10.0);
        assert!(matches!(
            contaminate(data, &spec, 0),
            Err(Error::TooManyOutliers { requested: 5, available: 4 })
        ));
    }

    #[test]
    fn seeded_random_placement_is_deterministic() {
        let model = SpikedModel::new(3, 1, 1.0, Tail::Gaussian).unwrap();
        let data = sample_spiked(&model, 20, 1).unwrap();
        let spec = ContaminationSpec {
            num_outliers: 5,
            strategy: ContaminationStrategy::HugeGaussian { scale: 50.0 },
            placement: Placement::SeededRandom,
        };
        let a = contaminate(data.clone(), &spec, 9).unwrap();
        let b = contaminate(data.clone(), &spec, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.outlier_mask().iter().filter(|&&m| m).count(), 5);
    }

    #[test]
    fn anti_signal_direction_off_support() {
        let model = SpikedModel::new(5, 2, 2.0, Tail::Gaussian).unwrap();
        let spec = ContaminationSpec::anti_signal(&model, 1, 30.0).unwrap();
        match &spec.strategy {
            ContaminationStrategy::AntiSignal { direction, .. } => {
                let dot: f64 =
                    direction.iter().zip(model.beta_star()).map(|(a, b)| a * b).sum();
                assert_eq!(dot, 0.0);
                assert_eq!(norm(direction), 1.0);
            }
            _ => panic!("wrong strategy"),
        }
    }

    #[test]
    fn empirical_covariance_single_and_cancelling() {
        let e1 = Dataset::from_samples(2, vec![1.0, 0.0], 0).unwrap();
        let cov = empirical_covariance(e1.samples());
        assert_eq!(cov.get(0, 0), 1.0);
        assert_eq!(cov.get(1, 1), 0.0);

        let pm = Dataset::from_samples(2, vec![1.0, 0.0, -1.0, 0.0], 0).unwrap();
        let cov = empirical_covariance(pm.samples());
        assert_eq!(cov.get(0, 0), 1.0);
        assert_eq!(cov.get(0, 1), 0.0);

        let basis = Dataset::from_samples(2, vec![1.0, 0.0, 0.0, 1.0], 0).unwrap();
        let cov = empirical_covariance(basis.samples());
        assert_eq!(cov.get(0, 0), 0.5);
        assert_eq!(cov.get(1, 1), 0.5);
        assert_eq!(cov.get(0, 1), 0.0);
    }
}
