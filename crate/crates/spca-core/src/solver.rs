//! Projected proximal-subgradient engine shared by all estimators.
//!
//! One iteration is `Z ← project(prox(Z + η_t G_t, η_t))` where the gradient
//! matrix `G_t` comes from a pluggable source (the full empirical covariance
//! for (R)ERM, the median block mean for the MOM estimators). The source may
//! carry its own adversary iterate and advance it after each step.

use crate::error::Result;
use crate::linalg::{eig_sym, project_fantope, FantopeElement, SymMatrix};

/// Step-size schedule `η_t` as a function of `step0` and the iteration index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepSchedule {
    /// Constant `η_t = step0`.
    Fixed,
    /// `η_t = step0 / sqrt(t + 1)`.
    InvSqrtT,
}

impl StepSchedule {
    fn step(self, step0: f64, t: usize) -> f64 {
        match self {
            StepSchedule::Fixed => step0,
            StepSchedule::InvSqrtT => step0 / ((t + 1) as f64).sqrt(),
        }
    }
}

/// Starting point of the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Init {
    /// `I_d / d`, the Fantope barycenter.
    Barycenter,
    /// Projector of the leading eigenvector of the first gradient matrix.
    TopEigenprojector,
}

/// Which iterate the solve returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnPolicy {
    /// The iterate with the smallest recorded objective.
    BestObjective,
    /// The last iterate.
    Final,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// `None` resolves to `1 / opnorm` of the iteration-0 gradient matrix
    /// (the empirical covariance for the ERM family).
    pub step0: Option<f64>,
    pub step_schedule: StepSchedule,
    /// Relative stagnation tolerance of the running-best objective.
    pub tol: f64,
    /// Stagnation is measured over this many iterations.
    pub stagnation_window: usize,
    pub init: Init,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: 2000,
            step0: None,
            step_schedule: StepSchedule::InvSqrtT,
            tol: 1e-8,
            stagnation_window: 50,
            init: Init::Barycenter,
        }
    }
}

/// Per-iteration supplier of the ascent matrix.
pub trait GradientSource {
    /// Problem dimension `d`.
    fn dim(&self) -> usize;

    /// The matrix `G_t` to step along, given the current primal iterate.
    fn gradient(&mut self, t: usize, z: &FantopeElement) -> SymMatrix;

    /// Advances any internal adversary state after the primal step.
    fn adversary_step(&mut self, _grad: &SymMatrix, _step: f64) {}

    /// Scalar tracked for best-iterate selection and stagnation.
    fn objective(&self, z: &FantopeElement) -> f64;
}

/// Constant-gradient source: plain (regularized) empirical risk.
pub struct ConstantSource {
    sigma_hat: SymMatrix,
    lambda: f64,
    reg: Option<Box<dyn Fn(&SymMatrix) -> f64>>,
}

impl ConstantSource {
    pub fn new(sigma_hat: SymMatrix) -> Self {
        ConstantSource { sigma_hat, lambda: 0.0, reg: None }
    }

    pub fn with_regularizer(
        sigma_hat: SymMatrix,
        lambda: f64,
        reg: Box<dyn Fn(&SymMatrix) -> f64>,
    ) -> Self {
        ConstantSource { sigma_hat, lambda, reg: Some(reg) }
    }
}

impl GradientSource for ConstantSource {
    fn dim(&self) -> usize {
        self.sigma_hat.dim()
    }

    fn gradient(&mut self, _t: usize, _z: &FantopeElement) -> SymMatrix {
        self.sigma_hat.clone()
    }

    fn objective(&self, z: &FantopeElement) -> f64 {
        let fit = -self.sigma_hat.inner_product(z.matrix());
        match &self.reg {
            Some(reg) => fit + self.lambda * reg(z.matrix()),
            None => fit,
        }
    }
}

/// Outcome of a solve, before eigenvector extraction.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub z: FantopeElement,
    pub iterations: usize,
    /// Running best objective, one entry per completed iteration.
    pub trace: Vec<f64>,
    pub converged: bool,
    pub step0: f64,
}

/// Symmetric operator norm (largest absolute eigenvalue).
pub fn operator_norm(m: &SymMatrix) -> Result<f64> {
    let eig = eig_sym(m)?;
    let hi = eig.values.first().copied().unwrap_or(0.0).abs();
    let lo = eig.values.last().copied().unwrap_or(0.0).abs();
    Ok(hi.max(lo))
}

/// Runs the projected proximal iteration. `prox(M, η)` applies the scaled
/// proximal map (identity for unregularized objectives); `project` maps back
/// to the constraint set.
pub fn generic_linear_solve(
    source: &mut dyn GradientSource,
    prox: &dyn Fn(&SymMatrix, f64) -> Result<SymMatrix>,
    project: &dyn Fn(&SymMatrix) -> Result<FantopeElement>,
    cfg: &SolverConfig,
    policy: ReturnPolicy,
) -> Result<SolveOutcome> {
    assert!(cfg.max_iters >= 1);
    assert!(cfg.tol > 0.0);
    assert!(cfg.stagnation_window >= 1);

    let d = source.dim();
    let mut first_grad: Option<SymMatrix> = None;
    let mut z = match cfg.init {
        Init::Barycenter => FantopeElement::barycenter(d),
        Init::TopEigenprojector => {
            let bary = FantopeElement::barycenter(d);
            let g = source.gradient(0, &bary);
            let eig = eig_sym(&g)?;
            let v: Vec<f64> = eig.vectors.column(0).iter().copied().collect();
            let z = FantopeElement::rank_one(&normalize(&v))?;
            first_grad = Some(g);
            z
        }
    };

    let mut step0 = cfg.step0.unwrap_or(0.0);
    let mut best = z.clone();
    let mut best_obj = source.objective(&z);
    let mut trace = Vec::with_capacity(cfg.max_iters.min(4096));
    let mut converged = false;
    let mut iterations = 0;

    for t in 0..cfg.max_iters {
        let g = match first_grad.take() {
            Some(g) if t == 0 => g,
            _ => source.gradient(t, &z),
        };
        if t == 0 && cfg.step0.is_none() {
            let norm = operator_norm(&g)?;
            step0 = if norm > 0.0 { 1.0 / norm } else { 1.0 };
        }
        let eta = cfg.step_schedule.step(step0, t);
        let y = z.matrix().axpy(eta, &g);
        let y = prox(&y, eta)?;
        z = project(&y)?;
        source.adversary_step(&g, eta);

        let obj = source.objective(&z);
        if obj < best_obj {
            best_obj = obj;
            best = z.clone();
        }
        trace.push(best_obj);
        iterations = t + 1;

        let w = cfg.stagnation_window;
        if trace.len() > w {
            let before = trace[trace.len() - 1 - w];
            let scale = best_obj.abs().max(1.0);
            if before - best_obj <= cfg.tol * scale {
                converged = true;
                break;
            }
        }
    }

    let z = match policy {
        ReturnPolicy::BestObjective => best,
        ReturnPolicy::Final => z,
    };
    Ok(SolveOutcome { z, iterations, trace, converged, step0 })
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

/// Identity prox for unregularized objectives.
pub fn prox_identity(m: &SymMatrix, _step: f64) -> Result<SymMatrix> {
    Ok(m.clone())
}

/// Default constraint projection: the Fantope.
pub fn project_default(m: &SymMatrix) -> Result<FantopeElement> {
    project_fantope(m)
}
