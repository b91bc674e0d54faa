//! Proximal-gradient sparse coding: a gradient step on `||y - A x||^2`
//! followed by entry-wise shrinkage, repeated from `x = 0`.

use ndarray::linalg::general_mat_mul;
use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dictionary::{Dictionary, DictionaryError};
use crate::metrics::{percent_nonzero, psnr_from_mse};
pub use crate::prox::Penalty;
use crate::prox::ProxError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Dimension(#[from] DictionaryError),
    #[error(transparent)]
    Penalty(#[from] ProxError),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("diverged: non-finite coefficients at iteration {iteration}")]
    Diverged { iteration: usize },
}

/// How the penalty parameters enter the shrinkage step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShrinkScaling {
    /// Shrink with the penalty parameters exactly as given.
    #[default]
    Literal,
    /// Shrink with the proximal weight multiplied by `2 * step_size`, the
    /// textbook proximal-gradient step for `||y - A x||^2 + weight * phi(x)`.
    StepScaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub step_size: f64,
    pub max_iterations: usize,
    /// Relative cost decrease below which iteration stops; 0 disables the test.
    pub cost_tolerance: f64,
    pub record_trace: bool,
    pub shrink_scaling: ShrinkScaling,
    /// Magnitude at or below which a coefficient counts as zero in traces.
    pub zero_epsilon: f64,
    /// When set, traces also record the PSNR of `A x` against `y` at this peak.
    pub trace_peak: Option<f64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            step_size: 0.005,
            max_iterations: 200,
            cost_tolerance: 0.0,
            record_trace: false,
            shrink_scaling: ShrinkScaling::Literal,
            zero_epsilon: 1e-6,
            trace_peak: None,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.step_size.is_finite() && self.step_size > 0.0) {
            return Err(SolverError::InvalidConfig(format!(
                "step size must be positive, got {}",
                self.step_size
            )));
        }
        if self.max_iterations == 0 {
            return Err(SolverError::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if !(self.cost_tolerance >= 0.0) || !(self.zero_epsilon >= 0.0) {
            return Err(SolverError::InvalidConfig(
                "cost_tolerance and zero_epsilon must be non-negative".into(),
            ));
        }
        if let Some(peak) = self.trace_peak {
            if !(peak.is_finite() && peak > 0.0) {
                return Err(SolverError::InvalidConfig(format!("trace peak must be positive, got {peak}")));
            }
        }
        Ok(())
    }

    /// The penalty actually applied by the shrinkage step.
    pub fn shrink_penalty(&self, penalty: &Penalty) -> Result<Penalty, SolverError> {
        penalty.validate()?;
        Ok(match self.shrink_scaling {
            ShrinkScaling::Literal => *penalty,
            ShrinkScaling::StepScaled => penalty.with_weight_scaled(2.0 * self.step_size)?,
        })
    }

    /// Multiplier on the penalty term of [`cost`] that gives the function the
    /// iteration descends: `1 / (2 step)` for literal shrinkage, `1` when scaled.
    pub fn penalty_multiplier(&self) -> f64 {
        match self.shrink_scaling {
            ShrinkScaling::Literal => 1.0 / (2.0 * self.step_size),
            ShrinkScaling::StepScaled => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    /// Value of [`objective`] after the iteration.
    pub cost: f64,
    pub percent_nonzero: f64,
    pub psnr_db: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodingResult {
    pub coefficients: Array1<f64>,
    pub iterations_run: usize,
    pub trace: Option<Vec<TracePoint>>,
    /// Entries where the two Cauchy root policies picked different roots,
    /// summed over all shrinkage steps.
    pub policy_disagreements: u64,
}

fn residual(x: ArrayView1<f64>, dict: &Dictionary, y: ArrayView1<f64>) -> Result<Array1<f64>, SolverError> {
    if y.len() != dict.signal_len() {
        return Err(DictionaryError::DimensionMismatch { expected: dict.signal_len(), actual: y.len() }.into());
    }
    Ok(dict.apply(x)? - &y)
}

/// `x - 2 eta A^T (A x - y)`: a gradient step on `||y - A x||^2`.
pub fn gradient_step(
    x: ArrayView1<f64>,
    dict: &Dictionary,
    y: ArrayView1<f64>,
    eta: f64,
) -> Result<Array1<f64>, SolverError> {
    let r = residual(x, dict, y)?;
    let grad = dict.apply_adjoint(r.view())?;
    Ok(&x - &(grad * (2.0 * eta)))
}

/// `||y - A x||^2 + weight * phi(x)` with the weights of [`Penalty::weight`]:
/// `tau^2 ||x||_0`, `2 tau ||x||_1`, or `lambda * sum -ln p(x_i)` for Cauchy.
pub fn cost(
    x: ArrayView1<f64>,
    y: ArrayView1<f64>,
    dict: &Dictionary,
    penalty: &Penalty,
) -> Result<f64, SolverError> {
    let r = residual(x, dict, y)?;
    let phi = penalty.phi(x)?;
    Ok(r.dot(&r) + penalty.weight() * phi)
}

/// The function the configured iteration descends:
/// `||y - A x||^2 + multiplier * weight * phi(x)`, see
/// [`SolverConfig::penalty_multiplier`].
pub fn objective(
    x: ArrayView1<f64>,
    y: ArrayView1<f64>,
    dict: &Dictionary,
    penalty: &Penalty,
    config: &SolverConfig,
) -> Result<f64, SolverError> {
    let r = residual(x, dict, y)?;
    let phi = penalty.phi(x)?;
    Ok(r.dot(&r) + config.penalty_multiplier() * penalty.weight() * phi)
}

fn trace_point(
    x: ArrayView1<f64>,
    y: ArrayView1<f64>,
    dict: &Dictionary,
    penalty: &Penalty,
    config: &SolverConfig,
) -> Result<TracePoint, SolverError> {
    let cost = objective(x, y, dict, penalty, config)?;
    let psnr_db = match config.trace_peak {
        Some(peak) => {
            let r = residual(x, dict, y)?;
            Some(psnr_from_mse(r.dot(&r) / r.len() as f64, peak))
        }
        None => None,
    };
    Ok(TracePoint { cost, percent_nonzero: percent_nonzero(x.iter(), config.zero_epsilon), psnr_db })
}

/// Sparse-codes one signal: `x = 0`, then `x <- shrink(x - 2 eta A^T (A x - y))`
/// until the iteration budget is spent or the relative decrease of
/// [`objective`] drops below `cost_tolerance`.
pub fn sparse_code(
    y: ArrayView1<f64>,
    dict: &Dictionary,
    penalty: &Penalty,
    config: &SolverConfig,
) -> Result<CodingResult, SolverError> {
    config.validate()?;
    let shrink = config.shrink_penalty(penalty)?;
    let mut x = Array1::zeros(dict.atom_count());
    let needs_cost = config.record_trace || config.cost_tolerance > 0.0;
    let mut previous = if needs_cost { Some(objective(x.view(), y, dict, penalty, config)?) } else { None };
    // Validates the signal length even when no cost is tracked.
    residual(x.view(), dict, y)?;

    let mut trace = config.record_trace.then(Vec::new);
    let mut disagreements = 0;
    let mut iterations_run = 0;
    for iteration in 1..=config.max_iterations {
        let mut next = gradient_step(x.view(), dict, y, config.step_size)?;
        if next.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::Diverged { iteration });
        }
        disagreements += shrink.shrink_slice_unchecked(next.as_slice_mut().expect("contiguous"));
        x = next;
        iterations_run = iteration;

        if needs_cost {
            let point = trace_point(x.view(), y, dict, penalty, config)?;
            if let Some(t) = trace.as_mut() {
                t.push(point);
            }
            let prev = previous.replace(point.cost).expect("initialized when cost is tracked");
            if config.cost_tolerance > 0.0
                && (prev - point.cost).abs() / point.cost.abs().max(1.0) < config.cost_tolerance
            {
                break;
            }
        }
    }
    Ok(CodingResult { coefficients: x, iterations_run, trace, policy_disagreements: disagreements })
}

/// Coefficients for many signals coded with a fixed iteration budget.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchCoding {
    /// `N x T`, one column per signal.
    pub coefficients: Array2<f64>,
    pub iterations_run: usize,
    pub policy_disagreements: u64,
}

/// Codes every column of `signals` (`M x T`) with the same iteration as
/// [`sparse_code`], using matrix products over the whole batch. Runs exactly
/// `max_iterations` iterations; `cost_tolerance` and tracing are ignored.
pub fn sparse_code_batch(
    signals: ArrayView2<f64>,
    dict: &Dictionary,
    penalty: &Penalty,
    config: &SolverConfig,
) -> Result<BatchCoding, SolverError> {
    config.validate()?;
    let shrink = config.shrink_penalty(penalty)?;
    let (m, t) = signals.dim();
    if m != dict.signal_len() {
        return Err(DictionaryError::DimensionMismatch { expected: dict.signal_len(), actual: m }.into());
    }
    let a = dict.atoms();
    let mut x = Array2::<f64>::zeros((dict.atom_count(), t));
    let mut r = Array2::<f64>::zeros((m, t));
    let mut disagreements = 0;
    for iteration in 1..=config.max_iterations {
        r.assign(&signals);
        general_mat_mul(1.0, &a, &x, -1.0, &mut r);
        general_mat_mul(-2.0 * config.step_size, &a.t(), &r, 1.0, &mut x);
        let values = x.as_slice_mut().expect("standard layout");
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::Diverged { iteration });
        }
        disagreements += shrink.shrink_slice_unchecked(values);
    }
    Ok(BatchCoding { coefficients: x, iterations_run: config.max_iterations, policy_disagreements: disagreements })
}
