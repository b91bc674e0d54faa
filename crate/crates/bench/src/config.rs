//! Experiment configuration: a single JSON document with defaults for every field.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use ict_core::data_io::DatasetSpec;
use ict_core::prox::{Penalty, ProxError, RootPolicy};
use ict_core::solver::{ShrinkScaling, SolverConfig};
use serde::{Deserialize, Serialize};

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "IHT", alias = "iht")]
    Iht,
    #[serde(rename = "IST", alias = "ist")]
    Ist,
    #[serde(rename = "ICT", alias = "ict")]
    Ict,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Iht, Algorithm::Ist, Algorithm::Ict];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Iht => "IHT",
            Algorithm::Ist => "IST",
            Algorithm::Ict => "ICT",
        }
    }

    /// Penalty for one sweep value: hard threshold at `lambda`, soft threshold
    /// at `lambda / 2` (the proximal map of `lambda |z|`), or the Cauchy
    /// penalty with weight `lambda`.
    pub fn penalty(self, lambda: f64, gamma: f64, policy: RootPolicy) -> Result<Penalty, ProxError> {
        match self {
            Algorithm::Iht => Penalty::hard(lambda),
            Algorithm::Ist => Penalty::soft(lambda / 2.0),
            Algorithm::Ict => Penalty::cauchy(lambda, gamma, policy),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "IHT" => Ok(Algorithm::Iht),
            "IST" => Ok(Algorithm::Ist),
            "ICT" => Ok(Algorithm::Ict),
            other => Err(format!("unknown algorithm {other:?} (expected IHT, IST or ICT)")),
        }
    }
}

/// `count` values spaced evenly in log10 from `10^lo` to `10^hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![10f64.powf(lo)],
        _ => (0..count).map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / (count - 1) as f64)).collect(),
    }
}

/// Sixteen log-spaced values from 1e-4 to 10.
pub fn default_lambda_grid() -> Vec<f64> {
    log_grid(-4.0, 1.0, 16)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub datasets: Vec<DatasetSpec>,
    pub algorithms: Vec<Algorithm>,
    pub lambda_grid: Vec<f64>,
    /// Cauchy scale for ICT.
    pub gamma: f64,
    pub eta: f64,
    pub iterations: usize,
    pub stride: usize,
    pub patch_edge: usize,
    pub atoms_per_axis: usize,
    pub epsilon_zero: f64,
    pub root_policy: RootPolicy,
    pub shrink_scaling: ShrinkScaling,
    pub output_dir: PathBuf,
    /// Patches per work unit. Results do not depend on the thread count, but
    /// they can differ in the last bits between chunk sizes.
    pub chunk_size: usize,
    pub plots: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            datasets: vec![DatasetSpec::shepp_logan(64)],
            algorithms: Algorithm::ALL.to_vec(),
            lambda_grid: default_lambda_grid(),
            gamma: 0.1,
            eta: 0.005,
            iterations: 200,
            stride: 1,
            patch_edge: 8,
            atoms_per_axis: 12,
            epsilon_zero: 1e-6,
            root_policy: RootPolicy::ObjectiveMin,
            shrink_scaling: ShrinkScaling::Literal,
            output_dir: PathBuf::from("bench_out"),
            chunk_size: 256,
            plots: true,
        }
    }
}

fn invalid(msg: impl Into<String>) -> BenchError {
    BenchError::InvalidConfig(msg.into())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, BenchError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.datasets.is_empty() {
            return Err(invalid("datasets must not be empty"));
        }
        if self.algorithms.is_empty() {
            return Err(invalid("algorithms must not be empty"));
        }
        if self.lambda_grid.is_empty() {
            return Err(invalid("lambda_grid must not be empty"));
        }
        if let Some(l) = self.lambda_grid.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(invalid(format!("lambda_grid values must be positive and finite, got {l}")));
        }
        let mut algos = self.algorithms.clone();
        algos.sort();
        algos.dedup();
        if algos.len() != self.algorithms.len() {
            return Err(invalid("algorithms contains duplicates"));
        }
        for (name, v) in [("gamma", self.gamma), ("eta", self.eta)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if !(self.epsilon_zero.is_finite() && self.epsilon_zero >= 0.0) {
            return Err(invalid(format!("epsilon_zero must be non-negative, got {}", self.epsilon_zero)));
        }
        for (name, v) in [
            ("iterations", self.iterations),
            ("stride", self.stride),
            ("patch_edge", self.patch_edge),
            ("chunk_size", self.chunk_size),
        ] {
            if v == 0 {
                return Err(invalid(format!("{name} must be at least 1")));
            }
        }
        if self.stride > self.patch_edge {
            return Err(invalid(format!("stride {} exceeds patch_edge {}", self.stride, self.patch_edge)));
        }
        if self.atoms_per_axis < self.patch_edge {
            return Err(invalid("atoms_per_axis must be at least patch_edge"));
        }
        let mut labels: Vec<String> = self.datasets.iter().map(|d| d.label()).collect();
        labels.sort();
        labels.dedup();
        if labels.len() != self.datasets.len() {
            return Err(invalid("dataset labels must be unique; set `name` to disambiguate"));
        }
        for d in &self.datasets {
            d.validate()?;
        }
        Ok(())
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            step_size: self.eta,
            max_iterations: self.iterations,
            shrink_scaling: self.shrink_scaling,
            zero_epsilon: self.epsilon_zero,
            ..SolverConfig::default()
        }
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
