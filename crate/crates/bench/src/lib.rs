//! Benchmark runner for iterative hard, soft and Cauchy thresholding: lambda
//! sweeps over image datasets, CSV tables, SVG charts and run metadata.

pub mod analysis;
pub mod config;
pub mod metadata;
pub mod plots;
pub mod runner;
pub mod tables;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::{Algorithm, ExperimentConfig};
pub use runner::{run_experiment, CellMetrics, CellRecord, SweepResult};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Data(#[from] ict_core::data_io::DataError),
    #[error(transparent)]
    Dictionary(#[from] ict_core::dictionary::DictionaryError),
    #[error(transparent)]
    Patch(#[from] ict_core::patches::PatchError),
    #[error(transparent)]
    Prox(#[from] ict_core::prox::ProxError),
    #[error(transparent)]
    Solver(#[from] ict_core::solver::SolverError),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("dataset {0} has no items")]
    EmptyDataset(String),
    #[error("sweep result is empty")]
    EmptyResult,
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

impl BenchError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        BenchError::Io { path: path.to_path_buf(), source }
    }
}

/// Everything a `run` produces.
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub result: SweepResult,
    pub files: Vec<PathBuf>,
    pub plot_notice: Option<String>,
}

/// Runs the sweep and writes tables, metadata and (when enabled) plots under
/// `config.output_dir`.
pub fn run_and_emit(config: &ExperimentConfig, threads: Option<usize>) -> Result<RunArtifacts, BenchError> {
    let result = run_experiment(config, threads)?;
    let out = &config.output_dir;
    let mut files = tables::emit_tables(&result, out)?;
    files.extend(metadata::write_metadata(config, &result, out)?);
    let mut plot_notice = None;
    if config.plots {
        match plots::emit_plots(&result, out, 1.0, 0.001, ict_core::prox::RootPolicy::PaperLargestAbs)? {
            plots::PlotOutcome::Written(p) => files.extend(p),
            plots::PlotOutcome::NoOp(msg) => plot_notice = Some(msg),
        }
    }
    Ok(RunArtifacts { result, files, plot_notice })
}
