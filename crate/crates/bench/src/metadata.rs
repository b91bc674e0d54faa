//! `metadata.json` and the echoed configuration.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::runner::SweepResult;
use crate::BenchError;

pub const METADATA_FILE: &str = "metadata.json";
pub const RESOLVED_CONFIG_FILE: &str = "resolved_config.json";

#[derive(Debug, Clone, Serialize)]
pub struct Conventions {
    pub gradient_step: &'static str,
    pub gradient_factor: f64,
    pub shrink_scaling: ict_core::solver::ShrinkScaling,
    pub penalty_mapping: &'static str,
    pub cauchy_root_policy: ict_core::prox::RootPolicy,
    pub epsilon_zero: f64,
    pub peak: f64,
    pub pixel_range: &'static str,
    pub patch_mean_removal: bool,
    pub patch_edge: usize,
    pub stride: usize,
    pub edge_policy: &'static str,
    pub reassembly: &'static str,
    pub dictionary: String,
    pub psnr_cap_db: f64,
    pub chunk_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Software {
    pub name: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub cells: usize,
    pub failed_cells: usize,
    pub policy_disagreements: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub software: Software,
    pub conventions: Conventions,
    pub summary: Summary,
    pub config: ExperimentConfig,
}

impl Metadata {
    pub fn new(config: &ExperimentConfig, result: &SweepResult) -> Self {
        Metadata {
            software: Software {
                name: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                core_version: ict_core::VERSION,
            },
            conventions: Conventions {
                gradient_step: "x - 2 eta A^T (A x - y)",
                gradient_factor: 2.0,
                shrink_scaling: config.shrink_scaling,
                penalty_mapping: "IHT: hard(tau = lambda); IST: soft(tau = lambda / 2); ICT: Cauchy(lambda, gamma)",
                cauchy_root_policy: config.root_policy,
                epsilon_zero: config.epsilon_zero,
                peak: 1.0,
                pixel_range: "[0, 1]",
                patch_mean_removal: false,
                patch_edge: config.patch_edge,
                stride: config.stride,
                edge_policy: "final anchor clamped to the image border",
                reassembly: "per-pixel mean over covering patches, patch order",
                dictionary: format!(
                    "overcomplete DCT {}x{}",
                    config.patch_edge * config.patch_edge,
                    config.atoms_per_axis * config.atoms_per_axis
                ),
                psnr_cap_db: ict_core::metrics::PSNR_CAP_DB,
                chunk_size: config.chunk_size,
            },
            summary: Summary {
                cells: result.records.len(),
                failed_cells: result.records.iter().filter(|r| r.outcome.is_err()).count(),
                policy_disagreements: result.records.iter().map(|r| r.policy_disagreements).sum(),
            },
            config: config.clone(),
        }
    }
}

/// Writes `metadata.json` and `resolved_config.json`; neither carries a timestamp.
pub fn write_metadata(
    config: &ExperimentConfig,
    result: &SweepResult,
    output_dir: &Path,
) -> Result<Vec<PathBuf>, BenchError> {
    fs::create_dir_all(output_dir).map_err(|e| BenchError::io(output_dir, e))?;
    let meta = output_dir.join(METADATA_FILE);
    let text = serde_json::to_string_pretty(&Metadata::new(config, result)).expect("metadata serializes");
    fs::write(&meta, text + "\n").map_err(|e| BenchError::io(&meta, e))?;
    let echoed = output_dir.join(RESOLVED_CONFIG_FILE);
    fs::write(&echoed, config.to_pretty_json() + "\n").map_err(|e| BenchError::io(&echoed, e))?;
    Ok(vec![meta, echoed])
}
