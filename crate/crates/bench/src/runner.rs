//! Lambda sweeps: every (dataset, algorithm, lambda) cell codes all patches of
//! every dataset item, reassembles the images and averages the metrics.

use ict_core::dictionary::{build_overcomplete_dct, Dictionary};
use ict_core::metrics::{mse, percent_nonzero, psnr_from_mse, MetricsRecord};
use ict_core::patches::{extract_patches, reconstruct_from_patches, Image, PatchSet};
use ict_core::solver::{sparse_code_batch, SolverConfig, SolverError};
use ndarray::{s, Array2};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Algorithm, ExperimentConfig};
use crate::BenchError;

/// Averaged quality of one successful cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellMetrics {
    pub psnr_db: f64,
    pub mse: f64,
    pub percent_nonzero: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRecord {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub lambda: f64,
    pub iterations: usize,
    /// `Err` holds the reason the cell was abandoned.
    pub outcome: Result<CellMetrics, String>,
    /// Shrinkage calls where the two Cauchy root rules would pick different roots.
    pub policy_disagreements: u64,
}

impl CellRecord {
    pub fn metrics(&self) -> Option<&CellMetrics> {
        self.outcome.as_ref().ok()
    }

    pub fn to_metrics_record(&self) -> Option<MetricsRecord> {
        self.metrics().map(|m| MetricsRecord {
            dataset: self.dataset.clone(),
            algorithm: self.algorithm.as_str().to_string(),
            lambda: self.lambda,
            iterations: self.iterations,
            psnr_db: m.psnr_db,
            mse: m.mse,
            percent_nonzero: m.percent_nonzero,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    /// One record per dataset x algorithm x lambda, in configuration order.
    pub records: Vec<CellRecord>,
}

impl SweepResult {
    pub fn new(records: Vec<CellRecord>) -> Self {
        SweepResult { records }
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Dataset labels in first-seen order.
    pub fn datasets(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.records {
            if !out.contains(&r.dataset.as_str()) {
                out.push(&r.dataset);
            }
        }
        out
    }

    /// Algorithms present for `dataset`, in first-seen order.
    pub fn algorithms(&self, dataset: &str) -> Vec<Algorithm> {
        let mut out = Vec::new();
        for r in self.records.iter().filter(|r| r.dataset == dataset) {
            if !out.contains(&r.algorithm) {
                out.push(r.algorithm);
            }
        }
        out
    }

    pub fn group<'a>(&'a self, dataset: &'a str, algorithm: Algorithm) -> impl Iterator<Item = &'a CellRecord> + 'a {
        self.records.iter().filter(move |r| r.dataset == dataset && r.algorithm == algorithm)
    }

    fn select(&self, key: impl Fn(&CellMetrics) -> f64, want_max: bool) -> Vec<&CellRecord> {
        let mut out = Vec::new();
        for ds in self.datasets() {
            for alg in self.algorithms(ds) {
                let ok: Vec<&CellRecord> = self.group(ds, alg).filter(|r| r.metrics().is_some()).collect();
                let values = ok.iter().map(|r| key(r.metrics().expect("filtered")));
                let target = if want_max {
                    values.fold(f64::NEG_INFINITY, f64::max)
                } else {
                    values.fold(f64::INFINITY, f64::min)
                };
                out.extend(ok.into_iter().filter(|r| key(r.metrics().expect("filtered")) == target));
            }
        }
        out
    }

    /// Every successful cell attaining the highest PSNR of its dataset and algorithm.
    pub fn best_psnr(&self) -> Vec<&CellRecord> {
        self.select(|m| m.psnr_db, true)
    }

    /// Every successful cell attaining the lowest non-zero percentage of its
    /// dataset and algorithm.
    pub fn sparsest(&self) -> Vec<&CellRecord> {
        self.select(|m| m.percent_nonzero, false)
    }
}

/// Patch sets of one dataset, ready for coding.
struct PreparedDataset {
    label: String,
    items: Vec<(Image, PatchSet)>,
}

fn prepare(config: &ExperimentConfig) -> Result<Vec<PreparedDataset>, BenchError> {
    config
        .datasets
        .iter()
        .map(|spec| {
            let items = spec
                .load()?
                .into_iter()
                .map(|img| {
                    let ps = extract_patches(&img, config.patch_edge, config.stride)?;
                    Ok((img, ps))
                })
                .collect::<Result<Vec<_>, BenchError>>()?;
            if items.is_empty() {
                return Err(BenchError::EmptyDataset(spec.label()));
            }
            Ok(PreparedDataset { label: spec.label(), items })
        })
        .collect()
}

struct ItemOutcome {
    mse: f64,
    psnr_db: f64,
    percent_nonzero: f64,
    disagreements: u64,
}

/// Codes one image's patches in fixed-size chunks and measures the reconstruction.
fn code_item(
    image: &Image,
    patches: &PatchSet,
    dict: &Dictionary,
    penalty: &ict_core::prox::Penalty,
    solver: &SolverConfig,
    chunk_size: usize,
    epsilon_zero: f64,
) -> Result<ItemOutcome, SolverError> {
    let signals = patches.patches();
    let t = signals.ncols();
    let starts: Vec<usize> = (0..t).step_by(chunk_size).collect();
    let chunks: Vec<Result<_, SolverError>> = starts
        .par_iter()
        .map(|&start| {
            let end = (start + chunk_size).min(t);
            sparse_code_batch(signals.slice(s![.., start..end]), dict, penalty, solver)
        })
        .collect();

    let mut coeffs = Array2::<f64>::zeros((dict.atom_count(), t));
    let mut disagreements = 0;
    for (&start, chunk) in starts.iter().zip(chunks) {
        let chunk = chunk?;
        let width = chunk.coefficients.ncols();
        coeffs.slice_mut(s![.., start..start + width]).assign(&chunk.coefficients);
        disagreements += chunk.policy_disagreements;
    }
    let recon_patches = dict.atoms().dot(&coeffs);
    let recon = reconstruct_from_patches(patches, recon_patches.view()).expect("shapes agree by construction");
    let err = mse(image, &recon).expect("same dimensions");
    Ok(ItemOutcome {
        mse: err,
        psnr_db: psnr_from_mse(err, image.peak()),
        percent_nonzero: percent_nonzero(coeffs.iter(), epsilon_zero),
        disagreements,
    })
}

fn run_cell(
    data: &PreparedDataset,
    algorithm: Algorithm,
    lambda: f64,
    dict: &Dictionary,
    config: &ExperimentConfig,
) -> CellRecord {
    let solver = config.solver_config();
    let mut record = CellRecord {
        dataset: data.label.clone(),
        algorithm,
        lambda,
        iterations: config.iterations,
        outcome: Err(String::new()),
        policy_disagreements: 0,
    };
    let penalty = match algorithm.penalty(lambda, config.gamma, config.root_policy) {
        Ok(p) => p,
        Err(e) => {
            record.outcome = Err(e.to_string());
            return record;
        }
    };
    let outcomes: Vec<Result<ItemOutcome, SolverError>> = data
        .items
        .par_iter()
        .map(|(img, ps)| code_item(img, ps, dict, &penalty, &solver, config.chunk_size, config.epsilon_zero))
        .collect();
    let n = outcomes.len() as f64;
    let (mut m, mut p, mut z) = (0.0, 0.0, 0.0);
    for o in outcomes {
        match o {
            Ok(o) => {
                m += o.mse;
                p += o.psnr_db;
                z += o.percent_nonzero;
                record.policy_disagreements += o.disagreements;
            }
            Err(e) => {
                record.outcome = Err(e.to_string());
                return record;
            }
        }
    }
    record.outcome = Ok(CellMetrics { psnr_db: p / n, mse: m / n, percent_nonzero: z / n });
    record
}

/// Runs the full sweep on a pool of `threads` workers (all cores when `None`).
///
/// Work is split into fixed patch chunks and merged in patch order, so the
/// result is identical for any thread count.
pub fn run_experiment(config: &ExperimentConfig, threads: Option<usize>) -> Result<SweepResult, BenchError> {
    config.validate()?;
    let dict = build_overcomplete_dct(config.patch_edge, config.atoms_per_axis)?;
    let data = prepare(config)?;
    let cells: Vec<(usize, Algorithm, f64)> = (0..data.len())
        .flat_map(|d| {
            config.algorithms.iter().flat_map(move |&a| config.lambda_grid.iter().map(move |&l| (d, a, l)))
        })
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| BenchError::ThreadPool(e.to_string()))?;
    let records = pool.install(|| {
        cells.par_iter().map(|&(d, a, l)| run_cell(&data[d], a, l, &dict, config)).collect::<Vec<_>>()
    });
    Ok(SweepResult::new(records))
}

/// Codes and reassembles a single image with one sweep cell's settings.
pub fn reconstruct_image(
    image: &Image,
    config: &ExperimentConfig,
    algorithm: Algorithm,
    lambda: f64,
) -> Result<Image, BenchError> {
    config.validate()?;
    let dict = build_overcomplete_dct(config.patch_edge, config.atoms_per_axis)?;
    let ps = extract_patches(image, config.patch_edge, config.stride)?;
    let penalty = algorithm.penalty(lambda, config.gamma, config.root_policy)?;
    let coded = sparse_code_batch(ps.patches(), &dict, &penalty, &config.solver_config())?;
    let recon_patches = dict.atoms().dot(&coded.coefficients);
    Ok(reconstruct_from_patches(&ps, recon_patches.view())?)
}
