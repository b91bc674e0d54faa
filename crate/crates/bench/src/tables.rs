//! CSV tables: the full sweep, best-PSNR and sparsest selections, and per-dataset curves.

use std::fs;
use std::path::{Path, PathBuf};

use crate::runner::{CellRecord, SweepResult};
use crate::BenchError;

pub const BEST_PSNR_FILE: &str = "best_psnr.csv";
pub const SPARSEST_FILE: &str = "sparsest.csv";
pub const SWEEP_FILE: &str = "sweep_full.csv";
pub const CURVES_DIR: &str = "curves";

const SELECTION_HEADER: [&str; 6] = ["dataset", "algorithm", "lambda", "psnr_db", "percent_nonzero", "iterations"];
const SWEEP_HEADER: [&str; 10] = [
    "dataset",
    "algorithm",
    "lambda",
    "psnr_db",
    "mse",
    "percent_nonzero",
    "iterations",
    "status",
    "policy_disagreements",
    "error",
];

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// File-name-safe form of a dataset label.
pub fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' { c } else { '_' })
        .collect()
}

fn writer(path: &Path) -> Result<csv::Writer<fs::File>, BenchError> {
    let file = fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(file))
}

fn write_selection(path: &Path, rows: &[&CellRecord]) -> Result<(), BenchError> {
    let mut w = writer(path)?;
    w.write_record(SELECTION_HEADER)?;
    for r in rows {
        let m = r.metrics().expect("selections only hold successful cells");
        w.write_record([
            r.dataset.clone(),
            r.algorithm.to_string(),
            fmt_f64(r.lambda),
            fmt_f64(m.psnr_db),
            fmt_f64(m.percent_nonzero),
            r.iterations.to_string(),
        ])?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))
}

fn write_sweep(path: &Path, result: &SweepResult) -> Result<(), BenchError> {
    let mut w = writer(path)?;
    w.write_record(SWEEP_HEADER)?;
    for r in &result.records {
        let (psnr, mse, nz, status, error) = match &r.outcome {
            Ok(m) => (fmt_f64(m.psnr_db), fmt_f64(m.mse), fmt_f64(m.percent_nonzero), "ok", String::new()),
            Err(e) => (String::new(), String::new(), String::new(), "failed", e.clone()),
        };
        w.write_record([
            r.dataset.clone(),
            r.algorithm.to_string(),
            fmt_f64(r.lambda),
            psnr,
            mse,
            nz,
            r.iterations.to_string(),
            status.to_string(),
            r.policy_disagreements.to_string(),
            error,
        ])?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))
}

/// Successful cells of one dataset, grouped by algorithm and ordered by
/// increasing non-zero percentage (then lambda).
pub fn curve_rows<'a>(result: &'a SweepResult, dataset: &str) -> Vec<&'a CellRecord> {
    let mut rows = Vec::new();
    for alg in result.algorithms(dataset) {
        let mut group: Vec<&CellRecord> = result
            .records
            .iter()
            .filter(|r| r.dataset == dataset && r.algorithm == alg && r.metrics().is_some())
            .collect();
        group.sort_by(|a, b| {
            let (ma, mb) = (a.metrics().expect("ok"), b.metrics().expect("ok"));
            ma.percent_nonzero.total_cmp(&mb.percent_nonzero).then(a.lambda.total_cmp(&b.lambda))
        });
        rows.extend(group);
    }
    rows
}

fn write_curve(path: &Path, rows: &[&CellRecord]) -> Result<(), BenchError> {
    let mut w = writer(path)?;
    w.write_record(["algorithm", "percent_nonzero", "psnr_db", "lambda"])?;
    for r in rows {
        let m = r.metrics().expect("ok");
        w.write_record([r.algorithm.to_string(), fmt_f64(m.percent_nonzero), fmt_f64(m.psnr_db), fmt_f64(r.lambda)])?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))
}

/// Writes every table under `output_dir` and returns the paths written.
pub fn emit_tables(result: &SweepResult, output_dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    if result.is_empty() {
        return Err(BenchError::EmptyResult);
    }
    let curves = output_dir.join(CURVES_DIR);
    fs::create_dir_all(&curves).map_err(|e| BenchError::io(&curves, e))?;
    let mut written = Vec::new();

    let path = output_dir.join(SWEEP_FILE);
    write_sweep(&path, result)?;
    written.push(path);
    let path = output_dir.join(BEST_PSNR_FILE);
    write_selection(&path, &result.best_psnr())?;
    written.push(path);
    let path = output_dir.join(SPARSEST_FILE);
    write_selection(&path, &result.sparsest())?;
    written.push(path);
    for ds in result.datasets() {
        let path = curves.join(format!("{}.csv", file_stem(ds)));
        write_curve(&path, &curve_rows(result, ds))?;
        written.push(path);
    }
    Ok(written)
}
