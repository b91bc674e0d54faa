//! Reconstruction quality (MSE, PSNR) and sparsity measurements.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::patches::Image;

/// PSNR reported for a perfect reconstruction.
pub const PSNR_CAP_DB: f64 = 999.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("image dimensions differ: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("images have different peak values: {0} vs {1}")]
    PeakMismatch(f64, f64),
}

/// One cell of a sweep: quality and sparsity of a coding run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub dataset: String,
    pub algorithm: String,
    pub lambda: f64,
    pub iterations: usize,
    pub psnr_db: f64,
    pub mse: f64,
    pub percent_nonzero: f64,
}

fn dims(img: &Image) -> (usize, usize) {
    (img.height(), img.width())
}

/// Mean squared pixel difference.
pub fn mse(reference: &Image, estimate: &Image) -> Result<f64, MetricsError> {
    if dims(reference) != dims(estimate) {
        return Err(MetricsError::DimensionMismatch(dims(reference), dims(estimate)));
    }
    let a = reference.pixels();
    let b = estimate.pixels();
    let sum: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok(sum / a.len() as f64)
}

/// `10 log10(peak^2 / mse)`, capped at [`PSNR_CAP_DB`] when `mse == 0`.
pub fn psnr_from_mse(mse: f64, peak: f64) -> f64 {
    if mse == 0.0 {
        return PSNR_CAP_DB;
    }
    (10.0 * (peak * peak / mse).log10()).min(PSNR_CAP_DB)
}

/// Peak signal-to-noise ratio in decibels. Both images must share a peak.
pub fn psnr(reference: &Image, estimate: &Image) -> Result<f64, MetricsError> {
    if reference.peak() != estimate.peak() {
        return Err(MetricsError::PeakMismatch(reference.peak(), estimate.peak()));
    }
    Ok(psnr_from_mse(mse(reference, estimate)?, reference.peak()))
}

/// Percentage of entries with magnitude above `epsilon`. Empty input gives 0.
pub fn percent_nonzero<'a, I>(coeffs: I, epsilon: f64) -> f64
where
    I: IntoIterator<Item = &'a f64>,
{
    let (mut total, mut nonzero) = (0usize, 0usize);
    for v in coeffs {
        total += 1;
        nonzero += (v.abs() > epsilon) as usize;
    }
    if total == 0 {
        0.0
    } else {
        100.0 * nonzero as f64 / total as f64
    }
}

/// Count of entries with magnitude above `epsilon`.
pub fn count_nonzero<'a, I>(coeffs: I, epsilon: f64) -> usize
where
    I: IntoIterator<Item = &'a f64>,
{
    coeffs.into_iter().filter(|v| v.abs() > epsilon).count()
}
