//! Overlapping patch extraction and reassembly by averaging.

use ndarray::{s, Array2, ArrayView2, Axis};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PatchError {
    #[error("patch edge {patch_edge} does not fit a {height}x{width} image")]
    PatchTooLarge { patch_edge: usize, height: usize, width: usize },
    #[error("patch edge and stride must be positive")]
    ZeroSize,
    #[error("stride {stride} exceeds patch edge {patch_edge}, leaving pixels uncovered")]
    StrideTooLarge { stride: usize, patch_edge: usize },
    #[error("expected reconstructed patches of shape {expected:?}, got {actual:?}")]
    ShapeMismatch { expected: (usize, usize), actual: (usize, usize) },
    #[error("image pixels must be finite")]
    NonFinitePixel,
    #[error("image peak must be positive and finite, got {0}")]
    InvalidPeak(f64),
}

/// Grayscale raster with the intensity ceiling used for PSNR.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pixels: Array2<f64>,
    peak: f64,
}

impl Image {
    pub fn new(pixels: Array2<f64>, peak: f64) -> Result<Self, PatchError> {
        if !(peak.is_finite() && peak > 0.0) {
            return Err(PatchError::InvalidPeak(peak));
        }
        if pixels.iter().any(|v| !v.is_finite()) {
            return Err(PatchError::NonFinitePixel);
        }
        Ok(Self { pixels, peak })
    }

    /// Image with intensities in `[0, 1]` and peak `1`.
    pub fn normalized(pixels: Array2<f64>) -> Result<Self, PatchError> {
        Self::new(pixels, 1.0)
    }

    pub fn pixels(&self) -> ArrayView2<'_, f64> {
        self.pixels.view()
    }

    pub fn into_pixels(self) -> Array2<f64> {
        self.pixels
    }

    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn height(&self) -> usize {
        self.pixels.nrows()
    }

    pub fn width(&self) -> usize {
        self.pixels.ncols()
    }
}

/// Overlapping patches of an image, one column per patch.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchSet {
    patches: Array2<f64>,
    origins: Vec<(usize, usize)>,
    source_dims: (usize, usize),
    patch_edge: usize,
    stride: usize,
    peak: f64,
}

impl PatchSet {
    /// `patch_edge^2 x T` matrix; each column is a row-major flattened patch.
    pub fn patches(&self) -> ArrayView2<'_, f64> {
        self.patches.view()
    }

    /// Top-left `(row, col)` of each patch, in column order.
    pub fn origins(&self) -> &[(usize, usize)] {
        &self.origins
    }

    pub fn source_dims(&self) -> (usize, usize) {
        self.source_dims
    }

    pub fn patch_edge(&self) -> usize {
        self.patch_edge
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn len(&self) -> usize {
        self.origins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origins.is_empty()
    }

    /// Number of patches covering each pixel.
    pub fn coverage_counts(&self) -> Array2<u32> {
        let (h, w) = self.source_dims;
        let p = self.patch_edge;
        let mut counts = Array2::zeros((h, w));
        for &(r, c) in &self.origins {
            counts.slice_mut(s![r..r + p, c..c + p]).mapv_inplace(|n| n + 1);
        }
        counts
    }
}

/// Window anchors along one axis; the last anchor is clamped to `len - patch`.
fn anchors(len: usize, patch: usize, stride: usize) -> Vec<usize> {
    let last = len - patch;
    let mut out: Vec<usize> = (0..=last).step_by(stride).collect();
    if out.last() != Some(&last) {
        out.push(last);
    }
    out
}

/// Sliding-window patch extraction in row-major anchor order.
pub fn extract_patches(image: &Image, patch_edge: usize, stride: usize) -> Result<PatchSet, PatchError> {
    if patch_edge == 0 || stride == 0 {
        return Err(PatchError::ZeroSize);
    }
    if stride > patch_edge {
        return Err(PatchError::StrideTooLarge { stride, patch_edge });
    }
    let (h, w) = (image.height(), image.width());
    if patch_edge > h || patch_edge > w {
        return Err(PatchError::PatchTooLarge { patch_edge, height: h, width: w });
    }
    let rows = anchors(h, patch_edge, stride);
    let cols = anchors(w, patch_edge, stride);
    let origins: Vec<(usize, usize)> =
        rows.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c))).collect();
    let m = patch_edge * patch_edge;
    let mut patches = Array2::zeros((m, origins.len()));
    for (mut col, &(r, c)) in patches.axis_iter_mut(Axis(1)).zip(&origins) {
        let window = image.pixels.slice(s![r..r + patch_edge, c..c + patch_edge]);
        col.iter_mut().zip(window.iter()).for_each(|(dst, &v)| *dst = v);
    }
    Ok(PatchSet {
        patches,
        origins,
        source_dims: (h, w),
        patch_edge,
        stride,
        peak: image.peak,
    })
}

/// Reassembles an image from per-patch reconstructions; each pixel becomes the
/// mean of every patch value covering it, updated incrementally in patch order
/// so that identical contributions reproduce their value bit for bit.
pub fn reconstruct_from_patches(
    patchset: &PatchSet,
    reconstructed: ArrayView2<f64>,
) -> Result<Image, PatchError> {
    let expected = patchset.patches.dim();
    if reconstructed.dim() != expected {
        return Err(PatchError::ShapeMismatch { expected, actual: reconstructed.dim() });
    }
    let (h, w) = patchset.source_dims;
    let p = patchset.patch_edge;
    let mut mean = Array2::<f64>::zeros((h, w));
    let mut count = Array2::<u32>::zeros((h, w));
    for (col, &(r, c)) in reconstructed.axis_iter(Axis(1)).zip(&patchset.origins) {
        let mut window = mean.slice_mut(s![r..r + p, c..c + p]);
        let mut seen = count.slice_mut(s![r..r + p, c..c + p]);
        for ((m, n), &v) in window.iter_mut().zip(seen.iter_mut()).zip(col.iter()) {
            *n += 1;
            *m += (v - *m) / *n as f64;
        }
    }
    Image::new(mean, patchset.peak)
}
