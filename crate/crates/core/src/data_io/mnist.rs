//! MNIST IDX files: big-endian headers followed by unsigned-byte payloads.

use std::fs;
use std::path::Path;

use ndarray::Array2;

use super::{sample_indices, DataError};
use crate::patches::Image;

pub const IMAGES_MAGIC: u32 = 0x0000_0803;
pub const LABELS_MAGIC: u32 = 0x0000_0801;

fn be_u32(bytes: &[u8], offset: usize) -> Result<u32, DataError> {
    bytes
        .get(offset..offset + 4)
        .map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or(DataError::Truncated { expected: offset + 4, actual: bytes.len() })
}

fn check_magic(bytes: &[u8], expected: u32) -> Result<(), DataError> {
    let found = be_u32(bytes, 0)?;
    if found != expected {
        return Err(DataError::MagicMismatch { expected, found });
    }
    Ok(())
}

/// Decoded IDX image file: `count` rasters of `rows x cols` bytes.
#[derive(Debug, Clone)]
pub struct IdxImages {
    pub count: usize,
    pub rows: usize,
    pub cols: usize,
    pixels: Vec<u8>,
}

impl IdxImages {
    pub fn image(&self, index: usize) -> Image {
        let size = self.rows * self.cols;
        let raster = &self.pixels[index * size..(index + 1) * size];
        let px = Array2::from_shape_vec((self.rows, self.cols), raster.iter().map(|&b| b as f64 / 255.0).collect())
            .expect("raster size from header");
        Image::normalized(px).expect("bytes map to finite pixels")
    }
}

pub fn decode_idx_images(bytes: &[u8]) -> Result<IdxImages, DataError> {
    check_magic(bytes, IMAGES_MAGIC)?;
    let count = be_u32(bytes, 4)? as usize;
    let rows = be_u32(bytes, 8)? as usize;
    let cols = be_u32(bytes, 12)? as usize;
    let expected = count * rows * cols;
    let payload = &bytes[16..];
    if payload.len() != expected {
        return Err(DataError::LengthMismatch { expected, actual: payload.len() });
    }
    Ok(IdxImages { count, rows, cols, pixels: payload.to_vec() })
}

pub fn decode_idx_labels(bytes: &[u8]) -> Result<Vec<u8>, DataError> {
    check_magic(bytes, LABELS_MAGIC)?;
    let count = be_u32(bytes, 4)? as usize;
    let payload = &bytes[8..];
    if payload.len() != count {
        return Err(DataError::LengthMismatch { expected: count, actual: payload.len() });
    }
    Ok(payload.to_vec())
}

/// Loads `sample_count` images drawn without replacement by the seeded
/// sampler in [`sample_indices`], in draw order. The label file, when given,
/// must describe the same number of items.
pub fn load_mnist(
    images_path: impl AsRef<Path>,
    labels_path: Option<&Path>,
    sample_count: usize,
    rng_seed: u64,
) -> Result<Vec<Image>, DataError> {
    let images_path = images_path.as_ref();
    let bytes = fs::read(images_path).map_err(|e| DataError::io(images_path, e))?;
    let images = decode_idx_images(&bytes)?;
    if let Some(lp) = labels_path {
        let labels = decode_idx_labels(&fs::read(lp).map_err(|e| DataError::io(lp, e))?)?;
        if labels.len() != images.count {
            return Err(DataError::LengthMismatch { expected: images.count, actual: labels.len() });
        }
    }
    let picks = sample_indices(images.count, sample_count, rng_seed)?;
    Ok(picks.into_iter().map(|i| images.image(i)).collect())
}
