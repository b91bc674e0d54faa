//! Shepp-Logan head phantom rendered from its ten-ellipse definition.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::DataError;
use crate::patches::Image;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhantomVariant {
    /// Original intensities (skull 1.0, brain 0.02).
    #[default]
    Original,
    /// Higher-contrast intensities commonly used for display.
    Modified,
}

/// One ellipse: additive intensity, semi-axes, center, rotation in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub intensity: f64,
    pub semi_x: f64,
    pub semi_y: f64,
    pub center_x: f64,
    pub center_y: f64,
    pub angle_deg: f64,
}

const fn e(intensity: f64, semi_x: f64, semi_y: f64, center_x: f64, center_y: f64, angle_deg: f64) -> Ellipse {
    Ellipse { intensity, semi_x, semi_y, center_x, center_y, angle_deg }
}

const GEOMETRY: [Ellipse; 10] = [
    e(1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    e(-0.98, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    e(-0.02, 0.11, 0.31, 0.22, 0.0, -18.0),
    e(-0.02, 0.16, 0.41, -0.22, 0.0, 18.0),
    e(0.01, 0.21, 0.25, 0.0, 0.35, 0.0),
    e(0.01, 0.046, 0.046, 0.0, 0.1, 0.0),
    e(0.01, 0.046, 0.046, 0.0, -0.1, 0.0),
    e(0.01, 0.046, 0.023, -0.08, -0.605, 0.0),
    e(0.01, 0.023, 0.023, 0.0, -0.606, 0.0),
    e(0.01, 0.023, 0.046, 0.06, -0.605, 0.0),
];

const MODIFIED_INTENSITY: [f64; 10] = [1.0, -0.8, -0.2, -0.2, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1];

pub fn ellipses(variant: PhantomVariant) -> [Ellipse; 10] {
    let mut out = GEOMETRY;
    if variant == PhantomVariant::Modified {
        out.iter_mut().zip(MODIFIED_INTENSITY).for_each(|(e, i)| e.intensity = i);
    }
    out
}

/// Point on `[-1, 1]^2` at the center of pixel `(row, col)`; row 0 is the top (`y = +1`).
pub fn pixel_center(row: usize, col: usize, size: usize) -> (f64, f64) {
    let x = -1.0 + (2 * col + 1) as f64 / size as f64;
    let y = 1.0 - (2 * row + 1) as f64 / size as f64;
    (x, y)
}

impl Ellipse {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (s, c) = self.angle_deg.to_radians().sin_cos();
        let (dx, dy) = (x - self.center_x, y - self.center_y);
        let u = dx * c + dy * s;
        let v = -dx * s + dy * c;
        (u / self.semi_x).powi(2) + (v / self.semi_y).powi(2) <= 1.0
    }
}

pub const MIN_PHANTOM_SIZE: usize = 16;

/// Renders the phantom on a `size x size` grid over `[-1, 1]^2`, summing the
/// intensity of every ellipse containing each pixel center, clamped to `[0, 1]`.
pub fn generate_phantom(size: usize, variant: PhantomVariant) -> Result<Image, DataError> {
    if size < MIN_PHANTOM_SIZE {
        return Err(DataError::InvalidSize { size, min: MIN_PHANTOM_SIZE });
    }
    let shapes = ellipses(variant);
    let px = Array2::from_shape_fn((size, size), |(r, c)| {
        let (x, y) = pixel_center(r, c, size);
        let v: f64 = shapes.iter().filter(|e| e.contains(x, y)).map(|e| e.intensity).sum();
        v.clamp(0.0, 1.0)
    });
    Ok(Image::normalized(px)?)
}

/// The original-intensity phantom.
pub fn generate_shepp_logan(size: usize) -> Result<Image, DataError> {
    generate_phantom(size, PhantomVariant::Original)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_is_brain_matter() {
        let img = generate_shepp_logan(64).unwrap();
        let v = img.pixels()[[32, 32]];
        assert!(v > 0.0 && v < 1.0, "{v}");
        assert!((v - 0.02).abs() < 1e-12);
    }

    #[test]
    fn corners_are_empty() {
        let img = generate_shepp_logan(128).unwrap();
        for (r, c) in [(0, 0), (0, 127), (127, 0), (127, 127)] {
            assert_eq!(img.pixels()[[r, c]], 0.0);
        }
    }

    #[test]
    fn skull_ring_is_bright() {
        let img = generate_shepp_logan(128).unwrap();
        // Left edge of the head ellipse at mid-height.
        let row = 64;
        let bright = (0..30).any(|c| (img.pixels()[[row, c]] - 1.0).abs() < 1e-12);
        assert!(bright);
    }

    #[test]
    fn modified_has_more_contrast() {
        let orig = generate_phantom(64, PhantomVariant::Original).unwrap();
        let modi = generate_phantom(64, PhantomVariant::Modified).unwrap();
        assert!((modi.pixels()[[32, 32]] - 0.2).abs() < 1e-12);
        assert!(orig.pixels().iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn too_small_rejected() {
        assert!(matches!(generate_shepp_logan(8), Err(DataError::InvalidSize { size: 8, min: 16 })));
    }
}
