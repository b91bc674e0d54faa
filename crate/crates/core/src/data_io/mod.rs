//! Dataset loading and synthesis plus raster and matrix export.

mod csv;
mod mnist;
mod pgm;
mod phantom;

use std::fs;
use std::path::{Path, PathBuf};

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::patches::{Image, PatchError};

pub use self::csv::{encode_csv_matrix, save_csv_matrix, save_dictionary_csv};
pub use self::mnist::{decode_idx_images, decode_idx_labels, load_mnist, IdxImages, IMAGES_MAGIC, LABELS_MAGIC};
pub use self::pgm::{decode_pgm, encode_pgm, load_pgm, save_pgm};
pub use self::phantom::{
    ellipses, generate_phantom, generate_shepp_logan, pixel_center, Ellipse, PhantomVariant, MIN_PHANTOM_SIZE,
};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),
    #[error("unsupported magic number {0:?}")]
    UnsupportedMagic(String),
    #[error("truncated payload: expected {expected}, found {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("malformed raster: {0}")]
    MalformedRaster(String),
    #[error("pixel value {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("IDX magic mismatch: expected {expected:#010x}, found {found:#010x}")]
    MagicMismatch { expected: u32, found: u32 },
    #[error("payload length {actual} does not match header ({expected})")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("requested {requested} samples but only {available} are available")]
    SampleCount { requested: usize, available: usize },
    #[error("dataset kind {0} needs a path")]
    MissingPath(&'static str),
    #[error("no PGM files found under {0}")]
    EmptyDirectory(PathBuf),
    #[error("phantom size {size} is below the minimum {min}")]
    InvalidSize { size: usize, min: usize },
    #[error(transparent)]
    Image(#[from] PatchError),
}

impl DataError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        DataError::Io { path: path.to_path_buf(), source }
    }
}

/// Draws `count` distinct indices from `0..available` with a partial
/// Fisher-Yates shuffle driven by xoshiro256** seeded through SplitMix64.
///
/// Step `i` swaps position `i` with `i + next_u64() % (available - i)`; the
/// first `count` positions are returned in draw order.
pub fn sample_indices(available: usize, count: usize, seed: u64) -> Result<Vec<usize>, DataError> {
    if count > available {
        return Err(DataError::SampleCount { requested: count, available });
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut pool: Vec<usize> = (0..available).collect();
    for i in 0..count {
        let span = (available - i) as u64;
        let j = i + (rng.next_u64() % span) as usize;
        pool.swap(i, j);
    }
    pool.truncate(count);
    Ok(pool)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetKind {
    Pgm,
    Mnist,
    SheppLogan,
}

impl DatasetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DatasetKind::Pgm => "pgm",
            DatasetKind::Mnist => "mnist",
            DatasetKind::SheppLogan => "shepp_logan",
        }
    }
}

fn default_phantom_size() -> usize {
    64
}

/// One dataset entry of an experiment.
///
/// `path` is a file or a directory for `pgm` (directories are scanned
/// recursively for `*.pgm`, sorted by path) and the IDX image file for
/// `mnist`. When `sample_count` is set the items are subsampled with
/// [`sample_indices`]; otherwise every item is used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub kind: DatasetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_count: Option<usize>,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default = "default_phantom_size")]
    pub size: usize,
    #[serde(default)]
    pub phantom_variant: PhantomVariant,
}

impl DatasetSpec {
    pub fn shepp_logan(size: usize) -> Self {
        DatasetSpec {
            kind: DatasetKind::SheppLogan,
            name: None,
            path: None,
            labels_path: None,
            sample_count: None,
            rng_seed: 0,
            size,
            phantom_variant: PhantomVariant::Original,
        }
    }

    pub fn pgm(path: impl Into<PathBuf>) -> Self {
        DatasetSpec { kind: DatasetKind::Pgm, path: Some(path.into()), ..Self::shepp_logan(default_phantom_size()) }
    }

    pub fn mnist(path: impl Into<PathBuf>, sample_count: usize, rng_seed: u64) -> Self {
        DatasetSpec {
            kind: DatasetKind::Mnist,
            path: Some(path.into()),
            sample_count: Some(sample_count),
            rng_seed,
            ..Self::shepp_logan(default_phantom_size())
        }
    }

    pub fn validate(&self) -> Result<(), DataError> {
        match self.kind {
            DatasetKind::Pgm | DatasetKind::Mnist if self.path.is_none() => Err(DataError::MissingPath(self.kind.as_str())),
            DatasetKind::SheppLogan if self.size < MIN_PHANTOM_SIZE => {
                Err(DataError::InvalidSize { size: self.size, min: MIN_PHANTOM_SIZE })
            }
            _ => Ok(()),
        }
    }

    /// Name used in output tables and file names.
    pub fn label(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        match (self.kind, &self.path) {
            (DatasetKind::SheppLogan, _) => format!("shepp_logan_{}", self.size),
            (_, Some(p)) => p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| self.kind.as_str().to_string()),
            (_, None) => self.kind.as_str().to_string(),
        }
    }

    pub fn load(&self) -> Result<Vec<Image>, DataError> {
        self.validate()?;
        match self.kind {
            DatasetKind::SheppLogan => Ok(vec![generate_phantom(self.size, self.phantom_variant)?]),
            DatasetKind::Mnist => {
                let path = self.path.as_deref().expect("validated");
                let count = match self.sample_count {
                    Some(n) => n,
                    None => decode_idx_images(&fs::read(path).map_err(|e| DataError::io(path, e))?)?.count,
                };
                load_mnist(path, self.labels_path.as_deref(), count, self.rng_seed)
            }
            DatasetKind::Pgm => {
                let path = self.path.as_deref().expect("validated");
                let files = pgm_files(path)?;
                let picks = match self.sample_count {
                    Some(n) => sample_indices(files.len(), n, self.rng_seed)?,
                    None => (0..files.len()).collect(),
                };
                picks.into_iter().map(|i| load_pgm(&files[i])).collect()
            }
        }
    }
}

fn pgm_files(path: &Path) -> Result<Vec<PathBuf>, DataError> {
    let meta = fs::metadata(path).map_err(|e| DataError::io(path, e))?;
    if meta.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut out = Vec::new();
    let mut stack = vec![path.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).map_err(|e| DataError::io(&dir, e))? {
            let p = entry.map_err(|e| DataError::io(&dir, e))?.path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")) {
                out.push(p);
            }
        }
    }
    if out.is_empty() {
        return Err(DataError::EmptyDirectory(path.to_path_buf()));
    }
    out.sort();
    Ok(out)
}
