//! Sparse coding with hard, soft and Cauchy thresholding over an overcomplete
//! DCT dictionary, together with patch handling, quality metrics and dataset
//! loaders.
//!
//! The central entry point is [`solver::sparse_code`], a proximal-gradient
//! loop whose shrinkage step is chosen by a [`prox::Penalty`].

pub mod data_io;
pub mod dictionary;
pub mod metrics;
pub mod patches;
pub mod prox;
pub mod solver;

pub use dictionary::{build_overcomplete_dct, Dictionary, DictionaryError};
pub use metrics::{mse, percent_nonzero, psnr, MetricsRecord};
pub use patches::{extract_patches, reconstruct_from_patches, Image, PatchError, PatchSet};
pub use prox::{
    cauchy_shrink, cauchy_shrink_gamma_zero, hard_threshold, soft_threshold, solve_prox_cubic, CauchyPenalty, Penalty,
    ProxError, RootPolicy,
};
pub use solver::{sparse_code, sparse_code_batch, CodingResult, ShrinkScaling, SolverConfig, SolverError};

/// Crate version, recorded in benchmark metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
