//! Plain numeric CSV export.

use std::fs;
use std::path::Path;

use ndarray::ArrayView2;

use super::DataError;
use crate::dictionary::Dictionary;

/// Row-major CSV with every value in `{:.16e}` form (17 significant digits),
/// which round-trips any finite `f64` exactly.
pub fn encode_csv_matrix(matrix: ArrayView2<f64>) -> String {
    let mut out = String::with_capacity(matrix.len() * 24);
    for row in matrix.rows() {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("{v:.16e}"));
        }
        out.push('\n');
    }
    out
}

pub fn save_csv_matrix(matrix: ArrayView2<f64>, path: impl AsRef<Path>) -> Result<(), DataError> {
    let path = path.as_ref();
    fs::write(path, encode_csv_matrix(matrix)).map_err(|e| DataError::io(path, e))
}

pub fn save_dictionary_csv(dictionary: &Dictionary, path: impl AsRef<Path>) -> Result<(), DataError> {
    save_csv_matrix(dictionary.atoms(), path)
}
