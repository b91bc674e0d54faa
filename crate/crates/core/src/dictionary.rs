//! Fixed overcomplete DCT dictionary for square image patches.

use std::f64::consts::PI;

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DictionaryError {
    #[error("requested {atoms_per_axis} atoms per axis for patch edge {patch_edge}; the dictionary must be overcomplete or square")]
    Undercomplete { patch_edge: usize, atoms_per_axis: usize },
    #[error("patch edge and atoms per axis must be positive")]
    EmptyShape,
    #[error("expected a vector of length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("atom {0} has zero or non-finite norm")]
    DegenerateAtom(usize),
}

/// Square-patch layout of a DCT dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomGrid {
    pub patch_edge: usize,
    pub atoms_per_axis: usize,
}

/// An `M x N` matrix whose columns (atoms) have unit Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    atoms: Array2<f64>,
    grid: Option<AtomGrid>,
}

/// 1-D overcomplete DCT: `D[i, k] = cos(i k pi / atoms)`, mean removed for `k > 0`.
fn dct_1d(patch_edge: usize, atoms: usize) -> Array2<f64> {
    let mut d = Array2::from_shape_fn((patch_edge, atoms), |(i, k)| {
        (i as f64 * k as f64 * PI / atoms as f64).cos()
    });
    for mut col in d.axis_iter_mut(Axis(1)).skip(1) {
        let mean = col.sum() / patch_edge as f64;
        col -= mean;
    }
    d
}

/// Builds the 2-D overcomplete DCT dictionary as the Kronecker product of two
/// 1-D overcomplete DCT matrices, columns normalized to unit norm.
///
/// Atom `k_row * atoms_per_axis + k_col` is the separable product of the
/// vertical frequency `k_row` and the horizontal frequency `k_col`, laid out
/// row-major over the patch. Atom 0 is the constant (DC) atom.
pub fn build_overcomplete_dct(
    patch_edge: usize,
    atoms_per_axis: usize,
) -> Result<Dictionary, DictionaryError> {
    if patch_edge == 0 || atoms_per_axis == 0 {
        return Err(DictionaryError::EmptyShape);
    }
    if atoms_per_axis < patch_edge {
        return Err(DictionaryError::Undercomplete { patch_edge, atoms_per_axis });
    }
    let d1 = dct_1d(patch_edge, atoms_per_axis);
    let m = patch_edge * patch_edge;
    let n = atoms_per_axis * atoms_per_axis;
    let atoms = Array2::from_shape_fn((m, n), |(pix, atom)| {
        let (ir, ic) = (pix / patch_edge, pix % patch_edge);
        let (kr, kc) = (atom / atoms_per_axis, atom % atoms_per_axis);
        d1[[ir, kr]] * d1[[ic, kc]]
    });
    let mut dict = Dictionary::from_atoms(atoms)?;
    dict.grid = Some(AtomGrid { patch_edge, atoms_per_axis });
    Ok(dict)
}

impl Dictionary {
    /// Wraps an arbitrary matrix, normalizing each column to unit norm.
    pub fn from_atoms(mut atoms: Array2<f64>) -> Result<Self, DictionaryError> {
        if atoms.is_empty() {
            return Err(DictionaryError::EmptyShape);
        }
        for (j, mut col) in atoms.axis_iter_mut(Axis(1)).enumerate() {
            let norm = col.dot(&col).sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                return Err(DictionaryError::DegenerateAtom(j));
            }
            col /= norm;
        }
        Ok(Self { atoms, grid: None })
    }

    pub fn atoms(&self) -> ArrayView2<'_, f64> {
        self.atoms.view()
    }

    pub fn atom(&self, index: usize) -> ArrayView1<'_, f64> {
        self.atoms.column(index)
    }

    /// Signal dimension `M`.
    pub fn signal_len(&self) -> usize {
        self.atoms.nrows()
    }

    /// Number of atoms `N`.
    pub fn atom_count(&self) -> usize {
        self.atoms.ncols()
    }

    pub fn grid(&self) -> Option<AtomGrid> {
        self.grid
    }

    /// `A x`.
    pub fn apply(&self, coeffs: ArrayView1<f64>) -> Result<Array1<f64>, DictionaryError> {
        check_len(self.atom_count(), coeffs.len())?;
        Ok(self.atoms.dot(&coeffs))
    }

    /// `A^T r`.
    pub fn apply_adjoint(&self, signal: ArrayView1<f64>) -> Result<Array1<f64>, DictionaryError> {
        check_len(self.signal_len(), signal.len())?;
        Ok(self.atoms.t().dot(&signal))
    }

    /// Largest squared singular value of `A`, by power iteration on `A^T A`
    /// from a fixed start vector.
    pub fn spectral_norm_sq(&self) -> f64 {
        let n = self.atom_count();
        let mut v = Array1::from_elem(n, 1.0 / (n as f64).sqrt());
        // A fixed, non-symmetric start avoids orthogonality to the top singular vector.
        v.iter_mut().enumerate().for_each(|(i, e)| *e *= 1.0 + 0.01 * i as f64);
        let mut estimate = 0.0;
        for _ in 0..1000 {
            let w = self.atoms.t().dot(&self.atoms.dot(&v));
            let norm = w.dot(&w).sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            let next = w.dot(&v) / v.dot(&v);
            v = w / norm;
            if (next - estimate).abs() <= 1e-14 * next {
                return next;
            }
            estimate = next;
        }
        estimate
    }
}

fn check_len(expected: usize, actual: usize) -> Result<(), DictionaryError> {
    if expected == actual {
        Ok(())
    } else {
        Err(DictionaryError::DimensionMismatch { expected, actual })
    }
}
