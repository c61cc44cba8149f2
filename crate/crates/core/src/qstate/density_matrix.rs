use num_complex::Complex64;

use super::{RegisterLayout, StateVector};
use crate::{Error, Result};

/// Tolerance on Hermiticity and unit trace at construction.
pub const MATRIX_TOL: f64 = 1e-12;

/// Channels and constructors must keep every eigenvalue above this floor.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Dense density matrix over a register layout, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Vec<Complex64>,
    dim: usize,
    layout: RegisterLayout,
}

impl DensityMatrix {
    /// Wraps entries after checking shape, Hermiticity and unit trace.
    ///
    /// Positivity is not verified here (it costs a full eigensolve);
    /// call [`DensityMatrix::min_eigenvalue`] where it matters.
    pub fn new(entries: Vec<Complex64>, layout: RegisterLayout) -> Result<Self> {
        let dim = layout.dim();
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: dim * dim,
            });
        }
        let mut deviation = 0.0f64;
        for r in 0..dim {
            for c in r..dim {
                let diff = (entries[r * dim + c] - entries[c * dim + r].conj()).norm();
                deviation = deviation.max(diff);
            }
        }
        if deviation > MATRIX_TOL {
            return Err(Error::NonHermitian { deviation });
        }
        let trace: Complex64 = (0..dim).map(|i| entries[i * dim + i]).sum();
        if (trace.re - 1.0).abs() > MATRIX_TOL || trace.im.abs() > MATRIX_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        Ok(Self {
            entries,
            dim,
            layout,
        })
    }

    pub(crate) fn new_unchecked(entries: Vec<Complex64>, layout: RegisterLayout) -> Self {
        let dim = layout.dim();
        debug_assert_eq!(entries.len(), dim * dim);
        Self {
            entries,
            dim,
            layout,
        }
    }

    pub fn from_pure(state: &StateVector) -> Self {
        state.to_density()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.layout.total_qubits()
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Probability of basis state `|index⟩`, the diagonal entry.
    pub fn probability(&self, index: usize) -> f64 {
        self.entry(index, index).re
    }

    /// `Tr(self · other)`, real for Hermitian operands.
    pub fn trace_product(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc += self.entry(r, c) * other.entry(c, r);
            }
        }
        Ok(acc.re)
    }

    /// Smallest eigenvalue of the (Hermitian) matrix; a state is positive
    /// semidefinite up to numerical noise when this stays above
    /// [`EIGENVALUE_FLOOR`].
    pub fn min_eigenvalue(&self) -> f64 {
        let m = nalgebra::DMatrix::from_fn(self.dim, self.dim, |r, c| self.entry(r, c));
        m.symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }
}
