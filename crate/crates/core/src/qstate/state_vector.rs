use num_complex::Complex64;

use super::{DensityMatrix, RegisterLayout};
use crate::{Error, Result};

/// Tolerance on the unit-norm invariant of a [`StateVector`].
pub const NORM_TOL: f64 = 1e-12;

/// Dense pure state over a register layout.
///
/// `amps[i]` is the amplitude of computational basis state `|i⟩`, where
/// the bits of `i` spell the registers most-significant-first.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    layout: RegisterLayout,
}

impl StateVector {
    /// Wraps amplitudes after checking dimension and unit norm.
    pub fn new(amps: Vec<Complex64>, layout: RegisterLayout) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                left: amps.len(),
                right: layout.dim(),
            });
        }
        let norm = l2_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amps, layout })
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(layout: RegisterLayout, index: usize) -> Result<Self> {
        let dim = layout.dim();
        if index >= dim {
            return Err(Error::DimensionMismatch {
                left: index,
                right: dim,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amps, layout })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn num_qubits(&self) -> usize {
        self.layout.total_qubits()
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    /// Probability of measuring basis state `|index⟩`.
    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// The projector `|ψ⟩⟨ψ|` as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                entries[r * dim + c] = self.amps[r] * self.amps[c].conj();
            }
        }
        DensityMatrix::new_unchecked(entries, self.layout.clone())
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }
}

fn l2_norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
