//! State containers and encoding primitives.
//!
//! Everything downstream works with register-addressed states: a
//! [`RegisterLayout`] names qubit blocks (ancilla, data, label, index)
//! most-significant-first, [`StateVector`] and [`DensityMatrix`] hold the
//! amplitudes or matrix entries, and [`Observable`] measures them.
//!
//! Classical vectors enter through [`amplitude_encode`], which maps
//! `x ∈ C^N` to `(1/‖x‖) Σ_i x_i |i⟩` on `⌈log₂ N⌉` qubits.

mod density_matrix;
mod layout;
mod observable;
mod state_vector;

pub use density_matrix::{DensityMatrix, EIGENVALUE_FLOOR, MATRIX_TOL};
pub use layout::{Register, RegisterLayout};
pub use observable::{Observable, Pauli, PauliString};
pub use state_vector::{StateVector, NORM_TOL};

use num_complex::Complex64;

use crate::{Error, Result};

/// A quantum state in either pure (vector) or mixed (density) form.
#[derive(Debug, Clone, PartialEq)]
pub enum QState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl QState {
    pub fn layout(&self) -> &RegisterLayout {
        match self {
            QState::Pure(s) => s.layout(),
            QState::Mixed(m) => m.layout(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            QState::Pure(s) => s.dim(),
            QState::Mixed(m) => m.dim(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.layout().total_qubits()
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, QState::Pure(_))
    }

    pub fn as_pure(&self) -> Option<&StateVector> {
        match self {
            QState::Pure(s) => Some(s),
            QState::Mixed(_) => None,
        }
    }

    pub fn as_mixed(&self) -> Option<&DensityMatrix> {
        match self {
            QState::Mixed(m) => Some(m),
            QState::Pure(_) => None,
        }
    }

    /// Promotes to a density matrix (a projector for pure states).
    pub fn to_density(&self) -> DensityMatrix {
        match self {
            QState::Pure(s) => s.to_density(),
            QState::Mixed(m) => m.clone(),
        }
    }

    /// Probability of measuring basis state `|index⟩`.
    pub fn basis_probability(&self, index: usize) -> f64 {
        match self {
            QState::Pure(s) => s.probability(index),
            QState::Mixed(m) => m.probability(index),
        }
    }
}

impl From<StateVector> for QState {
    fn from(s: StateVector) -> Self {
        QState::Pure(s)
    }
}

impl From<DensityMatrix> for QState {
    fn from(m: DensityMatrix) -> Self {
        QState::Mixed(m)
    }
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Largest absolute component, used to rescale before norm computation so
/// that vectors with entries near the extremes of the double range still
/// normalize cleanly.
fn max_component(x: &[Complex64]) -> f64 {
    x.iter()
        .map(|a| a.re.abs().max(a.im.abs()))
        .fold(0.0, f64::max)
}

/// Encodes a complex vector into the amplitudes of `⌈log₂ N⌉` qubits,
/// zero-padding up to the next power of two:
/// `x ↦ (1/‖x‖) Σ_i x_i |i⟩`.
pub fn amplitude_encode(x: &[Complex64], register: &str) -> Result<StateVector> {
    if x.is_empty() {
        return Err(Error::ZeroVector);
    }
    let max = max_component(x);
    if max < 1e-300 {
        return Err(Error::ZeroVector);
    }
    let scaled_norm = x
        .iter()
        .map(|a| (a / max).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let qubits = ceil_log2(x.len());
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
    for (i, a) in x.iter().enumerate() {
        amps[i] = a / max / scaled_norm;
    }
    StateVector::new(amps, RegisterLayout::single(register, qubits))
}

/// Encodes M vectors jointly over data and index registers:
/// `{x_j} ↦ (1/‖X‖) Σ_{ij} x_{ij} |i⟩|j⟩` with
/// `‖X‖² = Σ_{ij} |x_{ij}|²`.
pub fn encode_dataset(xs: &[Vec<Complex64>]) -> Result<StateVector> {
    if xs.is_empty() {
        return Err(Error::ZeroVector);
    }
    let n = xs[0].len();
    for x in xs {
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: n,
            });
        }
    }
    if n == 0 {
        return Err(Error::ZeroVector);
    }
    let max = xs.iter().map(|x| max_component(x)).fold(0.0, f64::max);
    if max < 1e-300 {
        return Err(Error::ZeroVector);
    }
    let scaled_norm = xs
        .iter()
        .flat_map(|x| x.iter())
        .map(|a| (a / max).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let data_qubits = ceil_log2(n);
    let index_qubits = ceil_log2(xs.len());
    let layout = RegisterLayout::from_names(&[("data", data_qubits), ("index", index_qubits)])?;
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
    for (j, x) in xs.iter().enumerate() {
        for (i, a) in x.iter().enumerate() {
            amps[(i << index_qubits) | j] = a / max / scaled_norm;
        }
    }
    StateVector::new(amps, layout)
}

/// `⟨a|b⟩` with the left argument conjugated.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// `⟨M⟩` on a pure or mixed state. The result of a Hermitian observable
/// is real; residual imaginary parts are numerical noise and dropped.
pub fn expectation(state: &QState, observable: &Observable) -> Result<f64> {
    if state.num_qubits() != observable.num_qubits() {
        return Err(Error::DimensionMismatch {
            left: state.num_qubits(),
            right: observable.num_qubits(),
        });
    }
    let value = match state {
        QState::Pure(s) => observable.expect_pure(s.amplitudes()),
        QState::Mixed(m) => observable.expect_density(m.entries(), m.dim()),
    };
    debug_assert!(value.im.abs() < 1e-9, "imaginary expectation {}", value.im);
    Ok(value.re)
}

/// Kronecker product of two pure states; register layouts concatenate,
/// so the names must not collide.
pub fn tensor_pure(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    let layout = concat_layouts(a.layout(), b.layout())?;
    let db = b.dim();
    let mut amps = vec![Complex64::new(0.0, 0.0); a.dim() * db];
    for (i, x) in a.amplitudes().iter().enumerate() {
        if x.norm_sqr() == 0.0 {
            continue;
        }
        for (j, y) in b.amplitudes().iter().enumerate() {
            amps[i * db + j] = x * y;
        }
    }
    StateVector::new(amps, layout)
}

/// Kronecker product of two density matrices.
pub fn tensor_density(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let layout = concat_layouts(a.layout(), b.layout())?;
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for ra in 0..da {
        for ca in 0..da {
            let x = a.entry(ra, ca);
            if x.norm_sqr() == 0.0 {
                continue;
            }
            for rb in 0..db {
                for cb in 0..db {
                    entries[(ra * db + rb) * dim + (ca * db + cb)] = x * b.entry(rb, cb);
                }
            }
        }
    }
    DensityMatrix::new(entries, layout)
}

/// Kronecker product of two states of the same kind.
pub fn tensor(a: &QState, b: &QState) -> Result<QState> {
    match (a, b) {
        (QState::Pure(x), QState::Pure(y)) => tensor_pure(x, y).map(QState::Pure),
        (QState::Mixed(x), QState::Mixed(y)) => tensor_density(x, y).map(QState::Mixed),
        _ => Err(Error::MixedKind),
    }
}

fn concat_layouts(a: &RegisterLayout, b: &RegisterLayout) -> Result<RegisterLayout> {
    RegisterLayout::new(
        a.registers()
            .iter()
            .chain(b.registers())
            .cloned()
            .collect(),
    )
}
