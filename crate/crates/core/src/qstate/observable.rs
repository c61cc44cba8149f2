use num_complex::Complex64;

use super::RegisterLayout;
use crate::{Error, Result};

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(ch: char) -> Result<Self> {
        match ch.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidParameter {
                detail: format!("`{other}` is not a Pauli factor"),
            }),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis, one factor per qubit in
/// most-significant-first order, matching [`RegisterLayout`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliString {
    factors: Vec<Pauli>,
}

impl PauliString {
    pub fn new(factors: Vec<Pauli>) -> Self {
        Self { factors }
    }

    pub fn identity(num_qubits: usize) -> Self {
        Self {
            factors: vec![Pauli::I; num_qubits],
        }
    }

    /// Parses strings like `"IZXY"`.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(Pauli::from_char)
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// Identity except for one factor at `qubit`.
    pub fn single(num_qubits: usize, qubit: usize, factor: Pauli) -> Result<Self> {
        if qubit >= num_qubits {
            return Err(Error::InvalidParameter {
                detail: format!("qubit {qubit} outside a {num_qubits}-qubit system"),
            });
        }
        let mut factors = vec![Pauli::I; num_qubits];
        factors[qubit] = factor;
        Ok(Self { factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Pauli] {
        &self.factors
    }

    pub fn factor(&self, qubit: usize) -> Pauli {
        self.factors[qubit]
    }

    /// Action on a basis state: `P|index⟩ = phase · |mapped⟩`.
    pub fn apply_to_basis(&self, index: usize) -> (usize, Complex64) {
        let n = self.factors.len();
        let mut mapped = index;
        let mut phase = Complex64::new(1.0, 0.0);
        for (q, &p) in self.factors.iter().enumerate() {
            let bit_pos = n - 1 - q;
            let bit = (index >> bit_pos) & 1;
            match p {
                Pauli::I => {}
                Pauli::X => mapped ^= 1 << bit_pos,
                Pauli::Y => {
                    mapped ^= 1 << bit_pos;
                    phase *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        (mapped, phase)
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.factors {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

/// Hermitian measurement operator, stored either dense or as a
/// real-weighted sum of Pauli strings.
#[derive(Debug, Clone)]
pub struct Observable {
    repr: Repr,
    num_qubits: usize,
}

#[derive(Debug, Clone)]
enum Repr {
    Dense(Vec<Complex64>),
    PauliSum(Vec<(f64, PauliString)>),
}

impl Observable {
    /// Dense Hermitian matrix over `num_qubits` qubits, row-major.
    pub fn from_dense(entries: Vec<Complex64>, num_qubits: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: dim * dim,
            });
        }
        let mut deviation = 0.0f64;
        for r in 0..dim {
            for c in r..dim {
                deviation = deviation.max((entries[r * dim + c] - entries[c * dim + r].conj()).norm());
            }
        }
        if deviation > 1e-12 {
            return Err(Error::NonHermitian { deviation });
        }
        Ok(Self {
            repr: Repr::Dense(entries),
            num_qubits,
        })
    }

    /// Real-weighted Pauli-string sum; Hermitian by construction.
    pub fn pauli_sum(terms: Vec<(f64, PauliString)>) -> Result<Self> {
        let num_qubits = match terms.first() {
            Some((_, s)) => s.len(),
            None => {
                return Err(Error::InvalidParameter {
                    detail: "observable needs at least one term".into(),
                })
            }
        };
        for (coeff, string) in &terms {
            if string.len() != num_qubits {
                return Err(Error::DimensionMismatch {
                    left: string.len(),
                    right: num_qubits,
                });
            }
            if !coeff.is_finite() {
                return Err(Error::InvalidParameter {
                    detail: format!("non-finite coefficient {coeff}"),
                });
            }
        }
        Ok(Self {
            repr: Repr::PauliSum(terms),
            num_qubits,
        })
    }

    /// `σ_z` on a single qubit of an n-qubit system.
    pub fn single_z(num_qubits: usize, qubit: usize) -> Result<Self> {
        Self::pauli_sum(vec![(1.0, PauliString::single(num_qubits, qubit, Pauli::Z)?)])
    }

    /// `σ_z^(ancilla)` alone, the single-qubit measurement path.
    pub fn ancilla_z(layout: &RegisterLayout) -> Result<Self> {
        let qubit = layout.qubit_offset("ancilla")?;
        Self::single_z(layout.total_qubits(), qubit)
    }

    /// The classification observable `σ_z^(ancilla) ⊗ A_λ` where
    /// `A_λ = Σ_{i=1..λ} σ_z^(label_i)` acts on a width-λ label register.
    pub fn ancilla_label(layout: &RegisterLayout, lambda: usize) -> Result<Self> {
        let width = layout.width("label")?;
        if lambda == 0 || lambda != width {
            return Err(Error::LabelWidthUnsupported { width: lambda });
        }
        let n = layout.total_qubits();
        let ancilla = layout.qubit_offset("ancilla")?;
        if layout.width("ancilla")? != 1 {
            return Err(Error::LayoutMismatch {
                detail: "ancilla register must hold exactly one qubit".into(),
            });
        }
        let label_offset = layout.qubit_offset("label")?;
        let mut terms = Vec::with_capacity(lambda);
        for i in 0..lambda {
            let mut factors = vec![Pauli::I; n];
            factors[ancilla] = Pauli::Z;
            factors[label_offset + i] = Pauli::Z;
            terms.push((1.0, PauliString::new(factors)));
        }
        Self::pauli_sum(terms)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    /// Materializes the operator as a dense matrix. Intended for small
    /// systems; the dense form grows as `4^n`.
    pub fn dense(&self) -> Vec<Complex64> {
        let dim = self.dim();
        match &self.repr {
            Repr::Dense(entries) => entries.clone(),
            Repr::PauliSum(terms) => {
                let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
                for (coeff, string) in terms {
                    for col in 0..dim {
                        let (row, phase) = string.apply_to_basis(col);
                        out[row * dim + col] += phase * *coeff;
                    }
                }
                out
            }
        }
    }

    pub(crate) fn expect_pure(&self, amps: &[Complex64]) -> Complex64 {
        match &self.repr {
            Repr::Dense(entries) => {
                let dim = self.dim();
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..dim {
                    let mut row = Complex64::new(0.0, 0.0);
                    for c in 0..dim {
                        row += entries[r * dim + c] * amps[c];
                    }
                    acc += amps[r].conj() * row;
                }
                acc
            }
            Repr::PauliSum(terms) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (coeff, string) in terms {
                    let mut term = Complex64::new(0.0, 0.0);
                    for (i, amp) in amps.iter().enumerate() {
                        if amp.norm_sqr() == 0.0 {
                            continue;
                        }
                        let (mapped, phase) = string.apply_to_basis(i);
                        term += amps[mapped].conj() * phase * amp;
                    }
                    acc += term * *coeff;
                }
                acc
            }
        }
    }

    pub(crate) fn expect_density(&self, entries: &[Complex64], dim: usize) -> Complex64 {
        match &self.repr {
            Repr::Dense(obs) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..dim {
                    for c in 0..dim {
                        acc += entries[r * dim + c] * obs[c * dim + r];
                    }
                }
                acc
            }
            Repr::PauliSum(terms) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (coeff, string) in terms {
                    let mut term = Complex64::new(0.0, 0.0);
                    for i in 0..dim {
                        let (mapped, phase) = string.apply_to_basis(i);
                        term += entries[i * dim + mapped] * phase;
                    }
                    acc += term * *coeff;
                }
                acc
            }
        }
    }
}
