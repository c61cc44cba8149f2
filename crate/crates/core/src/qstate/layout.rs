use crate::{Error, Result};

/// A named block of qubits inside a [`RegisterLayout`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    name: String,
    qubits: usize,
}

impl Register {
    pub fn new(name: impl Into<String>, qubits: usize) -> Self {
        Self {
            name: name.into(),
            qubits,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }
}

/// Ordered register map for a multi-register state.
///
/// Registers are laid out most-significant-first: the first register owns
/// the highest-order bits of a basis index, and within a register the
/// first qubit is again the most significant bit. A register may have
/// width zero (it then occupies no bits), which keeps index registers
/// well defined for single-element datasets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    registers: Vec<Register>,
}

impl RegisterLayout {
    pub fn new(registers: Vec<Register>) -> Result<Self> {
        for (i, reg) in registers.iter().enumerate() {
            if registers[..i].iter().any(|r| r.name == reg.name) {
                return Err(Error::DuplicateRegister {
                    name: reg.name.clone(),
                });
            }
        }
        Ok(Self { registers })
    }

    pub fn from_names(specs: &[(&str, usize)]) -> Result<Self> {
        Self::new(
            specs
                .iter()
                .map(|&(name, qubits)| Register::new(name, qubits))
                .collect(),
        )
    }

    /// Layout with a single register.
    pub fn single(name: &str, qubits: usize) -> Self {
        Self {
            registers: vec![Register::new(name, qubits)],
        }
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn total_qubits(&self) -> usize {
        self.registers.iter().map(|r| r.qubits).sum()
    }

    /// Hilbert-space dimension, `2^total_qubits`.
    pub fn dim(&self) -> usize {
        1 << self.total_qubits()
    }

    pub fn find(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn width(&self, name: &str) -> Result<usize> {
        self.find(name)
            .map(Register::qubits)
            .ok_or_else(|| missing(name))
    }

    /// Global position of the register's first qubit, counting from the
    /// most significant qubit (position 0).
    pub fn qubit_offset(&self, name: &str) -> Result<usize> {
        let mut offset = 0;
        for reg in &self.registers {
            if reg.name == name {
                return Ok(offset);
            }
            offset += reg.qubits;
        }
        Err(missing(name))
    }

    /// Bit shift of the register's least significant bit inside a basis
    /// index.
    pub fn shift(&self, name: &str) -> Result<usize> {
        let offset = self.qubit_offset(name)?;
        let width = self.width(name)?;
        Ok(self.total_qubits() - offset - width)
    }

    /// Extract the register's value from a full basis index.
    pub fn value(&self, name: &str, index: usize) -> Result<usize> {
        let shift = self.shift(name)?;
        let width = self.width(name)?;
        let mask = (1usize << width) - 1;
        Ok((index >> shift) & mask)
    }
}

fn missing(name: &str) -> Error {
    Error::LayoutMismatch {
        detail: format!("no register named `{name}`"),
    }
}
