//! Labeled training data and classifier configuration.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::qstate::{amplitude_encode, QState, RegisterLayout, StateVector};
use crate::{Error, Result};

/// Weight-sum and score-sign tolerance.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Which interference primitive drives the classifier.
///
/// `Htc` interferes amplitudes directly (kernel `Re⟨x_j|x̃⟩`), `Stc`
/// compares copies through a controlled swap (kernel `|⟨x_j|x̃⟩|^{2k}`
/// for pure states, `Tr(ρ̃ρ_j)^k` in general).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Htc,
    Stc,
}

/// The three interference angles: ancilla preparation (θ₀, φ) and the
/// final y-rotation θ₁. The plain Hadamard test sits at (π/2, π/2, π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles {
    pub theta0: f64,
    pub theta1: f64,
    pub phi: f64,
}

impl Angles {
    pub fn new(theta0: f64, theta1: f64, phi: f64) -> Self {
        Angles { theta0, theta1, phi }
    }

    /// Angles at which the generalized circuit coincides with the
    /// textbook Hadamard/swap test.
    pub fn hadamard_point() -> Self {
        Angles::new(FRAC_PI_2, FRAC_PI_2, PI)
    }
}

impl Default for Angles {
    fn default() -> Self {
        Angles::hadamard_point()
    }
}

/// Predicted class, with an explicit outcome for scores too close to
/// zero to call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Zero,
    One,
    Abstain,
}

impl Label {
    /// Sign convention: positive scores favor class 0 because class-0
    /// kernels enter the score with weight +a_j.
    pub fn from_score(score: f64) -> Self {
        if score > WEIGHT_TOL {
            Label::Zero
        } else if score < -WEIGHT_TOL {
            Label::One
        } else {
            Label::Abstain
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Zero => write!(f, "0"),
            Label::One => write!(f, "1"),
            Label::Abstain => write!(f, "abstain"),
        }
    }
}

/// Full classifier configuration: variant, copy count, label-register
/// width and interference angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierSpec {
    pub variant: Variant,
    pub copies: usize,
    pub label_width: usize,
    pub angles: Angles,
}

impl ClassifierSpec {
    pub fn htc() -> Self {
        ClassifierSpec {
            variant: Variant::Htc,
            copies: 1,
            label_width: 1,
            angles: Angles::hadamard_point(),
        }
    }

    pub fn stc(copies: usize) -> Self {
        ClassifierSpec {
            variant: Variant::Stc,
            copies,
            label_width: 1,
            angles: Angles::hadamard_point(),
        }
    }

    pub fn with_label_width(mut self, label_width: usize) -> Self {
        self.label_width = label_width;
        self
    }

    pub fn with_angles(mut self, angles: Angles) -> Self {
        self.angles = angles;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.copies == 0 {
            return Err(Error::InvalidParameter {
                detail: "copy count must be at least 1".into(),
            });
        }
        if self.variant == Variant::Htc && self.copies != 1 {
            return Err(Error::InvalidParameter {
                detail: format!(
                    "amplitude interference admits a single copy, got {}",
                    self.copies
                ),
            });
        }
        if self.label_width == 0 {
            return Err(Error::LabelWidthUnsupported { width: 0 });
        }
        Ok(())
    }
}

/// M training states with binary labels and mixture weights, plus the
/// test state to classify. Weights must sum to 1 and every state must
/// live on the same number of qubits.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    training: Vec<QState>,
    labels: Vec<u8>,
    weights: Vec<f64>,
    test: QState,
}

impl LabeledDataset {
    pub fn new(
        training: Vec<QState>,
        labels: Vec<u8>,
        weights: Vec<f64>,
        test: QState,
    ) -> Result<Self> {
        if training.is_empty() {
            return Err(Error::InvalidParameter {
                detail: "dataset needs at least one training state".into(),
            });
        }
        if labels.len() != training.len() || weights.len() != training.len() {
            return Err(Error::DimensionMismatch {
                left: training.len(),
                right: labels.len().max(weights.len()),
            });
        }
        for &y in &labels {
            if y > 1 {
                return Err(Error::InvalidParameter {
                    detail: format!("labels are binary, got {y}"),
                });
            }
        }
        if weights.iter().any(|&a| a.is_nan() || a < 0.0) {
            return Err(Error::WeightSumInvalid {
                sum: weights.iter().sum(),
            });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::WeightSumInvalid { sum });
        }
        let dim = test.dim();
        for s in &training {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: s.dim(),
                    right: dim,
                });
            }
        }
        Ok(LabeledDataset {
            training,
            labels,
            weights,
            test,
        })
    }

    /// Uniform weights a_j = 1/M.
    pub fn uniform(training: Vec<QState>, labels: Vec<u8>, test: QState) -> Result<Self> {
        let m = training.len();
        if m == 0 {
            return Err(Error::InvalidParameter {
                detail: "dataset needs at least one training state".into(),
            });
        }
        let weights = vec![1.0 / m as f64; m];
        LabeledDataset::new(training, labels, weights, test)
    }

    /// Amplitude-encodes raw complex vectors with uniform weights.
    pub fn from_vectors(
        training: &[Vec<Complex64>],
        labels: &[u8],
        test: &[Complex64],
    ) -> Result<Self> {
        let states = training
            .iter()
            .map(|x| amplitude_encode(x, "data").map(QState::Pure))
            .collect::<Result<Vec<_>>>()?;
        let test_state = QState::Pure(amplitude_encode(test, "data")?);
        LabeledDataset::uniform(states, labels.to_vec(), test_state)
    }

    /// The two-point single-qubit example set: training states
    /// x₁ = (i, 1)/√2 with label 0 and x₂ = (i, −1)/√2 with label 1,
    /// test state x̃(θ) = (cos(θ/2), −i sin(θ/2)).
    ///
    /// Both training overlaps with x̃ are purely imaginary, so the
    /// amplitude-interference score vanishes identically while the
    /// swap-test score is sin(θ)/2.
    pub fn toy(theta: f64) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let x1 = vec![i * h, h];
        let x2 = vec![i * h, -h];
        let test = vec![
            Complex64::new((theta / 2.0).cos(), 0.0),
            -i * (theta / 2.0).sin(),
        ];
        LabeledDataset::from_vectors(&[x1, x2], &[0, 1], &test)
            .expect("two fixed unit vectors always form a valid dataset")
    }

    pub fn len(&self) -> usize {
        self.training.len()
    }

    pub fn is_empty(&self) -> bool {
        self.training.is_empty()
    }

    pub fn training(&self) -> &[QState] {
        &self.training
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn test(&self) -> &QState {
        &self.test
    }

    /// (−1)^{y_j}.
    pub fn sign(&self, j: usize) -> f64 {
        if self.labels[j] == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Σ_j a_j (−1)^{y_j}, the data-independent part of the score.
    pub fn label_sum(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.labels)
            .map(|(&a, &y)| if y == 0 { a } else { -a })
            .sum()
    }

    pub fn data_qubits(&self) -> usize {
        self.test.num_qubits()
    }

    pub fn all_pure(&self) -> bool {
        self.test.is_pure() && self.training.iter().all(QState::is_pure)
    }

    pub fn pure_training(&self) -> Result<Vec<&StateVector>> {
        self.training
            .iter()
            .map(|s| s.as_pure().ok_or(Error::MixedStateUnsupported))
            .collect()
    }

    pub fn pure_test(&self) -> Result<&StateVector> {
        self.test.as_pure().ok_or(Error::MixedStateUnsupported)
    }

    /// Layout of a single data register matching these states.
    pub fn data_layout(&self, name: &str) -> RegisterLayout {
        RegisterLayout::single(name, self.data_qubits())
    }
}
