//! Analytic kernel values and classification scores.
//!
//! These closed forms are the ground truth the circuit simulation is
//! checked against: the score
//!
//! `f = Σ_j a_j (−1)^{y_j} k(x_j, x̃)`
//!
//! with `k = Re⟨x_j|x̃⟩` for amplitude interference and
//! `k = Tr(ρ̃ρ_j)^k` for the swap test.

use crate::dataset::{ClassifierSpec, Label, LabeledDataset, Variant};
use crate::qstate::{inner_product, QState, StateVector};
use crate::{Error, Result};

/// Score, per-point kernel values, scaled expectation and the label the
/// score assigns.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub score: f64,
    pub kernels: Vec<f64>,
    pub expectation: f64,
    pub label: Label,
}

/// `Re⟨x_j|x̃⟩`.
pub fn htc_kernel(x: &StateVector, test: &StateVector) -> Result<f64> {
    Ok(inner_product(x, test)?.re)
}

/// `Tr(ρ̃ρ_j)^k`, which for pure inputs is `|⟨x̃|x_j⟩|^{2k}`.
pub fn stc_kernel(state: &QState, test: &QState, copies: usize) -> Result<f64> {
    if copies == 0 {
        return Err(Error::InvalidParameter {
            detail: "copy count must be at least 1".into(),
        });
    }
    let base = match (state, test) {
        (QState::Pure(a), QState::Pure(b)) => inner_product(a, b)?.norm_sqr(),
        _ => state.to_density().trace_product(&test.to_density())?,
    };
    Ok(base.powi(copies as i32))
}

/// Signed sums over the dataset that every closed-form expectation is
/// built from: the label sum Σ_j a_j(−1)^{y_j} and the kernel sums with
/// the same signs applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SignedSums {
    pub label: f64,
    pub kernel_re: f64,
    pub kernel_im: f64,
}

pub(crate) fn signed_sums(
    data: &LabeledDataset,
    variant: Variant,
    copies: usize,
) -> Result<SignedSums> {
    let mut sums = SignedSums {
        label: 0.0,
        kernel_re: 0.0,
        kernel_im: 0.0,
    };
    for (j, state) in data.training().iter().enumerate() {
        let w = data.weights()[j] * data.sign(j);
        sums.label += w;
        match variant {
            Variant::Htc => {
                let x = state.as_pure().ok_or(Error::MixedStateUnsupported)?;
                let overlap = inner_product(x, data.pure_test()?)?;
                sums.kernel_re += w * overlap.re;
                sums.kernel_im += w * overlap.im;
            }
            Variant::Stc => {
                sums.kernel_re += w * stc_kernel(state, data.test(), copies)?;
            }
        }
    }
    Ok(sums)
}

fn per_point_kernels(
    data: &LabeledDataset,
    variant: Variant,
    copies: usize,
) -> Result<Vec<f64>> {
    data.training()
        .iter()
        .map(|state| match variant {
            Variant::Htc => {
                let x = state.as_pure().ok_or(Error::MixedStateUnsupported)?;
                htc_kernel(x, data.pure_test()?)
            }
            Variant::Stc => stc_kernel(state, data.test(), copies),
        })
        .collect()
}

/// Weighted signed kernel sum, label rule `ỹ = (1 − sgn f)/2`, with an
/// explicit abstain when |f| is below tolerance.
pub fn classification_score(data: &LabeledDataset, spec: &ClassifierSpec) -> Result<ScoreReport> {
    spec.validate()?;
    let kernels = per_point_kernels(data, spec.variant, spec.copies)?;
    let score: f64 = kernels
        .iter()
        .enumerate()
        .map(|(j, k)| data.weights()[j] * data.sign(j) * k)
        .sum();
    debug_assert!(score.abs() <= 1.0 + 1e-9, "score {score} out of range");
    Ok(ScoreReport {
        score,
        expectation: spec.label_width as f64 * score,
        label: Label::from_score(score),
        kernels,
    })
}

/// Expectation of σ_z(ancilla)·σ_z(label) after interference at
/// arbitrary angles:
///
/// `E = S cosθ₀ cosθ₁ − sinθ₀ sinθ₁ (cosφ·K_re − sinφ·K_im)`
///
/// where S is the label sum and K_re, K_im the signed kernel sums. The
/// swap-test kernel is real, so its K_im vanishes. The Hadamard point
/// (π/2, π/2, π) recovers the plain score.
pub fn general_expectation(
    data: &LabeledDataset,
    angles: crate::dataset::Angles,
    variant: Variant,
    copies: usize,
) -> Result<f64> {
    let sums = signed_sums(data, variant, copies)?;
    Ok(expectation_from_sums(&sums, angles))
}

pub(crate) fn expectation_from_sums(sums: &SignedSums, angles: crate::dataset::Angles) -> f64 {
    let (s0, c0) = angles.theta0.sin_cos();
    let (s1, c1) = angles.theta1.sin_cos();
    let (sp, cp) = angles.phi.sin_cos();
    sums.label * c0 * c1 - s0 * s1 * (cp * sums.kernel_re - sp * sums.kernel_im)
}

/// `⟨M_λ⟩ = λ·E` for the stacked observable σ_z(ancilla)·Σ_i σ_z(label_i)
/// on λ copies of the logical label.
pub fn general_observable_expectation(
    data: &LabeledDataset,
    spec: &ClassifierSpec,
) -> Result<f64> {
    spec.validate()?;
    Ok(spec.label_width as f64
        * general_expectation(data, spec.angles, spec.variant, spec.copies)?)
}
