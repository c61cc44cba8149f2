//! Exact moments of the measurement outcome and Chebyshev shot
//! planning.
//!
//! The measured observable takes only the two values ±λ, so every even
//! moment is λ to that power and everything else is a function of the
//! score f alone. In particular the skewness −2f/√(1−f²) carries no λ
//! at all, and neither does the planned shot count.

use crate::circuits::OutcomeDistribution;
use crate::{Error, Result};

/// Scores smaller than this are treated as undecidable: no shot budget
/// can resolve their sign.
pub const DECISION_TOL: f64 = 1e-12;

/// Exact moments of the two-valued measurement at label width λ.
/// `skewness` is `None` when the distribution is degenerate (|f| = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentsReport {
    pub mean: f64,
    pub second_moment: f64,
    pub third_moment: f64,
    pub variance: f64,
    pub skewness: Option<f64>,
    pub label_width: usize,
}

/// Chebyshev repetition plan: estimate the mean to within ε = |f|/c of
/// the true value with failure probability at most δ. All fields are on
/// the ±1 score scale, which makes plans at different label widths
/// directly comparable (the width cancels from the bound).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotPlan {
    pub shots: u64,
    pub epsilon: f64,
    pub c: f64,
    pub delta: f64,
}

fn check_score(f: f64) -> Result<f64> {
    if !f.is_finite() || f.abs() > 1.0 + DECISION_TOL {
        return Err(Error::ScoreOutOfRange { score: f });
    }
    Ok(f.clamp(-1.0, 1.0))
}

/// ⟨M_λ⟩ = λf.
pub fn expectation_of_observable(f: f64, lambda: usize) -> Result<f64> {
    let f = check_score(f)?;
    Ok(lambda as f64 * f)
}

/// σ² = λ²(1 − f²).
pub fn variance_of_score(f: f64, lambda: usize) -> Result<f64> {
    let f = check_score(f)?;
    let l = lambda as f64;
    Ok(l * l * (1.0 - f * f))
}

/// Standardized third central moment, −2f/√(1−f²). Undefined at the
/// deterministic endpoints f = ±1.
pub fn skewness_of_score(f: f64) -> Result<f64> {
    let f = check_score(f)?;
    let spread = 1.0 - f * f;
    if spread <= 0.0 {
        return Err(Error::DegenerateDistribution);
    }
    Ok(-2.0 * f / spread.sqrt())
}

/// Full moment set of a concrete outcome distribution at width λ.
pub fn moments_from_distribution(
    p: &OutcomeDistribution,
    lambda: usize,
) -> Result<MomentsReport> {
    if lambda == 0 {
        return Err(Error::LabelWidthUnsupported { width: 0 });
    }
    let f = p.signed_sum();
    let l = lambda as f64;
    let mean = l * f;
    Ok(MomentsReport {
        mean,
        second_moment: l * l,
        third_moment: l * l * mean,
        variance: l * l * (1.0 - f * f).max(0.0),
        skewness: skewness_of_score(f).ok(),
        label_width: lambda,
    })
}

/// Chebyshev bound on the probability that the empirical score of
/// `shots` repetitions lands more than `epsilon` from f, capped at 1.
pub fn chebyshev_bound(f: f64, shots: u64, epsilon: f64) -> Result<f64> {
    let f = check_score(f)?;
    if shots == 0 {
        return Err(Error::InsufficientShots { got: 0, need: 1 });
    }
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidParameter {
            detail: format!("epsilon must be positive, got {epsilon}"),
        });
    }
    Ok(((1.0 - f * f) / (shots as f64 * epsilon * epsilon)).min(1.0))
}

/// Shots needed so that Chebyshev bounds the chance of the empirical
/// mean straying by more than ⟨M⟩/c at δ:
///
/// `k = ⌈(1 − f²)·c²/(δ·f²)⌉`, floored at 1.
///
/// λ is accepted to match the report shape but cancels from the bound,
/// so plans at every width are identical.
pub fn plan_shots(f: f64, lambda: usize, c: f64, delta: f64) -> Result<ShotPlan> {
    if lambda == 0 {
        return Err(Error::LabelWidthUnsupported { width: 0 });
    }
    let f = check_score(f)?;
    if c <= 1.0 || !c.is_finite() {
        return Err(Error::InvalidParameter {
            detail: format!("precision ratio must exceed 1, got {c}"),
        });
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter {
            detail: format!("failure bound must lie in (0,1), got {delta}"),
        });
    }
    if f.abs() < DECISION_TOL {
        return Err(Error::UndecidableScore);
    }
    let f2 = f * f;
    let raw = (1.0 - f2) * c * c / (delta * f2);
    let shots = raw.ceil().max(1.0) as u64;
    Ok(ShotPlan {
        shots,
        epsilon: f.abs() / c,
        c,
        delta,
    })
}
