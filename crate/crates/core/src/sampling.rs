//! Finite-shot measurement simulation and empirical decision rules.
//!
//! Randomness is ChaCha8 keyed by an explicit 64-bit seed, so every
//! record is reproducible. Repetition sweeps derive one independent
//! stream per run by offsetting the base seed with the run counter.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::circuits::OutcomeDistribution;
use crate::dataset::Label;
use crate::moments::{skewness_of_score, MomentsReport};
use crate::{Error, Result};

/// Shot count used when nothing else is configured.
pub const DEFAULT_SHOTS: u64 = 8192;

/// Measured counts per outcome (ancilla, logical label), in the same
/// order as [`OutcomeDistribution`]: (0,0̄), (0,1̄), (1,0̄), (1,1̄).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotRecord {
    pub counts: [u64; 4],
    pub shots: u64,
    pub seed: u64,
}

impl ShotRecord {
    /// Signed count sum c(0,0̄) − c(0,1̄) − c(1,0̄) + c(1,1̄), exact.
    fn signed_counts(&self) -> i128 {
        self.counts[0] as i128 - self.counts[1] as i128 - self.counts[2] as i128
            + self.counts[3] as i128
    }
}

/// Draws `shots` outcomes from the distribution. The multinomial is
/// realized as a chain of binomials over the remaining mass, which
/// costs O(1) per category regardless of the shot count.
pub fn sample(p: &OutcomeDistribution, shots: u64, seed: u64) -> Result<ShotRecord> {
    if shots == 0 {
        return Err(Error::InsufficientShots { got: 0, need: 1 });
    }
    let probs = p.probabilities();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 4];
    let mut remaining = shots;
    let mut rest = 1.0_f64;
    for i in 0..3 {
        if remaining == 0 {
            break;
        }
        let q = if rest > 0.0 {
            (probs[i] / rest).clamp(0.0, 1.0)
        } else {
            0.0
        };
        counts[i] = if q >= 1.0 {
            remaining
        } else {
            Binomial::new(remaining, q)
                .map_err(|e| Error::InvalidDistribution {
                    detail: e.to_string(),
                })?
                .sample(&mut rng)
        };
        remaining -= counts[i];
        rest -= probs[i];
    }
    counts[3] = remaining;
    Ok(ShotRecord {
        counts,
        shots,
        seed,
    })
}

/// Relative frequencies of the four outcomes.
pub fn empirical_distribution(record: &ShotRecord) -> [f64; 4] {
    let total = record.shots as f64;
    record.counts.map(|c| c as f64 / total)
}

/// Empirical ⟨M_λ⟩, the signed relative frequency scaled by λ.
pub fn empirical_mean(record: &ShotRecord, lambda: usize) -> f64 {
    lambda as f64 * record.signed_counts() as f64 / record.shots as f64
}

/// Sign of the empirical mean. Computed on the integer counts, so
/// exact ties abstain and the width (a positive scale) never changes
/// the outcome.
pub fn decide_mean(record: &ShotRecord, _lambda: usize) -> Label {
    match record.signed_counts() {
        s if s > 0 => Label::Zero,
        s if s < 0 => Label::One,
        _ => Label::Abstain,
    }
}

/// Majority vote over the per-shot outcome sign (−1)^{i+ȷ̄}, defined
/// for a single label qubit. For two-valued outcomes this always
/// agrees with the mean rule; it is reported separately because the
/// rules can diverge under readout models outside this crate's scope.
pub fn decide_majority(record: &ShotRecord, lambda: usize) -> Result<Label> {
    if lambda != 1 {
        return Err(Error::LabelWidthUnsupported { width: lambda });
    }
    let plus = record.counts[0] + record.counts[3];
    let minus = record.counts[1] + record.counts[2];
    Ok(if plus > minus {
        Label::Zero
    } else if plus < minus {
        Label::One
    } else {
        Label::Abstain
    })
}

/// Plug-in moment estimates from the relative frequencies. Needs at
/// least two shots for a meaningful spread.
pub fn empirical_moments(record: &ShotRecord, lambda: usize) -> Result<MomentsReport> {
    if lambda == 0 {
        return Err(Error::LabelWidthUnsupported { width: 0 });
    }
    if record.shots < 2 {
        return Err(Error::InsufficientShots {
            got: record.shots,
            need: 2,
        });
    }
    let f = record.signed_counts() as f64 / record.shots as f64;
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
