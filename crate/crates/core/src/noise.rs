//! Pauli noise on the final classifier state and its cost in shots.
//!
//! Any Pauli channel leaves the measured σ_z-type expectation intact up
//! to a constant factor s determined by the ancilla factor of each
//! Pauli string: terms with I or Z on the ancilla commute with σ_z
//! there, X and Y anticommute. Positive s costs a 1/s² repetition
//! overhead, negative s additionally flips the decision rule, and s = 0
//! erases the signal entirely.

use crate::circuits::gates;
use crate::qstate::{DensityMatrix, Pauli, PauliString, QState};
use crate::{Error, Result};

/// Weight tolerance for channel coefficient sums.
pub const COEFFICIENT_TOL: f64 = 1e-12;

/// Scales below this are treated as an erased signal.
pub const SCALE_FLOOR: f64 = 1e-12;

/// One channel component: apply `string` with probability `weight`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub weight: f64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(weight: f64, string: PauliString) -> Self {
        PauliTerm { weight, string }
    }
}

/// Either ancilla-only depolarizing noise at rate p, or an arbitrary
/// Pauli channel over all qubits of the state it is applied to.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseSpec {
    Depolarizing { p: f64 },
    PauliChannel { terms: Vec<PauliTerm> },
}

impl NoiseSpec {
    pub fn depolarizing(p: f64) -> Self {
        NoiseSpec::Depolarizing { p }
    }

    pub fn pauli_channel(terms: Vec<PauliTerm>) -> Self {
        NoiseSpec::PauliChannel { terms }
    }

    /// Checks rates, coefficient sums and string lengths against a
    /// target qubit count.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        match self {
            NoiseSpec::Depolarizing { p } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::RateOutOfRange { rate: *p });
                }
            }
            NoiseSpec::PauliChannel { terms } => {
                if terms.is_empty() {
                    return Err(Error::InvalidCoefficients {
                        detail: "channel needs at least one term".into(),
                    });
                }
                for term in terms {
                    if term.weight < 0.0 || !term.weight.is_finite() {
                        return Err(Error::InvalidCoefficients {
                            detail: format!("negative or non-finite weight {}", term.weight),
                        });
                    }
                    if term.string.len() != num_qubits {
                        return Err(Error::DimensionMismatch {
                            left: term.string.len(),
                            right: num_qubits,
                        });
                    }
                }
                let sum: f64 = terms.iter().map(|t| t.weight).sum();
                if (sum - 1.0).abs() > COEFFICIENT_TOL {
                    return Err(Error::InvalidCoefficients {
                        detail: format!("weights sum to {sum}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Effective rescaling of the measured expectation: the coefficient
/// mass sorted by the Pauli factor on the ancilla (qubit 0 under the
/// `ancilla | …` layout convention) and the resulting factor
/// s = C_I + C_Z − C_X − C_Y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleReport {
    pub scale: f64,
    pub c_identity: f64,
    pub c_x: f64,
    pub c_y: f64,
    pub c_z: f64,
    /// 1/s², the repetition overhead; `None` when the signal is gone.
    pub multiplier: Option<f64>,
    /// s < 0: magnitudes survive but the decision rule must be negated.
    /// Surfaced, never silently applied.
    pub sign_flipped: bool,
}

/// Σ_k E_k ρ E_k† with E = {√(1−3p/4)·I, √(p/4)·σ_x, √(p/4)·σ_y,
/// √(p/4)·σ_z} on the ancilla qubit.
pub fn depolarize_ancilla(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::RateOutOfRange { rate: p });
    }
    let layout = rho.layout();
    let qubit = layout.qubit_offset(crate::circuits::ANCILLA)?;
    let n = rho.num_qubits();
    let dim = rho.dim();
    let kraus = [
        gates::scale_gate(&gates::pauli_gate(Pauli::I), (1.0 - 3.0 * p / 4.0).sqrt()),
        gates::scale_gate(&gates::pauli_gate(Pauli::X), (p / 4.0).sqrt()),
        gates::scale_gate(&gates::pauli_gate(Pauli::Y), (p / 4.0).sqrt()),
        gates::scale_gate(&gates::pauli_gate(Pauli::Z), (p / 4.0).sqrt()),
    ];
    let mut total = vec![num_complex::Complex64::new(0.0, 0.0); dim * dim];
    for k in &kraus {
        let mut branch = rho.entries().to_vec();
        gates::apply_gate1_density(&mut branch, dim, n, qubit, k);
        for (slot, value) in total.iter_mut().zip(&branch) {
            *slot += value;
        }
    }
    DensityMatrix::new(total, layout.clone())
}

fn conjugate_by_string(rho: &DensityMatrix, string: &PauliString) -> Vec<num_complex::Complex64> {
    let dim = rho.dim();
    let mut out = vec![num_complex::Complex64::new(0.0, 0.0); dim * dim];
    let mapped: Vec<(usize, num_complex::Complex64)> =
        (0..dim).map(|i| string.apply_to_basis(i)).collect();
    for (r, &(pr, phase_r)) in mapped.iter().enumerate() {
        for (c, &(pc, phase_c)) in mapped.iter().enumerate() {
            out[pr * dim + pc] = phase_r * phase_c.conj() * rho.entry(r, c);
        }
    }
    out
}

/// Σ_j c_j P_j ρ P_j†. A depolarizing spec is expanded into its four
/// ancilla terms, which makes this an independent route to the same
/// channel as [`depolarize_ancilla`].
pub fn apply_pauli_channel(rho: &DensityMatrix, spec: &NoiseSpec) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    spec.validate(n)?;
    let terms = expand_terms(spec, n, rho.layout().qubit_offset(crate::circuits::ANCILLA).ok())?;
    let dim = rho.dim();
    let mut total = vec![num_complex::Complex64::new(0.0, 0.0); dim * dim];
    for term in &terms {
        if term.weight == 0.0 {
            continue;
        }
        let branch = conjugate_by_string(rho, &term.string);
        for (slot, value) in total.iter_mut().zip(&branch) {
            *slot += term.weight * value;
        }
    }
    DensityMatrix::new(total, rho.layout().clone())
}

fn expand_terms(
    spec: &NoiseSpec,
    num_qubits: usize,
    ancilla: Option<usize>,
) -> Result<Vec<PauliTerm>> {
    match spec {
        NoiseSpec::PauliChannel { terms } => Ok(terms.clone()),
        NoiseSpec::Depolarizing { p } => {
            let qubit = ancilla.ok_or_else(|| Error::LayoutMismatch {
                detail: "depolarizing noise targets the ancilla register".into(),
            })?;
            let single = |factor| PauliString::single(num_qubits, qubit, factor);
            Ok(vec![
                PauliTerm::new(1.0 - 3.0 * p / 4.0, single(Pauli::I)?),
                PauliTerm::new(p / 4.0, single(Pauli::X)?),
                PauliTerm::new(p / 4.0, single(Pauli::Y)?),
                PauliTerm::new(p / 4.0, single(Pauli::Z)?),
            ])
        }
    }
}

/// Applies the channel to a pure or mixed state; the output is mixed.
pub fn apply_noise(state: &QState, spec: &NoiseSpec) -> Result<DensityMatrix> {
    let rho = state.to_density();
    match spec {
        NoiseSpec::Depolarizing { p } => depolarize_ancilla(&rho, *p),
        NoiseSpec::PauliChannel { .. } => apply_pauli_channel(&rho, spec),
    }
}

/// Sorts the coefficient mass by each term's ancilla factor and reports
/// the resulting expectation scale. The ancilla is the leading qubit of
/// the strings, matching the state layout convention.
pub fn effective_scale(spec: &NoiseSpec) -> Result<ScaleReport> {
    let (c_identity, c_x, c_y, c_z) = match spec {
        NoiseSpec::Depolarizing { p } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::RateOutOfRange { rate: *p });
            }
            (1.0 - 3.0 * p / 4.0, p / 4.0, p / 4.0, p / 4.0)
        }
        NoiseSpec::PauliChannel { terms } => {
            if terms.is_empty() {
                return Err(Error::InvalidCoefficients {
                    detail: "channel needs at least one term".into(),
                });
            }
            let mut sums = (0.0, 0.0, 0.0, 0.0);
            for term in terms {
                if term.weight < 0.0 || !term.weight.is_finite() {
                    return Err(Error::InvalidCoefficients {
                        detail: format!("negative or non-finite weight {}", term.weight),
                    });
                }
                match term.string.factor(0) {
                    Pauli::I => sums.0 += term.weight,
                    Pauli::X => sums.1 += term.weight,
                    Pauli::Y => sums.2 += term.weight,
                    Pauli::Z => sums.3 += term.weight,
                }
            }
            let total = sums.0 + sums.1 + sums.2 + sums.3;
            if (total - 1.0).abs() > COEFFICIENT_TOL {
                return Err(Error::InvalidCoefficients {
                    detail: format!("weights sum to {total}"),
                });
            }
            sums
        }
    };
    let scale = c_identity + c_z - c_x - c_y;
    Ok(ScaleReport {
        scale,
        c_identity,
        c_x,
        c_y,
        c_z,
        multiplier: (scale.abs() >= SCALE_FLOOR).then(|| 1.0 / (scale * scale)),
        sign_flipped: scale < -SCALE_FLOOR,
    })
}

/// Repetition multiplier 1/s².
pub fn noise_overhead(scale: f64) -> Result<f64> {
    if scale.abs() < SCALE_FLOOR {
        return Err(Error::SignDestroyed);
    }
    Ok(1.0 / (scale * scale))
}

/// ⌈base/s²⌉: the shot budget that restores the noiseless failure
/// bound under a channel of scale s.
pub fn planned_shots_under_noise(base_shots: u64, scale: f64) -> Result<u64> {
    let multiplier = noise_overhead(scale)?;
    Ok((base_shots as f64 * multiplier).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{
        ancilla_marginal, apply_swap_test, build_stc_state, outcome_distribution,
        reduce_to_single_qubit, LABEL,
    };
    use crate::dataset::{ClassifierSpec, LabeledDataset};
    use crate::qstate::{expectation, Observable};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn toy_final_state() -> DensityMatrix {
        let data = LabeledDataset::toy(FRAC_PI_2);
        let rho = build_stc_state(&data, &ClassifierSpec::stc(1)).unwrap();
        apply_swap_test(&rho, 1).unwrap()
    }

    fn ancilla_z(rho: &DensityMatrix) -> f64 {
        let obs = Observable::ancilla_z(rho.layout()).unwrap();
        expectation(&QState::Mixed(rho.clone()), &obs).unwrap()
    }

    #[test]
    fn zero_rate_is_identity() {
        let rho = toy_final_state();
        let out = depolarize_ancilla(&rho, 0.0).unwrap();
        for (a, b) in rho.entries().iter().zip(out.entries()) {
            assert_relative_eq!(a.re, b.re, epsilon = 1e-15);
            assert_relative_eq!(a.im, b.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn full_depolarization_kills_the_signal() {
        let rho = toy_final_state();
        let out = depolarize_ancilla(&rho, 1.0).unwrap();
        assert_relative_eq!(ancilla_z(&out), 0.0, epsilon = 1e-12);
        let (p0, p1) = ancilla_marginal(&QState::Mixed(out)).unwrap();
        assert_relative_eq!(p0, 0.5, epsilon = 1e-12);
        assert_relative_eq!(p1, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn partial_depolarization_rescales_by_one_minus_p() {
        // After folding the label into the ancilla, the ancilla σ_z
        // expectation is the full score 0.5, so p = 0.2 must leave 0.4.
        let reduced = reduce_to_single_qubit(&QState::Mixed(toy_final_state())).unwrap();
        let rho = reduced.to_density();
        assert_relative_eq!(ancilla_z(&rho), 0.5, epsilon = 1e-12);
        let noisy = depolarize_ancilla(&rho, 0.2).unwrap();
        assert_relative_eq!(ancilla_z(&noisy), 0.4, epsilon = 1e-12);

        // The same factor applies to the joint statistics of the full state.
        let noisy_full = depolarize_ancilla(&toy_final_state(), 0.2).unwrap();
        let dist = outcome_distribution(&QState::Mixed(noisy_full), 1).unwrap();
        assert_relative_eq!(dist.signed_sum(), 0.4, epsilon = 1e-12);
    }

    #[test]
    fn identity_channel_is_identity() {
        let rho = toy_final_state();
        let spec = NoiseSpec::pauli_channel(vec![PauliTerm::new(
            1.0,
            PauliString::identity(rho.num_qubits()),
        )]);
        let out = apply_pauli_channel(&rho, &spec).unwrap();
        for (a, b) in rho.entries().iter().zip(out.entries()) {
            assert_relative_eq!(a.re, b.re, epsilon = 1e-15);
            assert_relative_eq!(a.im, b.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn ancilla_bit_flip_mixture_rescales() {
        let rho = toy_final_state();
        let n = rho.num_qubits();
        let spec = NoiseSpec::pauli_channel(vec![
            PauliTerm::new(0.9, PauliString::identity(n)),
            PauliTerm::new(0.1, PauliString::single(n, 0, Pauli::X).unwrap()),
        ]);
        let before = outcome_distribution(&QState::Mixed(rho.clone()), 1)
            .unwrap()
            .signed_sum();
        let after = outcome_distribution(&QState::Mixed(apply_pauli_channel(&rho, &spec).unwrap()), 1)
            .unwrap()
            .signed_sum();
        assert_relative_eq!(before, 0.5, epsilon = 1e-12);
        assert_relative_eq!(after, 0.4, epsilon = 1e-12);
    }

    #[test]
    fn non_ancilla_factors_leave_the_ancilla_marginal_alone() {
        let reduced = reduce_to_single_qubit(&QState::Mixed(toy_final_state()))
            .unwrap()
            .to_density();
        let n = reduced.num_qubits();
        let label_qubit = reduced.layout().qubit_offset(LABEL).unwrap();
        let spec = NoiseSpec::pauli_channel(vec![
            PauliTerm::new(0.7, PauliString::identity(n)),
            PauliTerm::new(0.3, PauliString::single(n, label_qubit, Pauli::X).unwrap()),
        ]);
        let out = apply_pauli_channel(&reduced, &spec).unwrap();
        assert_relative_eq!(ancilla_z(&out), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn kraus_and_string_routes_agree() {
        let rho = toy_final_state();
        for p in [0.1, 0.35, 0.8] {
            let via_kraus = depolarize_ancilla(&rho, p).unwrap();
            let via_strings =
                apply_pauli_channel(&rho, &NoiseSpec::depolarizing(p)).unwrap();
            for (a, b) in via_kraus.entries().iter().zip(via_strings.entries()) {
                assert_relative_eq!(a.re, b.re, epsilon = 1e-12);
                assert_relative_eq!(a.im, b.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn channels_preserve_trace_and_positivity() {
        let rho = toy_final_state();
        let n = rho.num_qubits();
        let spec = NoiseSpec::pauli_channel(vec![
            PauliTerm::new(0.6, PauliString::identity(n)),
            PauliTerm::new(0.25, PauliString::single(n, 0, Pauli::Y).unwrap()),
            PauliTerm::new(0.15, PauliString::parse(&"Z".repeat(n)).unwrap()),
        ]);
        let out = apply_pauli_channel(&rho, &spec).unwrap();
        assert_relative_eq!(out.trace().re, 1.0, epsilon = 1e-12);
        assert!(out.min_eigenvalue() >= -1e-10);
    }

    #[test]
    fn scale_report_examples() {
        let depol = effective_scale(&NoiseSpec::depolarizing(0.2)).unwrap();
        assert_relative_eq!(depol.scale, 0.8, epsilon = 1e-14);
        assert_relative_eq!(depol.multiplier.unwrap(), 1.5625, epsilon = 1e-12);
        assert!(!depol.sign_flipped);

        let z_half = NoiseSpec::pauli_channel(vec![
            PauliTerm::new(0.5, PauliString::identity(3)),
            PauliTerm::new(0.5, PauliString::single(3, 0, Pauli::Z).unwrap()),
        ]);
        let report = effective_scale(&z_half).unwrap();
        assert_relative_eq!(report.scale, 1.0, epsilon = 1e-14);

        let flip = NoiseSpec::pauli_channel(vec![PauliTerm::new(
            1.0,
            PauliString::single(2, 0, Pauli::X).unwrap(),
        )]);
        let report = effective_scale(&flip).unwrap();
        assert_relative_eq!(report.scale, -1.0, epsilon = 1e-14);
        assert!(report.sign_flipped);
        assert_relative_eq!(report.multiplier.unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn scale_matches_channel_action() {
        let rho = toy_final_state();
        let n = rho.num_qubits();
        let spec = NoiseSpec::pauli_channel(vec![
            PauliTerm::new(0.5, PauliString::identity(n)),
            PauliTerm::new(0.2, PauliString::single(n, 0, Pauli::X).unwrap()),
            PauliTerm::new(0.2, PauliString::single(n, 0, Pauli::Z).unwrap()),
            PauliTerm::new(0.1, PauliString::single(n, 2, Pauli::Y).unwrap()),
        ]);
        let s = effective_scale(&spec).unwrap().scale;
        let before = ancilla_z(&rho);
        let after = ancilla_z(&apply_pauli_channel(&rho, &spec).unwrap());
        assert_relative_eq!(after, s * before, epsilon = 1e-10);
    }

    #[test]
    fn overhead_arithmetic() {
        assert_relative_eq!(noise_overhead(1.0).unwrap(), 1.0);
        assert_relative_eq!(noise_overhead(0.8).unwrap(), 1.5625, epsilon = 1e-12);
        assert!(matches!(noise_overhead(0.0), Err(Error::SignDestroyed)));
        assert_eq!(planned_shots_under_noise(120, 0.5).unwrap(), 480);
        assert_eq!(planned_shots_under_noise(120, 0.8).unwrap(), 188);
        assert_eq!(planned_shots_under_noise(120, 1.0).unwrap(), 120);
    }

    #[test]
    fn validation_rejects_bad_specs() {
        assert!(matches!(
            effective_scale(&NoiseSpec::depolarizing(1.2)),
            Err(Error::RateOutOfRange { .. })
        ));
        let bad_sum = NoiseSpec::pauli_channel(vec![PauliTerm::new(
            0.7,
            PauliString::identity(2),
        )]);
        assert!(matches!(
            effective_scale(&bad_sum),
            Err(Error::InvalidCoefficients { .. })
        ));
        let wrong_len = NoiseSpec::pauli_channel(vec![PauliTerm::new(
            1.0,
            PauliString::identity(3),
        )]);
        let rho = toy_final_state();
        assert!(matches!(
            apply_pauli_channel(&rho, &wrong_len),
            Err(Error::DimensionMismatch { .. })
        ));
        // ancilla register requirement for depolarizing noise
        let bare = DensityMatrix::new(
            vec![
                num_complex::Complex64::new(1.0, 0.0),
                num_complex::Complex64::new(0.0, 0.0),
                num_complex::Complex64::new(0.0, 0.0),
                num_complex::Complex64::new(0.0, 0.0),
            ],
            crate::qstate::RegisterLayout::single("q", 1),
        )
        .unwrap();
        assert!(depolarize_ancilla(&bare, 0.1).is_err());
    }
}
