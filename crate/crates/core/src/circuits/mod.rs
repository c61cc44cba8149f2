//! Classifier circuit construction and simulation.
//!
//! Layout convention for classifier states, most significant register
//! first: `ancilla | data blocks | label | index`. The amplitude
//! classifier keeps one data register; the swap-test classifier keeps
//! `2k` blocks named `test_i`/`train_i` for copies `i = 1..=k`.

pub(crate) mod gates;

use num_complex::Complex64;

use crate::dataset::{ClassifierSpec, LabeledDataset, Variant};
use crate::qstate::{
    ceil_log2, DensityMatrix, QState, Register, RegisterLayout, StateVector,
};
use crate::{Error, Result};

pub const ANCILLA: &str = "ancilla";
pub const DATA: &str = "data";
pub const LABEL: &str = "label";
pub const INDEX: &str = "index";

/// Probability mass allowed on label patterns outside the logical
/// codewords |0…0⟩ and |1…1⟩.
pub const LEAKAGE_TOL: f64 = 1e-12;

/// Tolerance on the total mass of an outcome distribution.
pub const DISTRIBUTION_TOL: f64 = 1e-12;

pub fn test_block(copy: usize) -> String {
    format!("test_{copy}")
}

pub fn train_block(copy: usize) -> String {
    format!("train_{copy}")
}

/// The joint measurement statistics p(ancilla, logical label) of a
/// final classifier state, indexed by ancilla bit i and logical label
/// value ȷ̄.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    p: [f64; 4],
}

impl OutcomeDistribution {
    /// Entries ordered p(0,0̄), p(0,1̄), p(1,0̄), p(1,1̄). Values may dip
    /// below zero by at most the tolerance (rounding), and are clamped.
    pub fn new(p: [f64; 4]) -> Result<Self> {
        let mut clamped = [0.0; 4];
        for (slot, &value) in clamped.iter_mut().zip(&p) {
            if value.is_nan() || value < -DISTRIBUTION_TOL {
                return Err(Error::InvalidDistribution {
                    detail: format!("negative probability {value}"),
                });
            }
            *slot = value.max(0.0);
        }
        let total: f64 = clamped.iter().sum();
        if (total - 1.0).abs() > DISTRIBUTION_TOL {
            return Err(Error::InvalidDistribution {
                detail: format!("total probability {total}"),
            });
        }
        Ok(OutcomeDistribution { p: clamped })
    }

    /// Embeds a bare ancilla marginal as the λ=1 distribution with the
    /// label collapsed to 0̄, the form produced by the single-qubit
    /// reduction.
    pub fn from_ancilla_marginal(p0: f64) -> Result<Self> {
        OutcomeDistribution::new([p0, 0.0, 1.0 - p0, 0.0])
    }

    pub fn probability(&self, ancilla: u8, label: u8) -> f64 {
        self.p[(((ancilla & 1) << 1) | (label & 1)) as usize]
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }

    /// p(0,0̄) − p(0,1̄) − p(1,0̄) + p(1,1̄), the expectation of the
    /// product of the ancilla sign and the logical label sign.
    pub fn signed_sum(&self) -> f64 {
        self.p[0] - self.p[1] - self.p[2] + self.p[3]
    }

    /// Convex mixture of distributions.
    pub fn mix(parts: &[(f64, OutcomeDistribution)]) -> Result<Self> {
        let mut p = [0.0; 4];
        for (weight, dist) in parts {
            for (slot, value) in p.iter_mut().zip(&dist.p) {
                *slot += weight * value;
            }
        }
        OutcomeDistribution::new(p)
    }
}

fn logical_label(y: u8, lambda: usize) -> usize {
    if y == 0 {
        0
    } else {
        (1 << lambda) - 1
    }
}

fn ancilla_qubit(layout: &RegisterLayout) -> Result<usize> {
    let width = layout.width(ANCILLA)?;
    if width != 1 {
        return Err(Error::LayoutMismatch {
            detail: format!("ancilla register must hold one qubit, found {width}"),
        });
    }
    layout.qubit_offset(ANCILLA)
}

/// Σ_j √a_j (cos(θ₀/2)|0⟩|x_j⟩ + e^{iφ} sin(θ₀/2)|1⟩|x̃⟩)|ȳ_j⟩|j⟩,
/// the amplitude-interference state with the ancilla preparation
/// already folded in. Interference (the final y-rotation) is applied
/// separately.
pub fn build_htc_state(data: &LabeledDataset, spec: &ClassifierSpec) -> Result<StateVector> {
    spec.validate()?;
    if spec.variant != Variant::Htc {
        return Err(Error::InvalidParameter {
            detail: "amplitude-interference state requested for a swap-test spec".into(),
        });
    }
    let training = data.pure_training()?;
    let test = data.pure_test()?;
    let n = data.data_qubits();
    let lambda = spec.label_width;
    let index_qubits = ceil_log2(data.len());
    let layout = RegisterLayout::new(vec![
        Register::new(ANCILLA, 1),
        Register::new(DATA, n),
        Register::new(LABEL, lambda),
        Register::new(INDEX, index_qubits),
    ])?;

    let half = spec.angles.theta0 / 2.0;
    let keep = Complex64::new(half.cos(), 0.0);
    let swap = Complex64::from_polar(half.sin(), spec.angles.phi);

    let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
    let place = |ancilla: usize, d: usize, lab: usize, j: usize| {
        ((((ancilla << n) | d) << lambda | lab) << index_qubits) | j
    };
    for (j, x) in training.iter().enumerate() {
        let root = Complex64::new(data.weights()[j].sqrt(), 0.0);
        let lab = logical_label(data.labels()[j], lambda);
        for (d, amp) in x.amplitudes().iter().enumerate() {
            amps[place(0, d, lab, j)] += root * keep * amp;
        }
        for (d, amp) in test.amplitudes().iter().enumerate() {
            amps[place(1, d, lab, j)] += root * swap * amp;
        }
    }
    StateVector::new(amps, layout)
}

fn stc_registers(n: usize, copies: usize, lambda: usize) -> Vec<Register> {
    let mut regs = vec![Register::new(ANCILLA, 1)];
    for i in 1..=copies {
        regs.push(Register::new(test_block(i), n));
        regs.push(Register::new(train_block(i), n));
    }
    regs.push(Register::new(LABEL, lambda));
    regs
}

fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() * b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.norm_sqr() == 0.0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

fn kron_mat(a: &[Complex64], da: usize, b: &[Complex64], db: usize) -> Vec<Complex64> {
    let dim = da * db;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for ra in 0..da {
        for ca in 0..da {
            let x = a[ra * da + ca];
            if x.norm_sqr() == 0.0 {
                continue;
            }
            for rb in 0..db {
                for cb in 0..db {
                    out[(ra * db + rb) * dim + (ca * db + cb)] = x * b[rb * db + cb];
                }
            }
        }
    }
    out
}

/// |0⟩⟨0| ⊗ Σ_j a_j (ρ̃ ⊗ ρ_j)^{⊗k} ⊗ |ȳ_j⟩⟨ȳ_j| ⊗ |j⟩⟨j|, the full
/// swap-test input as one density matrix with the index register
/// materialized. Exponential in k·n; intended as the reference path at
/// small sizes, while [`simulate`] runs branch by branch.
pub fn build_stc_state(data: &LabeledDataset, spec: &ClassifierSpec) -> Result<DensityMatrix> {
    spec.validate()?;
    if spec.variant != Variant::Stc {
        return Err(Error::InvalidParameter {
            detail: "swap-test state requested for an amplitude-interference spec".into(),
        });
    }
    let n = data.data_qubits();
    let lambda = spec.label_width;
    let index_qubits = ceil_log2(data.len());
    let mut regs = stc_registers(n, spec.copies, lambda);
    regs.push(Register::new(INDEX, index_qubits));
    let layout = RegisterLayout::new(regs)?;
    let dim = layout.dim();
    let dn = 1usize << n;

    let test_rho = data.test().to_density();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..data.len() {
        let rho_j = data.training()[j].to_density();
        let unit = kron_mat(test_rho.entries(), dn, rho_j.entries(), dn);
        let mut block = unit.clone();
        let mut bdim = dn * dn;
        for _ in 1..spec.copies {
            block = kron_mat(&block, bdim, &unit, dn * dn);
            bdim *= dn * dn;
        }
        let lab = logical_label(data.labels()[j], lambda);
        let weight = data.weights()[j];
        let place = |b: usize| (((b << lambda) | lab) << index_qubits) | j;
        for r in 0..bdim {
            for c in 0..bdim {
                let v = block[r * bdim + c];
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                entries[place(r) * dim + place(c)] += weight * v;
            }
        }
    }
    DensityMatrix::new(entries, layout)
}

fn apply_ancilla_gate(state: &QState, g: &gates::Gate1) -> Result<QState> {
    let qubit = ancilla_qubit(state.layout())?;
    Ok(match state {
        QState::Pure(s) => {
            let mut s = s.clone();
            let n = s.num_qubits();
            gates::apply_gate1_vec(s.amps_mut(), n, qubit, g);
            QState::Pure(s)
        }
        QState::Mixed(m) => {
            let mut m = m.clone();
            let (dim, n) = (m.dim(), m.num_qubits());
            gates::apply_gate1_density(m.entries_mut(), dim, n, qubit, g);
            QState::Mixed(m)
        }
    })
}

/// Rotates the ancilla from |0⟩ into cos(θ₀/2)|0⟩ + e^{iφ} sin(θ₀/2)|1⟩.
pub fn apply_ancilla_preparation(state: &QState, theta0: f64, phi: f64) -> Result<QState> {
    apply_ancilla_gate(state, &gates::ancilla_preparation(theta0, phi))
}

/// R_y(θ₁) on the ancilla, the final interference rotation.
pub fn apply_interference(state: &QState, theta1: f64) -> Result<QState> {
    apply_ancilla_gate(state, &gates::ry(theta1))
}

/// The k controlled block swaps test_i ↔ train_i, conditioned on the
/// ancilla.
pub fn apply_controlled_swaps(state: &QState, copies: usize) -> Result<QState> {
    let layout = state.layout().clone();
    let anc = ancilla_qubit(&layout)?;
    let mut out = state.clone();
    for i in 1..=copies {
        let test_name = test_block(i);
        let train_name = train_block(i);
        let offset_a = layout.qubit_offset(&test_name)?;
        let offset_b = layout.qubit_offset(&train_name)?;
        let width = layout.width(&test_name)?;
        if layout.width(&train_name)? != width {
            return Err(Error::LayoutMismatch {
                detail: format!("copy {i} blocks differ in width"),
            });
        }
        match &mut out {
            QState::Pure(s) => {
                let n = s.num_qubits();
                gates::apply_cswap_vec(s.amps_mut(), n, anc, offset_a, offset_b, width);
            }
            QState::Mixed(m) => {
                let (dim, n) = (m.dim(), m.num_qubits());
                gates::apply_cswap_density(m.entries_mut(), dim, n, anc, offset_a, offset_b, width);
            }
        }
    }
    Ok(out)
}

/// The literal swap test: H on the ancilla, the k controlled swaps,
/// H again. Requires the ancilla to start in |0⟩.
pub fn apply_swap_test(state: &DensityMatrix, copies: usize) -> Result<DensityMatrix> {
    let anc = ancilla_qubit(state.layout())?;
    let mask = 1usize << (state.num_qubits() - 1 - anc);
    let excited: f64 = (0..state.dim())
        .filter(|r| r & mask != 0)
        .map(|r| state.probability(r))
        .sum();
    if excited > LEAKAGE_TOL {
        return Err(Error::LayoutMismatch {
            detail: format!("swap test expects the ancilla in |0⟩, found population {excited:e}"),
        });
    }
    let staged = QState::Mixed(state.clone());
    let staged = apply_ancilla_gate(&staged, &gates::hadamard())?;
    let staged = apply_controlled_swaps(&staged, copies)?;
    let staged = apply_ancilla_gate(&staged, &gates::hadamard())?;
    match staged {
        QState::Mixed(m) => Ok(m),
        QState::Pure(_) => unreachable!("density input stays density"),
    }
}

/// CNOT on the ancilla controlled by the (single) label qubit. The
/// subsequent ancilla-only σ_z expectation equals the joint
/// σ_z(ancilla)σ_z(label) expectation of the input.
pub fn reduce_to_single_qubit(state: &QState) -> Result<QState> {
    let layout = state.layout().clone();
    let width = layout.width(LABEL)?;
    if width != 1 {
        return Err(Error::LabelWidthUnsupported { width });
    }
    let anc = ancilla_qubit(&layout)?;
    let label_qubit = layout.qubit_offset(LABEL)?;
    let mut out = state.clone();
    match &mut out {
        QState::Pure(s) => {
            let n = s.num_qubits();
            gates::apply_cx_vec(s.amps_mut(), n, label_qubit, anc);
        }
        QState::Mixed(m) => {
            let (dim, n) = (m.dim(), m.num_qubits());
            gates::apply_cx_density(m.entries_mut(), dim, n, label_qubit, anc);
        }
    }
    Ok(out)
}

/// Measurement statistics p(ancilla, logical label) of a final state.
/// Label patterns other than |0…0⟩ and |1…1⟩ are unreachable by
/// construction; any such mass beyond tolerance is an error.
pub fn outcome_distribution(state: &QState, lambda: usize) -> Result<OutcomeDistribution> {
    let layout = state.layout();
    let width = layout.width(LABEL)?;
    if width != lambda {
        return Err(Error::LabelWidthUnsupported { width: lambda });
    }
    let anc_mask = 1usize << (layout.total_qubits() - 1 - ancilla_qubit(layout)?);
    let shift = layout.shift(LABEL)?;
    let ones = (1usize << lambda) - 1;
    let mut p = [0.0_f64; 4];
    let mut leak = 0.0;
    for i in 0..state.dim() {
        let prob = state.basis_probability(i);
        if prob == 0.0 {
            continue;
        }
        let a = usize::from(i & anc_mask != 0);
        let lab = (i >> shift) & ones;
        if lab == 0 {
            p[a << 1] += prob;
        } else if lab == ones {
            p[(a << 1) | 1] += prob;
        } else {
            leak += prob;
        }
    }
    if leak > LEAKAGE_TOL {
        return Err(Error::NonLogicalLeakage { mass: leak });
    }
    OutcomeDistribution::new(p)
}

/// (p(ancilla=0), p(ancilla=1)).
pub fn ancilla_marginal(state: &QState) -> Result<(f64, f64)> {
    let layout = state.layout();
    let anc_mask = 1usize << (layout.total_qubits() - 1 - ancilla_qubit(layout)?);
    let mut p = (0.0, 0.0);
    for i in 0..state.dim() {
        let prob = state.basis_probability(i);
        if i & anc_mask == 0 {
            p.0 += prob;
        } else {
            p.1 += prob;
        }
    }
    Ok(p)
}

/// End-to-end simulation result: the outcome distribution, its signed
/// sum (the score on the ±1 scale) and the λ-scaled expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub distribution: OutcomeDistribution,
    pub score: f64,
    pub expectation: f64,
}

fn stc_branch(data: &LabeledDataset, spec: &ClassifierSpec, j: usize) -> Result<QState> {
    let n = data.data_qubits();
    let lambda = spec.label_width;
    let layout = RegisterLayout::new(stc_registers(n, spec.copies, lambda))?;
    let lab = logical_label(data.labels()[j], lambda);
    match (data.test(), &data.training()[j]) {
        (QState::Pure(test), QState::Pure(train)) => {
            let unit = kron_vec(test.amplitudes(), train.amplitudes());
            let mut block = unit.clone();
            for _ in 1..spec.copies {
                block = kron_vec(&block, &unit);
            }
            let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
            for (b, v) in block.iter().enumerate() {
                amps[(b << lambda) | lab] = *v;
            }
            Ok(QState::Pure(StateVector::new(amps, layout)?))
        }
        _ => {
            let test = data.test().to_density();
            let train = data.training()[j].to_density();
            let dn = 1usize << n;
            let unit = kron_mat(test.entries(), dn, train.entries(), dn);
            let mut block = unit.clone();
            let mut bdim = dn * dn;
            for _ in 1..spec.copies {
                block = kron_mat(&block, bdim, &unit, dn * dn);
                bdim *= dn * dn;
            }
            let dim = layout.dim();
            let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
            let place = |b: usize| (b << lambda) | lab;
            for r in 0..bdim {
                for c in 0..bdim {
                    let v = block[r * bdim + c];
                    if v.norm_sqr() == 0.0 {
                        continue;
                    }
                    entries[place(r) * dim + place(c)] = v;
                }
            }
            Ok(QState::Mixed(DensityMatrix::new(entries, layout)?))
        }
    }
}

/// Runs the configured classifier circuit and gathers the final
/// measurement statistics.
///
/// The amplitude variant builds the full superposition state. The
/// swap-test variant runs one branch per training point (the mixture
/// in its density matrix is classical over j, so branch statistics
/// mix at the weights) and never materializes the index register.
pub fn simulate(data: &LabeledDataset, spec: &ClassifierSpec) -> Result<Simulation> {
    spec.validate()?;
    let distribution = match spec.variant {
        Variant::Htc => {
            let state = QState::Pure(build_htc_state(data, spec)?);
            let state = apply_interference(&state, spec.angles.theta1)?;
            outcome_distribution(&state, spec.label_width)?
        }
        Variant::Stc => {
            let mut parts = Vec::with_capacity(data.len());
            for j in 0..data.len() {
                let branch = stc_branch(data, spec, j)?;
                let branch =
                    apply_ancilla_preparation(&branch, spec.angles.theta0, spec.angles.phi)?;
                let branch = apply_controlled_swaps(&branch, spec.copies)?;
                let branch = apply_interference(&branch, spec.angles.theta1)?;
                parts.push((
                    data.weights()[j],
                    outcome_distribution(&branch, spec.label_width)?,
                ));
            }
            OutcomeDistribution::mix(&parts)?
        }
    };
    let score = distribution.signed_sum();
    Ok(Simulation {
        distribution,
        score,
        expectation: spec.label_width as f64 * score,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Angles;
    use crate::kernels::general_expectation;
    use crate::qstate::{amplitude_encode, expectation, Observable};
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single_point_dataset() -> LabeledDataset {
        let zero = vec![c(1.0, 0.0), c(0.0, 0.0)];
        LabeledDataset::from_vectors(std::slice::from_ref(&zero), &[0], &zero).unwrap()
    }

    #[test]
    fn htc_state_single_point_default_angles() {
        let state = build_htc_state(&single_point_dataset(), &ClassifierSpec::htc()).unwrap();
        assert_eq!(state.num_qubits(), 3);
        assert_relative_eq!(state.amplitude(0b000).re, FRAC_1_SQRT_2, epsilon = 1e-14);
        assert_relative_eq!(state.amplitude(0b100).re, -FRAC_1_SQRT_2, epsilon = 1e-14);
        assert_relative_eq!(state.amplitude(0b100).im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn htc_state_theta0_zero_has_no_test_branch() {
        let spec = ClassifierSpec::htc().with_angles(Angles::new(0.0, FRAC_PI_2, 0.0));
        let state = build_htc_state(&single_point_dataset(), &spec).unwrap();
        assert_relative_eq!(state.amplitude(0b000).re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(state.amplitude(0b100).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn htc_state_toy_branch_amplitudes() {
        let data = LabeledDataset::toy(FRAC_PI_2);
        let spec = ClassifierSpec::htc().with_angles(Angles::new(FRAC_PI_2, FRAC_PI_2, 0.0));
        let state = build_htc_state(&data, &spec).unwrap();
        // ancilla 0, branch j=0: amplitudes (1/2)·x₁ on |0,d,0,0⟩
        let x1 = data.pure_training().unwrap()[0].amplitudes().to_vec();
        assert_relative_eq!(state.amplitude(0b0000).im, 0.5 * x1[0].im, epsilon = 1e-14);
        assert_relative_eq!(state.amplitude(0b0100).re, 0.5 * x1[1].re, epsilon = 1e-14);
        // branch mass under ancilla 0, j=0 is cos²(π/4)/2 = 1/4
        let mass: f64 = (0..state.dim())
            .filter(|i| i & 0b1000 == 0 && i & 0b0001 == 0)
            .map(|i| state.probability(i))
            .sum();
        assert_relative_eq!(mass, 0.25, epsilon = 1e-14);
        assert_relative_eq!(state.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn stc_state_single_point_is_pure_projector() {
        let rho = build_stc_state(&single_point_dataset(), &ClassifierSpec::stc(1)).unwrap();
        assert_eq!(rho.num_qubits(), 4);
        assert_relative_eq!(rho.entry(0, 0).re, 1.0, epsilon = 1e-14);
        assert_relative_eq!(rho.trace().re, 1.0, epsilon = 1e-14);
        let off_mass: f64 = (1..rho.dim()).map(|i| rho.probability(i)).sum();
        assert_relative_eq!(off_mass, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn stc_state_toy_branch_weights() {
        let data = LabeledDataset::toy(FRAC_PI_2);
        let rho = build_stc_state(&data, &ClassifierSpec::stc(1)).unwrap();
        assert_relative_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
        let layout = rho.layout().clone();
        let branch_one: f64 = (0..rho.dim())
            .filter(|&i| layout.value(INDEX, i).unwrap() == 1)
            .map(|i| rho.probability(i))
            .sum();
        assert_relative_eq!(branch_one, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn interference_limits() {
        let data = LabeledDataset::toy(1.0);
        let state = QState::Pure(build_htc_state(&data, &ClassifierSpec::htc()).unwrap());
        let same = apply_interference(&state, 0.0).unwrap();
        assert_eq!(&same, &state);

        let layout = RegisterLayout::single(ANCILLA, 1);
        let zero = QState::Pure(StateVector::basis(layout, 0).unwrap());
        let one = apply_interference(&zero, PI).unwrap();
        assert_relative_eq!(one.basis_probability(1), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn swap_test_identical_and_orthogonal() {
        let rho = build_stc_state(&single_point_dataset(), &ClassifierSpec::stc(1)).unwrap();
        let out = apply_swap_test(&rho, 1).unwrap();
        let (p0, p1) = ancilla_marginal(&QState::Mixed(out)).unwrap();
        assert_relative_eq!(p0, 1.0, epsilon = 1e-12);
        assert_relative_eq!(p1, 0.0, epsilon = 1e-12);

        let zero = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let one = vec![c(0.0, 0.0), c(1.0, 0.0)];
        let orth = LabeledDataset::from_vectors(&[zero], &[0], &one).unwrap();
        let rho = build_stc_state(&orth, &ClassifierSpec::stc(1)).unwrap();
        let out = apply_swap_test(&rho, 1).unwrap();
        let (p0, p1) = ancilla_marginal(&QState::Mixed(out)).unwrap();
        assert_relative_eq!(p0 - p1, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn swap_test_rejects_prepared_ancilla() {
        let rho = build_stc_state(&single_point_dataset(), &ClassifierSpec::stc(1)).unwrap();
        let prepped = apply_ancilla_preparation(&QState::Mixed(rho), FRAC_PI_2, 0.0).unwrap();
        let err = apply_swap_test(prepped.as_mixed().unwrap(), 1).unwrap_err();
        assert!(matches!(err, Error::LayoutMismatch { .. }));
    }

    #[test]
    fn toy_swap_test_signed_sum() {
        let data = LabeledDataset::toy(FRAC_PI_2);
        let rho = build_stc_state(&data, &ClassifierSpec::stc(1)).unwrap();
        let out = apply_swap_test(&rho, 1).unwrap();
        let dist = outcome_distribution(&QState::Mixed(out), 1).unwrap();
        assert_relative_eq!(dist.signed_sum(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn reduction_flips_on_label() {
        let layout =
            RegisterLayout::from_names(&[(ANCILLA, 1), (LABEL, 1)]).unwrap();
        let state = QState::Pure(StateVector::basis(layout, 0b01).unwrap());
        let reduced = reduce_to_single_qubit(&state).unwrap();
        assert_relative_eq!(reduced.basis_probability(0b11), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn reduction_operator_identity() {
        // cX†(σ_z⊗I)cX = σ_z⊗σ_z exactly, with the control on the label
        // qubit and the target on the ancilla.
        let mut entries: Vec<Complex64> = vec![c(0.0, 0.0); 16];
        for (i, z) in [1.0, 1.0, -1.0, -1.0].iter().enumerate() {
            entries[i * 4 + i] = c(*z, 0.0);
        }
        super::gates::apply_cx_density(&mut entries, 4, 2, 1, 0);
        let expect = [1.0, -1.0, -1.0, 1.0];
        for r in 0..4 {
            for col in 0..4 {
                let want = if r == col { expect[r] } else { 0.0 };
                assert_eq!(entries[r * 4 + col], c(want, 0.0));
            }
        }
    }

    #[test]
    fn reduction_preserves_joint_expectation() {
        let data = LabeledDataset::toy(FRAC_PI_2);
        let rho = build_stc_state(&data, &ClassifierSpec::stc(1)).unwrap();
        let out = QState::Mixed(apply_swap_test(&rho, 1).unwrap());
        let joint = outcome_distribution(&out, 1).unwrap().signed_sum();
        let reduced = reduce_to_single_qubit(&out).unwrap();
        let (p0, p1) = ancilla_marginal(&reduced).unwrap();
        assert_relative_eq!(p0 - p1, joint, epsilon = 1e-12);
        let embedded = OutcomeDistribution::from_ancilla_marginal(p0).unwrap();
        assert_relative_eq!(embedded.signed_sum(), joint, epsilon = 1e-12);
    }

    #[test]
    fn distribution_flags_non_logical_mass() {
        let layout = RegisterLayout::from_names(&[(ANCILLA, 1), (LABEL, 2)]).unwrap();
        let state = QState::Pure(StateVector::basis(layout, 0b001).unwrap());
        let err = outcome_distribution(&state, 2).unwrap_err();
        assert!(matches!(err, Error::NonLogicalLeakage { .. }));
    }

    #[test]
    fn simulate_matches_closed_forms_on_toy_data() {
        for theta in [0.0, 0.7, FRAC_PI_2, 2.9, 4.2] {
            let data = LabeledDataset::toy(theta);
            let htc = simulate(&data, &ClassifierSpec::htc()).unwrap();
            assert_relative_eq!(htc.expectation, 0.0, epsilon = 1e-12);
            let stc = simulate(&data, &ClassifierSpec::stc(1)).unwrap();
            assert_relative_eq!(stc.expectation, theta.sin() / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn simulate_scales_with_label_width() {
        let data = LabeledDataset::toy(FRAC_PI_2);
        let sim = simulate(&data, &ClassifierSpec::stc(1).with_label_width(3)).unwrap();
        assert_relative_eq!(sim.expectation, 1.5, epsilon = 1e-12);
        assert_relative_eq!(sim.score, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn simulate_agrees_with_analytic_form_at_general_angles() {
        let data = LabeledDataset::toy(1.1);
        for angles in [
            Angles::new(0.3, 1.2, 2.1),
            Angles::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2),
            Angles::new(2.4, 0.6, 5.0),
        ] {
            for (variant, copies) in [(Variant::Htc, 1), (Variant::Stc, 2)] {
                let mut spec = match variant {
                    Variant::Htc => ClassifierSpec::htc(),
                    Variant::Stc => ClassifierSpec::stc(copies),
                };
                spec = spec.with_angles(angles);
                let sim = simulate(&data, &spec).unwrap();
                let analytic = general_expectation(&data, angles, variant, copies).unwrap();
                assert_relative_eq!(sim.score, analytic, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn simulate_expectation_matches_observable_route() {
        let data = LabeledDataset::toy(0.8);
        let spec = ClassifierSpec::htc().with_label_width(2);
        let state = QState::Pure(build_htc_state(&data, &spec).unwrap());
        let state = apply_interference(&state, spec.angles.theta1).unwrap();
        let obs = Observable::ancilla_label(state.layout(), 2).unwrap();
        let via_observable = expectation(&state, &obs).unwrap();
        let via_distribution = simulate(&data, &spec).unwrap().expectation;
        assert_relative_eq!(via_observable, via_distribution, epsilon = 1e-12);
    }

    #[test]
    fn stc_score_ignores_global_phase_of_test_state() {
        let base = LabeledDataset::toy(0.9);
        let phase = Complex64::from_polar(1.0, 1.234);
        let test = base.pure_test().unwrap();
        let shifted: Vec<Complex64> = test.amplitudes().iter().map(|a| a * phase).collect();
        let rotated = LabeledDataset::new(
            base.training().to_vec(),
            base.labels().to_vec(),
            base.weights().to_vec(),
            QState::Pure(
                StateVector::new(shifted, test.layout().clone()).unwrap(),
            ),
        )
        .unwrap();
        let a = simulate(&base, &ClassifierSpec::stc(1)).unwrap();
        let b = simulate(&rotated, &ClassifierSpec::stc(1)).unwrap();
        assert_relative_eq!(a.score, b.score, epsilon = 1e-12);
    }

    #[test]
    fn mixed_test_state_runs_through_density_branch() {
        let data = LabeledDataset::toy(FRAC_PI_2);
        let half = c(0.5, 0.0);
        let zero = c(0.0, 0.0);
        let mixed_test = QState::Mixed(
            DensityMatrix::new(
                vec![half, zero, zero, half],
                RegisterLayout::single(DATA, 1),
            )
            .unwrap(),
        );
        let mixed = LabeledDataset::new(
            data.training().to_vec(),
            data.labels().to_vec(),
            data.weights().to_vec(),
            mixed_test,
        )
        .unwrap();
        let sim = simulate(&mixed, &ClassifierSpec::stc(1)).unwrap();
        // Tr(ρ̃ρ_j) = 1/2 for both points, so the score cancels.
        assert_relative_eq!(sim.score, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn amplitude_encode_shares_data_register_name() {
        let x = amplitude_encode(&[c(1.0, 0.0), c(0.0, 0.0)], DATA).unwrap();
        assert_eq!(x.layout().registers()[0].name(), DATA);
    }
}
