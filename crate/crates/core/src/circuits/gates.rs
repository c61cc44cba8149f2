//! Raw gate application on amplitude and density buffers.
//!
//! Qubits are numbered most-significant-first, so qubit `q` of an
//! `n`-qubit system owns bit `n − 1 − q` of a basis index. All routines
//! mutate in place.

use num_complex::Complex64;

pub(crate) type Gate1 = [[Complex64; 2]; 2];

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub(crate) fn ry(theta: f64) -> Gate1 {
    let (s, c) = (theta / 2.0).sin_cos();
    [[real(c), real(-s)], [real(s), real(c)]]
}

pub(crate) fn hadamard() -> Gate1 {
    let h = real(std::f64::consts::FRAC_1_SQRT_2);
    [[h, h], [h, -h]]
}

/// Prepares cos(θ₀/2)|0⟩ + e^{iφ} sin(θ₀/2)|1⟩ out of |0⟩. At φ = 0
/// this is R_y(θ₀).
pub(crate) fn ancilla_preparation(theta0: f64, phi: f64) -> Gate1 {
    let (s, c) = (theta0 / 2.0).sin_cos();
    let phase = Complex64::from_polar(1.0, phi);
    [[real(c), -s * phase.conj()], [s * phase, real(c)]]
}

pub(crate) fn pauli_gate(p: crate::qstate::Pauli) -> Gate1 {
    use crate::qstate::Pauli;
    let zero = real(0.0);
    let one = real(1.0);
    match p {
        Pauli::I => [[one, zero], [zero, one]],
        Pauli::X => [[zero, one], [one, zero]],
        Pauli::Y => [[zero, Complex64::new(0.0, -1.0)], [Complex64::new(0.0, 1.0), zero]],
        Pauli::Z => [[one, zero], [zero, -one]],
    }
}

pub(crate) fn scale_gate(g: &Gate1, factor: f64) -> Gate1 {
    g.map(|row| row.map(|entry| entry * factor))
}

fn bit_mask(num_qubits: usize, qubit: usize) -> usize {
    debug_assert!(qubit < num_qubits);
    1 << (num_qubits - 1 - qubit)
}

pub(crate) fn apply_gate1_vec(amps: &mut [Complex64], num_qubits: usize, qubit: usize, g: &Gate1) {
    let mask = bit_mask(num_qubits, qubit);
    for i in 0..amps.len() {
        if i & mask != 0 {
            continue;
        }
        let j = i | mask;
        let v0 = amps[i];
        let v1 = amps[j];
        amps[i] = g[0][0] * v0 + g[0][1] * v1;
        amps[j] = g[1][0] * v0 + g[1][1] * v1;
    }
}

/// ρ → GρG†. The adjoint lands on the column index, so this also
/// implements single Kraus terms for non-unitary G.
pub(crate) fn apply_gate1_density(
    entries: &mut [Complex64],
    dim: usize,
    num_qubits: usize,
    qubit: usize,
    g: &Gate1,
) {
    let mask = bit_mask(num_qubits, qubit);
    for r in 0..dim {
        if r & mask != 0 {
            continue;
        }
        let r1 = r | mask;
        for c in 0..dim {
            let v0 = entries[r * dim + c];
            let v1 = entries[r1 * dim + c];
            entries[r * dim + c] = g[0][0] * v0 + g[0][1] * v1;
            entries[r1 * dim + c] = g[1][0] * v0 + g[1][1] * v1;
        }
    }
    for c in 0..dim {
        if c & mask != 0 {
            continue;
        }
        let c1 = c | mask;
        for r in 0..dim {
            let v0 = entries[r * dim + c];
            let v1 = entries[r * dim + c1];
            entries[r * dim + c] = g[0][0].conj() * v0 + g[0][1].conj() * v1;
            entries[r * dim + c1] = g[1][0].conj() * v0 + g[1][1].conj() * v1;
        }
    }
}

/// Basis permutation applied as |i⟩ → |π(i)⟩ for a self-inverse π.
fn permute_vec(amps: &mut [Complex64], perm: impl Fn(usize) -> usize) {
    for i in 0..amps.len() {
        let j = perm(i);
        debug_assert_eq!(perm(j), i, "permutation must be an involution");
        if j > i {
            amps.swap(i, j);
        }
    }
}

/// ρ → PρP† for a self-inverse basis permutation P.
fn permute_density(entries: &mut [Complex64], dim: usize, perm: impl Fn(usize) -> usize) {
    for r in 0..dim {
        let pr = perm(r);
        for c in 0..dim {
            let pc = perm(c);
            if pr * dim + pc > r * dim + c {
                entries.swap(r * dim + c, pr * dim + pc);
            }
        }
    }
}

fn cx_perm(num_qubits: usize, control: usize, target: usize) -> impl Fn(usize) -> usize {
    let cmask = bit_mask(num_qubits, control);
    let tmask = bit_mask(num_qubits, target);
    move |i| if i & cmask != 0 { i ^ tmask } else { i }
}

pub(crate) fn apply_cx_vec(
    amps: &mut [Complex64],
    num_qubits: usize,
    control: usize,
    target: usize,
) {
    permute_vec(amps, cx_perm(num_qubits, control, target));
}

pub(crate) fn apply_cx_density(
    entries: &mut [Complex64],
    dim: usize,
    num_qubits: usize,
    control: usize,
    target: usize,
) {
    permute_density(entries, dim, cx_perm(num_qubits, control, target));
}

/// Exchanges two disjoint equal-width bit fields when the control qubit
/// is set. Offsets are qubit offsets from the most significant end.
fn cswap_perm(
    num_qubits: usize,
    control: usize,
    offset_a: usize,
    offset_b: usize,
    width: usize,
) -> impl Fn(usize) -> usize {
    let cmask = bit_mask(num_qubits, control);
    let shift_a = num_qubits - offset_a - width;
    let shift_b = num_qubits - offset_b - width;
    let field = (1usize << width) - 1;
    move |i| {
        if i & cmask == 0 {
            return i;
        }
        let a = (i >> shift_a) & field;
        let b = (i >> shift_b) & field;
        (i & !(field << shift_a) & !(field << shift_b)) | (b << shift_a) | (a << shift_b)
    }
}

pub(crate) fn apply_cswap_vec(
    amps: &mut [Complex64],
    num_qubits: usize,
    control: usize,
    offset_a: usize,
    offset_b: usize,
    width: usize,
) {
    permute_vec(amps, cswap_perm(num_qubits, control, offset_a, offset_b, width));
}

pub(crate) fn apply_cswap_density(
    entries: &mut [Complex64],
    dim: usize,
    num_qubits: usize,
    control: usize,
    offset_a: usize,
    offset_b: usize,
    width: usize,
) {
    permute_density(
        entries,
        dim,
        cswap_perm(num_qubits, control, offset_a, offset_b, width),
    );
}
