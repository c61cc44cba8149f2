//! The variance-minimization objective f = ⟨M⟩² over the interference
//! angles, its analytic derivatives, and second-order certification of
//! the plain Hadamard/swap-test point (π/2, π/2, π).
//!
//! Everything here reduces to the closed form
//! E(θ₀,θ₁,φ) = S·cosθ₀cosθ₁ − sinθ₀sinθ₁(cosφ·K_re − sinφ·K_im)
//! with dataset constants S = Σa_j(−1)^{y_j} and K = Σa_j(−1)^{y_j}k_j,
//! so each evaluation after the one-time kernel pass is O(1).

use crate::dataset::{Angles, LabeledDataset, Variant};
use crate::kernels::{expectation_from_sums, signed_sums, SignedSums};
use crate::Result;

/// |sin φ| below this keeps the report on the 2×2 (θ₀, θ₁) restriction.
pub const SIN_PHI_TOL: f64 = 1e-12;

/// Gradient norms below this count as a critical point.
pub const CRITICAL_TOL: f64 = 1e-9;

/// |sin θ₀| and |sin θ₁| both under this means the state never
/// interferes with the training data, so the angles cannot classify.
pub const DEGENERATE_ANGLE_TOL: f64 = 1e-9;

/// Signed kernel sums below this leave a score of exactly zero
/// everywhere, so no angle choice can classify the dataset.
pub const CLASSIFIABLE_TOL: f64 = 1e-12;

fn trig(angles: Angles) -> (f64, f64, f64, f64, f64, f64) {
    let (s0, c0) = angles.theta0.sin_cos();
    let (s1, c1) = angles.theta1.sin_cos();
    let (sp, cp) = angles.phi.sin_cos();
    (s0, c0, s1, c1, sp, cp)
}

/// First partial derivatives of E in the order (θ₀, θ₁, φ).
fn expectation_gradient(sums: &SignedSums, angles: Angles) -> [f64; 3] {
    let (s0, c0, s1, c1, sp, cp) = trig(angles);
    let (big_s, kr, ki) = (sums.label, sums.kernel_re, sums.kernel_im);
    let g = cp * kr - sp * ki;
    let gp = -sp * kr - cp * ki;
    [
        -big_s * s0 * c1 - c0 * s1 * g,
        -big_s * c0 * s1 - s0 * c1 * g,
        -s0 * s1 * gp,
    ]
}

/// Second partials of E, packed symmetric in the order (θ₀, θ₁, φ).
fn expectation_hessian(sums: &SignedSums, angles: Angles) -> [[f64; 3]; 3] {
    let (s0, c0, s1, c1, sp, cp) = trig(angles);
    let (big_s, kr, ki) = (sums.label, sums.kernel_re, sums.kernel_im);
    let g = cp * kr - sp * ki;
    let gp = -sp * kr - cp * ki;
    let diag_theta = -big_s * c0 * c1 + s0 * s1 * g;
    let cross_theta = big_s * s0 * s1 - c0 * c1 * g;
    let t0_phi = -c0 * s1 * gp;
    let t1_phi = -s0 * c1 * gp;
    let phi_phi = s0 * s1 * g;
    [
        [diag_theta, cross_theta, t0_phi],
        [cross_theta, diag_theta, t1_phi],
        [t0_phi, t1_phi, phi_phi],
    ]
}

/// f(θ₀,θ₁,φ) = E², the square of the score-scale expectation. For a
/// single-qubit logical label this equals 1 − Var(M), so maximizing it
/// minimizes the variance of the decision observable.
pub fn objective(
    data: &LabeledDataset,
    angles: Angles,
    variant: Variant,
    copies: usize,
) -> Result<f64> {
    let sums = signed_sums(data, variant, copies)?;
    let e = expectation_from_sums(&sums, angles);
    Ok(e * e)
}

/// Analytic ∇f in the order (∂θ₀, ∂θ₁, ∂φ).
pub fn gradient(
    data: &LabeledDataset,
    angles: Angles,
    variant: Variant,
    copies: usize,
) -> Result<[f64; 3]> {
    let sums = signed_sums(data, variant, copies)?;
    let e = expectation_from_sums(&sums, angles);
    let de = expectation_gradient(&sums, angles);
    Ok([2.0 * e * de[0], 2.0 * e * de[1], 2.0 * e * de[2]])
}

/// Either the (θ₀, θ₁) restriction at sin φ = 0, or the full matrix
/// over all three angles.
#[derive(Debug, Clone, PartialEq)]
pub enum Hessian {
    Restricted([[f64; 2]; 2]),
    Full([[f64; 3]; 3]),
}

impl Hessian {
    /// The (θ₀, θ₁) block, present in both forms.
    pub fn theta_block(&self) -> [[f64; 2]; 2] {
        match self {
            Hessian::Restricted(m) => *m,
            Hessian::Full(m) => [[m[0][0], m[0][1]], [m[1][0], m[1][1]]],
        }
    }
}

/// Second-order analysis of one angle triple.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointReport {
    pub angles: Angles,
    pub objective: f64,
    pub gradient: [f64; 3],
    pub gradient_norm: f64,
    pub hessian: Hessian,
    /// ∂²f/∂θ₀² ≤ 0 and ∂²f/∂θ₁² ≤ 0.
    pub concave_in_theta: bool,
    /// ∂²f/∂θ₀²·∂²f/∂θ₁² − (∂²f/∂θ₀∂θ₁)² > 0.
    pub determinant_positive: bool,
    /// |Σ a_j (−1)^{y_j} k_j|.
    pub kernel_sum_abs: f64,
    /// |Σ a_j (−1)^{y_j}|.
    pub label_sum_abs: f64,
    /// kernel_sum_abs > label_sum_abs, the datum condition under which
    /// the Hadamard point is the strict local maximum.
    pub datum_condition: bool,
    /// False when the signed kernel sum vanishes: the score is then
    /// identically zero and no angles classify this dataset.
    pub classifiable: bool,
    /// False on the sin θ₀ = sin θ₁ = 0 family, where the outcome is
    /// independent of the data.
    pub classification_valid: bool,
    /// Critical point with all second-order and validity checks passed.
    pub certified_maximum: bool,
}

/// Evaluates gradient and Hessian at `angles` and checks the
/// second-derivative maximum conditions on the (θ₀, θ₁) block. The 2×2
/// restriction applies when sin φ = 0 and `full` is not set; otherwise
/// the report carries the 3×3 matrix (the condition flags are always
/// computed from the (θ₀, θ₁) block).
pub fn hessian_test(
    data: &LabeledDataset,
    angles: Angles,
    variant: Variant,
    copies: usize,
    full: bool,
) -> Result<CriticalPointReport> {
    let sums = signed_sums(data, variant, copies)?;
    let e = expectation_from_sums(&sums, angles);
    let de = expectation_gradient(&sums, angles);
    let dde = expectation_hessian(&sums, angles);
    let grad = [2.0 * e * de[0], 2.0 * e * de[1], 2.0 * e * de[2]];
    let mut hess = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            hess[i][j] = 2.0 * (de[i] * de[j] + e * dde[i][j]);
        }
    }
    let (s0, _, s1, _, sp, _) = trig(angles);
    let hessian = if full || sp.abs() > SIN_PHI_TOL {
        Hessian::Full(hess)
    } else {
        Hessian::Restricted([[hess[0][0], hess[0][1]], [hess[1][0], hess[1][1]]])
    };
    let block = hessian.theta_block();
    let determinant = block[0][0] * block[1][1] - block[0][1] * block[1][0];
    let concave_in_theta = block[0][0] <= 0.0 && block[1][1] <= 0.0;
    let determinant_positive = determinant > 0.0;
    let kernel_sum_abs = sums.kernel_re.abs();
    let label_sum_abs = sums.label.abs();
    let datum_condition = kernel_sum_abs > label_sum_abs;
    let classifiable = kernel_sum_abs > CLASSIFIABLE_TOL;
    let classification_valid =
        s0.abs() >= DEGENERATE_ANGLE_TOL || s1.abs() >= DEGENERATE_ANGLE_TOL;
    let gradient_norm = grad.iter().map(|v| v * v).sum::<f64>().sqrt();
    let certified_maximum = gradient_norm < CRITICAL_TOL
        && concave_in_theta
        && determinant_positive
        && datum_condition
        && classifiable
        && classification_valid;
    Ok(CriticalPointReport {
        angles,
        objective: e * e,
        gradient: grad,
        gradient_norm,
        hessian,
        concave_in_theta,
        determinant_positive,
        kernel_sum_abs,
        label_sum_abs,
        datum_condition,
        classifiable,
        classification_valid,
        certified_maximum,
    })
}

/// Cartesian grid of angle triples, iterated θ₀-major, φ-minor.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleGrid {
    pub theta0: Vec<f64>,
    pub theta1: Vec<f64>,
    pub phi: Vec<f64>,
}

/// `count` evenly spaced values covering [0, 2π] inclusive.
pub fn linspace_angles(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count)
            .map(|i| 2.0 * std::f64::consts::PI * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

impl AngleGrid {
    pub fn new(theta0: Vec<f64>, theta1: Vec<f64>, phi: Vec<f64>) -> Self {
        AngleGrid { theta0, theta1, phi }
    }

    /// Uniform [0, 2π] coverage with the given point counts per axis.
    pub fn uniform(n_theta0: usize, n_theta1: usize, n_phi: usize) -> Self {
        AngleGrid {
            theta0: linspace_angles(n_theta0),
            theta1: linspace_angles(n_theta1),
            phi: linspace_angles(n_phi),
        }
    }

    /// n×n×n uniform grid.
    pub fn cube(n: usize) -> Self {
        Self::uniform(n, n, n)
    }

    pub fn single(angles: Angles) -> Self {
        AngleGrid {
            theta0: vec![angles.theta0],
            theta1: vec![angles.theta1],
            phi: vec![angles.phi],
        }
    }

    pub fn len(&self) -> usize {
        self.theta0.len() * self.theta1.len() * self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One evaluated grid point. Variance is on the score scale (λ = 1),
/// so objective + variance = 1 at every row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub angles: Angles,
    pub expectation: f64,
    pub objective: f64,
    pub variance: f64,
}

/// All rows of a grid scan in grid order plus the index of the first
/// row attaining the maximum objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    pub max_index: usize,
}

impl ScanTable {
    pub fn max_row(&self) -> &ScanRow {
        &self.rows[self.max_index]
    }
}

/// Evaluates the objective over every grid point. The kernel sums are
/// computed once, so the scan costs O(dataset) + O(grid).
pub fn angle_scan(
    data: &LabeledDataset,
    grid: &AngleGrid,
    variant: Variant,
    copies: usize,
) -> Result<ScanTable> {
    if grid.is_empty() {
        return Err(crate::Error::InvalidParameter {
            detail: "angle grid has no points".into(),
        });
    }
    let sums = signed_sums(data, variant, copies)?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut max_index = 0;
    for &theta0 in &grid.theta0 {
        for &theta1 in &grid.theta1 {
            for &phi in &grid.phi {
                let angles = Angles::new(theta0, theta1, phi);
                let e = expectation_from_sums(&sums, angles);
                let objective = e * e;
                rows.push(ScanRow {
                    angles,
                    expectation: e,
                    objective,
                    variance: 1.0 - objective,
                });
                if objective > rows[max_index].objective {
                    max_index = rows.len() - 1;
                }
            }
        }
    }
    Ok(ScanTable { rows, max_index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::general_expectation;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn toy() -> LabeledDataset {
        LabeledDataset::toy(FRAC_PI_2)
    }

    fn hadamard() -> Angles {
        Angles::hadamard_point()
    }

    /// Training pair orthogonal to the test state: S = 1 but K = 0.
    fn unclassifiable() -> LabeledDataset {
        let zero = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let one = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        LabeledDataset::from_vectors(&[zero.clone(), zero], &[0, 0], &one).unwrap()
    }

    /// Real-amplitude training and test states, so Im⟨x_j|x̃⟩ = 0.
    fn real_htc_dataset() -> LabeledDataset {
        let a = vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)];
        let b = vec![Complex64::new(0.8, 0.0), Complex64::new(-0.6, 0.0)];
        let t = vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        LabeledDataset::from_vectors(&[a, b], &[0, 1], &t).unwrap()
    }

    fn shifted(mut angles: Angles, axis: usize, h: f64) -> Angles {
        match axis {
            0 => angles.theta0 += h,
            1 => angles.theta1 += h,
            _ => angles.phi += h,
        }
        angles
    }

    fn central_difference_gradient(
        data: &LabeledDataset,
        angles: Angles,
        variant: Variant,
        copies: usize,
    ) -> [f64; 3] {
        let h = 1e-5;
        let mut out = [0.0; 3];
        for (axis, slot) in out.iter_mut().enumerate() {
            let f_plus = objective(data, shifted(angles, axis, h), variant, copies).unwrap();
            let f_minus = objective(data, shifted(angles, axis, -h), variant, copies).unwrap();
            *slot = (f_plus - f_minus) / (2.0 * h);
        }
        out
    }

    #[test]
    fn toy_objective_at_the_hadamard_point() {
        let f = objective(&toy(), hadamard(), Variant::Stc, 1).unwrap();
        assert_relative_eq!(f, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_angles_give_the_data_independent_value() {
        // sinθ₀ = sinθ₁ = 0 collapses the objective to (Σa_j(−1)^{y_j})².
        for (t0, t1) in [(0.0, 0.0), (0.0, PI), (PI, 0.0), (PI, PI)] {
            let f = objective(&toy(), Angles::new(t0, t1, 1.3), Variant::Stc, 1).unwrap();
            assert_relative_eq!(f, 0.0, epsilon = 1e-15);
            let f = objective(&unclassifiable(), Angles::new(t0, t1, 0.4), Variant::Stc, 1)
                .unwrap();
            assert_relative_eq!(f, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn prepared_ancilla_at_half_pi_leaves_a_pure_kernel_term() {
        // At θ₀ = π/2 the label sum drops out and the objective is
        // (sinθ₁ cosφ K)² for a real kernel sum.
        for (theta1, phi) in [(0.3, 0.0), (1.1, 2.0), (FRAC_PI_2, PI), (2.7, 4.1)] {
            let f = objective(&toy(), Angles::new(FRAC_PI_2, theta1, phi), Variant::Stc, 1)
                .unwrap();
            let expected = (theta1.sin() * phi.cos() * 0.5).powi(2);
            assert_relative_eq!(f, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn both_critical_families_have_zero_gradient() {
        for angles in [hadamard(), Angles::new(0.0, 0.0, 0.0), Angles::new(0.0, PI, 1.3)] {
            for (data, variant) in [
                (toy(), Variant::Stc),
                (toy(), Variant::Htc),
                (real_htc_dataset(), Variant::Htc),
            ] {
                let g = gradient(&data, angles, variant, 1).unwrap();
                let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!(norm < 1e-9, "norm {norm} at {angles:?}");
            }
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let datasets = [
            (toy(), Variant::Stc, 1),
            (toy(), Variant::Stc, 3),
            (toy(), Variant::Htc, 1),
            (real_htc_dataset(), Variant::Htc, 1),
        ];
        for _ in 0..20 {
            let angles = Angles::new(
                rng.random_range(0.0..2.0 * PI),
                rng.random_range(0.0..2.0 * PI),
                rng.random_range(0.0..2.0 * PI),
            );
            for (data, variant, copies) in &datasets {
                let analytic = gradient(data, angles, *variant, *copies).unwrap();
                let numeric = central_difference_gradient(data, angles, *variant, *copies);
                for (a, n) in analytic.iter().zip(&numeric) {
                    assert!((a - n).abs() < 1e-6, "{a} vs {n} at {angles:?}");
                }
            }
        }
    }

    #[test]
    fn hessian_matches_finite_differences_of_the_gradient() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = 1e-5;
        for _ in 0..10 {
            let angles = Angles::new(
                rng.random_range(0.0..2.0 * PI),
                rng.random_range(0.0..2.0 * PI),
                rng.random_range(0.0..2.0 * PI),
            );
            let report = hessian_test(&toy(), angles, Variant::Stc, 1, true).unwrap();
            let full = match &report.hessian {
                Hessian::Full(m) => *m,
                Hessian::Restricted(_) => panic!("full matrix requested"),
            };
            // The matrix is symmetric by construction, so comparing
            // row j against ∂(gradient)/∂(axis j) covers every entry.
            for (axis, row) in full.iter().enumerate() {
                let g_plus = gradient(&toy(), shifted(angles, axis, h), Variant::Stc, 1).unwrap();
                let g_minus =
                    gradient(&toy(), shifted(angles, axis, -h), Variant::Stc, 1).unwrap();
                for (i, entry) in row.iter().enumerate() {
                    let numeric = (g_plus[i] - g_minus[i]) / (2.0 * h);
                    assert!(
                        (entry - numeric).abs() < 1e-5,
                        "H[{axis}][{i}] {entry} vs {numeric}"
                    );
                }
            }
        }
    }

    #[test]
    fn toy_hadamard_point_is_a_certified_maximum() {
        let report = hessian_test(&toy(), hadamard(), Variant::Stc, 1, false).unwrap();
        assert!(report.gradient_norm < 1e-9);
        assert!(matches!(report.hessian, Hessian::Restricted(_)));
        let block = report.hessian.theta_block();
        assert_relative_eq!(block[0][0], -0.5, epsilon = 1e-12);
        assert_relative_eq!(block[1][1], -0.5, epsilon = 1e-12);
        assert_relative_eq!(block[0][1], 0.0, epsilon = 1e-12);
        assert!(report.concave_in_theta);
        assert!(report.determinant_positive);
        assert_relative_eq!(report.kernel_sum_abs, 0.5, epsilon = 1e-12);
        assert_relative_eq!(report.label_sum_abs, 0.0, epsilon = 1e-15);
        assert!(report.datum_condition);
        assert!(report.classifiable);
        assert!(report.classification_valid);
        assert!(report.certified_maximum);
    }

    #[test]
    fn vanishing_kernel_sum_is_flagged_unclassifiable() {
        let report =
            hessian_test(&unclassifiable(), hadamard(), Variant::Stc, 1, false).unwrap();
        assert!(!report.classifiable);
        assert!(!report.certified_maximum);
        assert!(!report.determinant_positive);
        let block = report.hessian.theta_block();
        for row in block {
            for entry in row {
                assert_relative_eq!(entry, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn origin_point_on_toy_data_fails_both_ways() {
        let report =
            hessian_test(&toy(), Angles::new(0.0, 0.0, 0.0), Variant::Stc, 1, false).unwrap();
        assert!(report.gradient_norm < 1e-9);
        assert!(!report.classification_valid);
        // det > 0 here requires |Σa_j(−1)^{y_j}| > |Σa_j(−1)^{y_j}k_j|,
        // and the toy dataset has 0 < 0.5.
        assert!(!report.determinant_positive);
        assert!(!report.certified_maximum);
    }

    #[test]
    fn full_flag_forces_the_three_by_three_matrix() {
        let restricted = hessian_test(&toy(), hadamard(), Variant::Stc, 1, false).unwrap();
        let full = hessian_test(&toy(), hadamard(), Variant::Stc, 1, true).unwrap();
        assert!(matches!(restricted.hessian, Hessian::Restricted(_)));
        let m = match &full.hessian {
            Hessian::Full(m) => *m,
            Hessian::Restricted(_) => panic!("expected full matrix"),
        };
        assert_eq!(restricted.hessian.theta_block(), full.hessian.theta_block());
        for (i, row) in m.iter().enumerate() {
            for (j, &entry) in row.iter().enumerate() {
                assert_relative_eq!(entry, m[j][i], epsilon = 1e-10);
            }
        }
        // Away from sinφ = 0 the restriction is unavailable.
        let off = hessian_test(
            &toy(),
            Angles::new(FRAC_PI_2, FRAC_PI_2, 1.0),
            Variant::Stc,
            1,
            false,
        )
        .unwrap();
        assert!(matches!(off.hessian, Hessian::Full(_)));
    }

    #[test]
    fn grid_scan_finds_the_interference_points() {
        let grid = AngleGrid::uniform(17, 17, 9);
        let table = angle_scan(&toy(), &grid, Variant::Stc, 1).unwrap();
        assert_eq!(table.rows.len(), 17 * 17 * 9);
        let best = table.max_row();
        assert_relative_eq!(best.objective, 0.25, epsilon = 1e-12);
        assert!(best.angles.theta0.cos().abs() < 1e-12);
        assert!(best.angles.theta1.cos().abs() < 1e-12);
        assert!(best.angles.phi.sin().abs() < 1e-12);
        // No grid point beats the Hadamard point.
        let reference = objective(&toy(), hadamard(), Variant::Stc, 1).unwrap();
        for row in &table.rows {
            assert!(row.objective <= reference + 1e-9);
        }
    }

    #[test]
    fn single_point_grid_gives_one_row() {
        let table =
            angle_scan(&toy(), &AngleGrid::single(hadamard()), Variant::Stc, 1).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert_eq!(table.max_index, 0);
        assert_relative_eq!(table.rows[0].objective, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn scan_on_an_unclassifiable_dataset_is_data_independent() {
        let table = angle_scan(
            &unclassifiable(),
            &AngleGrid::cube(7),
            Variant::Stc,
            1,
        )
        .unwrap();
        for row in &table.rows {
            let expected = (row.angles.theta0.cos() * row.angles.theta1.cos()).powi(2);
            assert_relative_eq!(row.objective, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn scan_rows_satisfy_the_variance_identity() {
        let table = angle_scan(&toy(), &AngleGrid::cube(9), Variant::Stc, 2).unwrap();
        for row in &table.rows {
            assert_relative_eq!(row.objective + row.variance, 1.0, epsilon = 1e-12);
            let e = general_expectation(&toy(), row.angles, Variant::Stc, 2).unwrap();
            assert_relative_eq!(row.expectation, e, epsilon = 1e-15);
        }
    }

    #[test]
    fn objective_is_even_in_phi_for_real_overlaps() {
        let data = real_htc_dataset();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let theta0 = rng.random_range(0.0..2.0 * PI);
            let theta1 = rng.random_range(0.0..2.0 * PI);
            let phi = rng.random_range(0.0..2.0 * PI);
            let plus = objective(&data, Angles::new(theta0, theta1, phi), Variant::Htc, 1)
                .unwrap();
            let minus = objective(&data, Angles::new(theta0, theta1, -phi), Variant::Htc, 1)
                .unwrap();
            assert_relative_eq!(plus, minus, epsilon = 1e-12);
        }
    }

    #[test]
    fn empty_grid_is_rejected() {
        let grid = AngleGrid::new(Vec::new(), vec![0.0], vec![0.0]);
        assert!(angle_scan(&toy(), &grid, Variant::Stc, 1).is_err());
        assert!(grid.is_empty());
        assert_eq!(AngleGrid::cube(5).len(), 125);
        assert_eq!(linspace_angles(1), vec![0.0]);
        assert_eq!(linspace_angles(0), Vec::<f64>::new());
    }

    #[test]
    fn report_values_are_finite_everywhere_on_a_grid() {
        for angles in [
            Angles::new(0.0, 0.0, 0.0),
            Angles::new(PI, PI, PI),
            Angles::new(5.0, 0.1, 3.9),
        ] {
            let report = hessian_test(&toy(), angles, Variant::Stc, 1, true).unwrap();
            assert!(report.gradient.iter().all(|v| v.is_finite()));
            assert!(report.objective.is_finite());
        }
    }
}
