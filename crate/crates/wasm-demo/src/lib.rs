//! Interactive browser demo. Each operation takes plain numbers from
//! the page, runs the exact simulator and returns a JSON string for
//! the canvas code to draw. The functions are ordinary Rust so the
//! host test suite covers them; thin `wasm_bindgen` wrappers are
//! compiled only for the wasm32 target.

use kernelshot::circuits::{simulate, OutcomeDistribution};
use kernelshot::dataset::{ClassifierSpec, LabeledDataset, Variant};
use kernelshot::kernels::classification_score;
use kernelshot::moments::{plan_shots, variance_of_score};
use kernelshot::noise::{effective_scale, planned_shots_under_noise, NoiseSpec};
use kernelshot::optim::{angle_scan, linspace_angles, AngleGrid};
use kernelshot::sampling::{decide_majority, decide_mean, empirical_mean, sample};

/// Confidence multiplier and failure budget behind every planned shot
/// count shown in the demo.
pub const PLAN_C: f64 = 2.0;
pub const PLAN_DELTA: f64 = 0.05;

const MAX_CURVE_STEPS: usize = 4096;
const MAX_GRID_POINTS: usize = 128;

fn err(e: kernelshot::Error) -> String {
    e.to_string()
}

fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

fn fmt_array(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| fmt_num(x)).collect();
    format!("[{}]", parts.join(","))
}

fn check_noise_p(p: f64) -> Result<f64, String> {
    if !(0.0..=1.0).contains(&p) {
        return Err(format!("depolarizing probability must lie in [0, 1], got {p}"));
    }
    Ok(effective_scale(&NoiseSpec::depolarizing(p)).map_err(err)?.scale)
}

fn check_finite(value: f64, name: &str) -> Result<(), String> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(format!("{name} must be finite"))
    }
}

/// Ancilla bit flips exchange the (1,·) outcomes with the (0,·) ones,
/// so a channel with effective scale s maps the joint distribution to
/// the mixture (1+s)/2 · p + (1−s)/2 · p(flipped ancilla).
fn rescaled(dist: OutcomeDistribution, scale: f64) -> Result<OutcomeDistribution, String> {
    let p = dist.probabilities();
    let flipped = OutcomeDistribution::new([p[2], p[3], p[0], p[1]]).map_err(err)?;
    OutcomeDistribution::mix(&[
        ((1.0 + scale) / 2.0, dist),
        ((1.0 - scale) / 2.0, flipped),
    ])
    .map_err(err)
}

/// Chebyshev budget for the demo's fixed (c, δ), inflated for the
/// noise scale. Zero means no finite plan exists at this point.
fn planned_budget(score: f64, scale: f64) -> Result<u64, String> {
    let plan = match plan_shots(score, 1, PLAN_C, PLAN_DELTA) {
        Ok(plan) => plan,
        Err(kernelshot::Error::UndecidableScore) => return Ok(0),
        Err(e) => return Err(err(e)),
    };
    match planned_shots_under_noise(plan.shots, scale) {
        Ok(shots) => Ok(shots),
        Err(kernelshot::Error::SignDestroyed) => Ok(0),
        Err(e) => Err(err(e)),
    }
}

/// Analytic score curve of the two-point toy dataset under the
/// swap-test classifier, with the expectation and variance the chosen
/// depolarizing strength leaves behind.
pub fn toy_curve(steps: usize, noise_p: f64) -> Result<String, String> {
    if steps < 2 {
        return Err(format!("curve needs at least 2 points, got {steps}"));
    }
    if steps > MAX_CURVE_STEPS {
        return Err(format!("curve is capped at {MAX_CURVE_STEPS} points, got {steps}"));
    }
    let scale = check_noise_p(noise_p)?;
    let spec = ClassifierSpec::stc(1);
    let thetas = linspace_angles(steps);
    let mut scores = Vec::with_capacity(steps);
    let mut expectations = Vec::with_capacity(steps);
    let mut variances = Vec::with_capacity(steps);
    for &theta in &thetas {
        let f = classification_score(&LabeledDataset::toy(theta), &spec)
            .map_err(err)?
            .score;
        let e = scale * f;
        scores.push(f);
        expectations.push(e);
        variances.push(variance_of_score(e, 1).map_err(err)?);
    }
    Ok(format!(
        "{{\"theta\":{},\"score\":{},\"expectation\":{},\"variance\":{},\"noise_scale\":{}}}",
        fmt_array(&thetas),
        fmt_array(&scores),
        fmt_array(&expectations),
        fmt_array(&variances),
        fmt_num(scale),
    ))
}

/// One finite-shot experiment on the toy dataset: exact distribution,
/// depolarized, then sampled with the given seed.
pub fn toy_shots(theta: f64, shots: u64, seed: u64, noise_p: f64) -> Result<String, String> {
    check_finite(theta, "theta")?;
    if shots == 0 {
        return Err("shot count must be positive".into());
    }
    let scale = check_noise_p(noise_p)?;
    let data = LabeledDataset::toy(theta);
    let spec = ClassifierSpec::stc(1);
    let report = classification_score(&data, &spec).map_err(err)?;
    let expectation = scale * report.score;
    let variance = variance_of_score(expectation, 1).map_err(err)?;
    let dist = rescaled(simulate(&data, &spec).map_err(err)?.distribution, scale)?;
    let record = sample(&dist, shots, seed).map_err(err)?;
    let mean = empirical_mean(&record, 1);
    let label_mean = decide_mean(&record, 1);
    let label_majority = decide_majority(&record, 1).map_err(err)?;
    let planned = planned_budget(report.score, scale)?;
    let counts = record.counts;
    Ok(format!(
        "{{\"theta\":{},\"score\":{},\"expectation\":{},\"variance\":{},\
\"shots\":{},\"seed\":{},\"counts\":[{},{},{},{}],\"empirical_mean\":{},\
\"label_mean\":\"{}\",\"label_majority\":\"{}\",\"planned_shots\":{},\"noise_scale\":{}}}",
        fmt_num(theta),
        fmt_num(report.score),
        fmt_num(expectation),
        fmt_num(variance),
        shots,
        seed,
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        fmt_num(mean),
        label_mean,
        label_majority,
        planned,
        fmt_num(scale),
    ))
}

/// Squared-expectation objective over a (θ₀, θ₁) grid at fixed φ for
/// the toy dataset prepared at `theta`. Row-major with θ₀ as the row
/// index, plus the first grid point attaining the maximum.
pub fn angle_landscape(theta: f64, points: usize, phi: f64) -> Result<String, String> {
    check_finite(theta, "theta")?;
    check_finite(phi, "phi")?;
    if points < 2 {
        return Err(format!("landscape needs at least 2 points per axis, got {points}"));
    }
    if points > MAX_GRID_POINTS {
        return Err(format!(
            "landscape is capped at {MAX_GRID_POINTS} points per axis, got {points}"
        ));
    }
    let axis = linspace_angles(points);
    let grid = AngleGrid::new(axis.clone(), axis.clone(), vec![phi]);
    let data = LabeledDataset::toy(theta);
    let table = angle_scan(&data, &grid, Variant::Stc, 1).map_err(err)?;
    let objective: Vec<f64> = table.rows.iter().map(|row| row.objective).collect();
    let best = table.max_row();
    Ok(format!(
        "{{\"phi\":{},\"theta0\":{},\"theta1\":{},\"objective\":{},\
\"max\":{{\"theta0\":{},\"theta1\":{},\"objective\":{}}}}}",
        fmt_num(phi),
        fmt_array(&axis),
        fmt_array(&axis),
        fmt_array(&objective),
        fmt_num(best.angles.theta0),
        fmt_num(best.angles.theta1),
        fmt_num(best.objective),
    ))
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    #[wasm_bindgen]
    pub fn toy_curve(steps: u32, noise_p: f64) -> Result<String, JsError> {
        crate::toy_curve(steps as usize, noise_p).map_err(|m| JsError::new(&m))
    }

    #[wasm_bindgen]
    pub fn toy_shots(theta: f64, shots: u32, seed: u32, noise_p: f64) -> Result<String, JsError> {
        crate::toy_shots(theta, shots as u64, seed as u64, noise_p).map_err(|m| JsError::new(&m))
    }

    #[wasm_bindgen]
    pub fn angle_landscape(theta: f64, points: u32, phi: f64) -> Result<String, JsError> {
        crate::angle_landscape(theta, points as usize, phi).map_err(|m| JsError::new(&m))
    }
}
