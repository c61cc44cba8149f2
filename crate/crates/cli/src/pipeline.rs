//! Experiment execution: expands the sweep into points, computes each
//! row's analytic quantities, samples shot records and assembles the
//! report in deterministic sweep-then-seed order.
//!
//! Noise is handled analytically. An ancilla Pauli channel either
//! keeps or flips the ancilla bit of every outcome, so its effect on
//! the measured distribution is a two-part mixture with weights
//! (1 ± s)/2 where s is the channel's expectation scale. No density
//! matrix is ever materialized here.

use kernelshot::circuits::{simulate, OutcomeDistribution};
use kernelshot::dataset::{ClassifierSpec, LabeledDataset};
use kernelshot::kernels::{classification_score, general_expectation};
use kernelshot::moments::{plan_shots, skewness_of_score, variance_of_score};
use kernelshot::noise::{effective_scale, planned_shots_under_noise, NoiseSpec};
use kernelshot::sampling::{decide_majority, decide_mean, empirical_mean, sample};
use rayon::prelude::*;

use crate::config::{DatasetSource, Experiment, SweepParam};
use crate::error::CliError;
use crate::report::Row;

/// Which register is read out: the full ancilla-and-label observable,
/// or the single ancilla qubit after the label-controlled flip has
/// folded the label parity into it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementPath {
    Joint,
    Reduced,
}

/// One fully resolved sweep point.
struct Point {
    sweep_param: &'static str,
    sweep_value: f64,
    data: LabeledDataset,
    spec: ClassifierSpec,
    noise: Option<NoiseSpec>,
    shots: u64,
}

fn resolve_point(exp: &Experiment, param: SweepParam, value: f64) -> Point {
    let mut spec = exp.spec;
    let mut noise = exp.noise.clone();
    let mut shots = exp.shots;
    let mut dataset = exp.dataset.clone();
    let mut recorded = value;
    match param {
        SweepParam::Theta => dataset = DatasetSource::Toy { theta: value },
        SweepParam::DepolarizingP => noise = Some(NoiseSpec::depolarizing(value)),
        SweepParam::Theta0 => spec.angles.theta0 = value,
        SweepParam::Theta1 => spec.angles.theta1 = value,
        SweepParam::Phi => spec.angles.phi = value,
        SweepParam::Shots => {
            shots = value.round() as u64;
            recorded = value.round();
        }
        SweepParam::KCopies => {
            spec.copies = value.round() as usize;
            recorded = value.round();
        }
        SweepParam::Lambda => {
            spec.label_width = value.round() as usize;
            recorded = value.round();
        }
    }
    Point {
        sweep_param: param.name(),
        sweep_value: recorded,
        data: dataset.materialize(),
        spec,
        noise,
        shots,
    }
}

fn expand_points(exp: &Experiment) -> Vec<Point> {
    match &exp.sweep {
        None => vec![Point {
            sweep_param: "none",
            sweep_value: 0.0,
            data: exp.dataset.materialize(),
            spec: exp.spec,
            noise: exp.noise.clone(),
            shots: exp.shots,
        }],
        Some(sweep) => sweep
            .values
            .iter()
            .map(|&v| resolve_point(exp, sweep.param, v))
            .collect(),
    }
}

/// p'(a, l) = (1+s)/2 · p(a, l) + (1−s)/2 · p(1−a, l): the identity
/// and z mass of the channel keeps the ancilla bit, the x and y mass
/// flips it.
fn rescale_distribution(
    dist: &OutcomeDistribution,
    scale: f64,
) -> kernelshot::Result<OutcomeDistribution> {
    let p = dist.probabilities();
    let flipped = OutcomeDistribution::new([p[2], p[3], p[0], p[1]])?;
    OutcomeDistribution::mix(&[
        ((1.0 + scale) / 2.0, *dist),
        ((1.0 - scale) / 2.0, flipped),
    ])
}

/// The label-controlled flip sends outcome (a, l) to (a ⊕ l, l), so
/// the reduced ancilla lands on 0 with probability p(0,0̄) + p(1,1̄).
fn reduce_distribution(
    dist: &OutcomeDistribution,
) -> kernelshot::Result<OutcomeDistribution> {
    let p = dist.probabilities();
    OutcomeDistribution::from_ancilla_marginal(p[0] + p[3])
}

/// Chebyshev budget for deciding at this operating point, inflated by
/// the noise overhead. Zero means no finite plan exists: either the
/// score is numerically zero or the channel destroys the signal.
fn planned_budget(
    e_clean: f64,
    lambda: usize,
    c: f64,
    delta: f64,
    noise: Option<f64>,
) -> Result<u64, CliError> {
    let base = match plan_shots(e_clean, lambda, c, delta) {
        Ok(plan) => plan.shots,
        Err(kernelshot::Error::UndecidableScore) => return Ok(0),
        Err(e) => return Err(e.into()),
    };
    match noise {
        None => Ok(base),
        Some(scale) => match planned_shots_under_noise(base, scale) {
            Ok(shots) => Ok(shots),
            Err(kernelshot::Error::SignDestroyed) => Ok(0),
            Err(e) => Err(e.into()),
        },
    }
}

fn point_rows(
    point: &Point,
    base_seed: u64,
    first_row: u64,
    repetitions: u64,
    c: f64,
    delta: f64,
    path: MeasurementPath,
) -> Result<Vec<Row>, CliError> {
    let lambda = point.spec.label_width;
    if path == MeasurementPath::Reduced && lambda != 1 {
        return Err(CliError::Runtime(format!(
            "the reduced measurement path reads a single qubit and supports label \
width 1, got {lambda}"
        )));
    }
    let f_analytic = classification_score(&point.data, &point.spec)?.score;
    let e_clean = general_expectation(
        &point.data,
        point.spec.angles,
        point.spec.variant,
        point.spec.copies,
    )?;
    let scale = match &point.noise {
        Some(spec) => effective_scale(spec)?.scale,
        None => 1.0,
    };
    let e_eff = scale * e_clean;
    let expectation = lambda as f64 * e_eff;
    let variance = variance_of_score(e_eff, lambda)?;
    let skewness = skewness_of_score(e_eff).unwrap_or(f64::NAN);
    let shots_planned = planned_budget(
        e_clean,
        lambda,
        c,
        delta,
        point.noise.as_ref().map(|_| scale),
    )?;

    let mut dist = simulate(&point.data, &point.spec)?.distribution;
    if point.noise.is_some() {
        dist = rescale_distribution(&dist, scale)?;
    }
    if path == MeasurementPath::Reduced {
        dist = reduce_distribution(&dist)?;
    }

    let mut rows = Vec::with_capacity(repetitions as usize);
    for rep in 0..repetitions {
        let seed = base_seed.wrapping_add(first_row + rep);
        let record = sample(&dist, point.shots, seed)?;
        let label_majority = if lambda == 1 {
            decide_majority(&record, 1)?.to_string()
        } else {
            "n/a".to_string()
        };
        rows.push(Row {
            sweep_param: point.sweep_param,
            sweep_value: point.sweep_value,
            f_analytic,
            expectation,
            variance,
            skewness,
            shots_planned,
            shots_used: point.shots,
            empirical_mean: empirical_mean(&record, lambda),
            label_mean: decide_mean(&record, lambda).to_string(),
            label_majority,
            noise_scale: scale,
            seed,
        });
    }
    Ok(rows)
}

/// Runs every sweep point. Points execute concurrently (`jobs = 0`
/// uses every core); rows come back in sweep-then-seed order with the
/// row at flat index i seeded by `base_seed + i`, so the report is
/// identical at any thread count.
pub fn run_experiment(
    exp: &Experiment,
    path: MeasurementPath,
    jobs: usize,
) -> Result<Vec<Row>, CliError> {
    let points = expand_points(exp);
    let reps = exp.repetitions.max(1);
    let work = |points: &[Point]| -> Result<Vec<Vec<Row>>, CliError> {
        points
            .par_iter()
            .enumerate()
            .map(|(i, pt)| point_rows(pt, exp.seed, i as u64 * reps, reps, exp.c, exp.delta, path))
            .collect()
    };
    let nested = if jobs == 0 {
        work(&points)?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
        pool.install(|| work(&points))?
    };
    Ok(nested.into_iter().flatten().collect())
}
