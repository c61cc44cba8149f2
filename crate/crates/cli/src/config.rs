//! Experiment configuration: the TOML schema, field-level validation
//! diagnostics and resolution into library types.
//!
//! `check` is the single source of truth for what counts as a valid
//! config: `validate` prints its diagnostics and `run` refuses to start
//! while any remain, so the two subcommands can never disagree.

use std::path::{Path, PathBuf};

use kernelshot::dataset::{Angles, ClassifierSpec, LabeledDataset, Variant};
use kernelshot::noise::{NoiseSpec, PauliTerm};
use kernelshot::qstate::{Pauli, PauliString};
use num_complex::Complex64;
use serde::Deserialize;

pub const SCHEMA_VERSION: i64 = 1;

pub const DEFAULT_SHOTS: u64 = 8192;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_C: f64 = 2.0;
pub const DEFAULT_DELTA: f64 = 0.05;

/// Integer sweep values may be written as reals; anything further than
/// this from a whole number is rejected.
const INTEGER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub schema_version: Option<i64>,
    pub dataset: Option<RawDataset>,
    pub classifier: Option<RawClassifier>,
    pub noise: Option<RawNoise>,
    pub shots: Option<RawShots>,
    pub sweep: Option<RawSweep>,
    pub plan: Option<RawPlan>,
    pub output: Option<RawOutput>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDataset {
    pub source: Option<String>,
    pub theta: Option<f64>,
    pub path: Option<String>,
    pub training: Option<Vec<RawTrainingPoint>>,
    pub test: Option<RawTestPoint>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTrainingPoint {
    pub amplitudes: Vec<[f64; 2]>,
    pub label: i64,
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTestPoint {
    pub amplitudes: Vec<[f64; 2]>,
}

/// Payload of a dataset file referenced by `source = "file"`: the same
/// shape as the inline tables.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDatasetFile {
    pub training: Vec<RawTrainingPoint>,
    pub test: RawTestPoint,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawClassifier {
    pub variant: Option<String>,
    pub copies: Option<i64>,
    pub label_width: Option<i64>,
    pub theta0: Option<f64>,
    pub theta1: Option<f64>,
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNoise {
    pub kind: Option<String>,
    pub p: Option<f64>,
    pub terms: Option<Vec<RawNoiseTerm>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNoiseTerm {
    pub weight: f64,
    pub factor: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawShots {
    pub count: Option<i64>,
    pub seed: Option<i64>,
    pub repetitions: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSweep {
    pub parameter: Option<String>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub steps: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPlan {
    pub c: Option<f64>,
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutput {
    pub path: Option<String>,
    pub format: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Theta,
    DepolarizingP,
    Theta0,
    Theta1,
    Phi,
    Shots,
    KCopies,
    Lambda,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Theta => "theta",
            SweepParam::DepolarizingP => "p",
            SweepParam::Theta0 => "theta0",
            SweepParam::Theta1 => "theta1",
            SweepParam::Phi => "phi",
            SweepParam::Shots => "shots",
            SweepParam::KCopies => "k_copies",
            SweepParam::Lambda => "lambda",
        }
    }

    fn parse(text: &str) -> Option<Self> {
        match text {
            "theta" => Some(SweepParam::Theta),
            "p" => Some(SweepParam::DepolarizingP),
            "theta0" => Some(SweepParam::Theta0),
            "theta1" => Some(SweepParam::Theta1),
            "phi" => Some(SweepParam::Phi),
            "shots" => Some(SweepParam::Shots),
            "k_copies" => Some(SweepParam::KCopies),
            "lambda" => Some(SweepParam::Lambda),
            _ => None,
        }
    }

}

/// The classifier input: either the built-in two-point example at a
/// test angle, or a fully specified dataset.
#[derive(Debug, Clone)]
pub enum DatasetSource {
    Toy { theta: f64 },
    Fixed(LabeledDataset),
}

impl DatasetSource {
    pub fn materialize(&self) -> LabeledDataset {
        match self {
            DatasetSource::Toy { theta } => LabeledDataset::toy(*theta),
            DatasetSource::Fixed(data) => data.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// A validated experiment, ready to execute.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub dataset: DatasetSource,
    pub spec: ClassifierSpec,
    pub noise: Option<NoiseSpec>,
    pub shots: u64,
    pub seed: u64,
    pub repetitions: u64,
    pub sweep: Option<Sweep>,
    pub c: f64,
    pub delta: f64,
    pub out_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Experiment {
    /// The noiseless single-point default: the two-point example at
    /// θ = π/2 under the swap-test classifier.
    pub fn toy_default() -> Self {
        Experiment {
            dataset: DatasetSource::Toy {
                theta: std::f64::consts::FRAC_PI_2,
            },
            spec: ClassifierSpec::stc(1),
            noise: None,
            shots: DEFAULT_SHOTS,
            seed: DEFAULT_SEED,
            repetitions: 1,
            sweep: None,
            c: DEFAULT_C,
            delta: DEFAULT_DELTA,
            out_path: None,
            format: OutputFormat::Csv,
        }
    }
}

/// Evenly spaced sweep values, inclusive of both endpoints.
pub fn linspace(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![start];
    }
    let span = stop - start;
    (0..steps)
        .map(|i| start + i as f64 * span / (steps - 1) as f64)
        .collect()
}

/// Reads and parses a config file. The returned path is the directory
/// the file lives in; dataset paths are resolved against it.
pub fn load(path: &Path) -> Result<(RawConfig, PathBuf), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("config: cannot read {}: {e}", path.display()))?;
    let raw: RawConfig =
        toml::from_str(&text).map_err(|e| format!("config: parse error: {e}"))?;
    let base = path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    Ok((raw, base))
}

/// Validates every field and, when nothing is wrong, builds the
/// executable experiment. Diagnostics are ordered by section.
pub fn check(raw: &RawConfig, base: &Path) -> (Vec<String>, Option<Experiment>) {
    let mut diags = Vec::new();

    match raw.schema_version {
        None => diags.push(format!(
            "schema_version: missing (expected {SCHEMA_VERSION})"
        )),
        Some(v) if v != SCHEMA_VERSION => diags.push(format!(
            "schema_version: unsupported version {v} (expected {SCHEMA_VERSION})"
        )),
        _ => {}
    }

    let dataset = check_dataset(raw.dataset.as_ref(), base, &mut diags);
    let spec = check_classifier(raw.classifier.as_ref(), &mut diags);
    let noise = check_noise(raw.noise.as_ref(), &mut diags);
    let (shots, seed, repetitions) = check_shots(raw.shots.as_ref(), &mut diags);
    let sweep = check_sweep(raw.sweep.as_ref(), raw, &mut diags);
    let (c, delta) = check_plan(raw.plan.as_ref(), &mut diags);
    let (out_path, format) = check_output(raw.output.as_ref(), &mut diags);

    if !diags.is_empty() {
        return (diags, None);
    }
    let experiment = Experiment {
        dataset: dataset.expect("clean diagnostics imply a dataset"),
        spec: spec.expect("clean diagnostics imply a classifier"),
        noise,
        shots,
        seed,
        repetitions,
        sweep,
        c,
        delta,
        out_path,
        format,
    };
    (Vec::new(), Some(experiment))
}

fn check_dataset(
    raw: Option<&RawDataset>,
    base: &Path,
    diags: &mut Vec<String>,
) -> Option<DatasetSource> {
    let Some(ds) = raw else {
        // No [dataset] table means the built-in example at θ = π/2.
        return Some(DatasetSource::Toy {
            theta: std::f64::consts::FRAC_PI_2,
        });
    };
    let source = ds.source.as_deref().unwrap_or("toy");
    match source {
        "toy" => {
            if ds.path.is_some() {
                diags.push("dataset.path: only valid when source = \"file\"".into());
            }
            if ds.training.is_some() || ds.test.is_some() {
                diags.push(
                    "dataset.training/test: only valid when source = \"inline\"".into(),
                );
            }
            let theta = ds.theta.unwrap_or(std::f64::consts::FRAC_PI_2);
            if !theta.is_finite() {
                diags.push(format!("dataset.theta: must be finite, got {theta}"));
                return None;
            }
            Some(DatasetSource::Toy { theta })
        }
        "inline" => {
            if ds.theta.is_some() {
                diags.push("dataset.theta: only valid when source = \"toy\"".into());
            }
            if ds.path.is_some() {
                diags.push("dataset.path: only valid when source = \"file\"".into());
            }
            let training = match ds.training.as_ref() {
                Some(t) => t.as_slice(),
                None => {
                    diags.push("dataset.training: required when source = \"inline\"".into());
                    return None;
                }
            };
            let Some(test) = ds.test.as_ref() else {
                diags.push("dataset.test: required when source = \"inline\"".into());
                return None;
            };
            build_fixed_dataset(training, test, "dataset", diags)
        }
        "file" => {
            if ds.theta.is_some() {
                diags.push("dataset.theta: only valid when source = \"toy\"".into());
            }
            if ds.training.is_some() || ds.test.is_some() {
                diags.push(
                    "dataset.training/test: only valid when source = \"inline\"".into(),
                );
            }
            let Some(rel) = ds.path.as_ref() else {
                diags.push("dataset.path: required when source = \"file\"".into());
                return None;
            };
            let path = base.join(rel);
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    diags.push(format!(
                        "dataset.path: cannot read {}: {e}",
                        path.display()
                    ));
                    return None;
                }
            };
            let file: RawDatasetFile = match toml::from_str(&text) {
                Ok(f) => f,
                Err(e) => {
                    diags.push(format!("dataset.path: {}: {e}", path.display()));
                    return None;
                }
            };
            build_fixed_dataset(&file.training, &file.test, "dataset.path", diags)
        }
        other => {
            diags.push(format!(
                "dataset.source: unknown source \"{other}\" (expected toy, inline or file)"
            ));
            None
        }
    }
}

fn parse_amplitudes(
    pairs: &[[f64; 2]],
    field: &str,
    diags: &mut Vec<String>,
) -> Option<Vec<Complex64>> {
    if pairs.is_empty() {
        diags.push(format!("{field}: amplitude list is empty"));
        return None;
    }
    let mut out = Vec::with_capacity(pairs.len());
    let mut norm = 0.0;
    for &[re, im] in pairs {
        if !re.is_finite() || !im.is_finite() {
            diags.push(format!("{field}: amplitudes must be finite"));
            return None;
        }
        norm += re * re + im * im;
        out.push(Complex64::new(re, im));
    }
    if norm <= 0.0 {
        diags.push(format!("{field}: amplitude vector has zero norm"));
        return None;
    }
    Some(out)
}

fn build_fixed_dataset(
    training: &[RawTrainingPoint],
    test: &RawTestPoint,
    prefix: &str,
    diags: &mut Vec<String>,
) -> Option<DatasetSource> {
    let before = diags.len();
    if training.is_empty() {
        diags.push(format!("{prefix}.training: needs at least one state"));
        return None;
    }
    let mut vectors = Vec::with_capacity(training.len());
    let mut labels = Vec::with_capacity(training.len());
    let mut weights = Vec::new();
    for (j, point) in training.iter().enumerate() {
        let field = format!("{prefix}.training[{j}]");
        if let Some(v) = parse_amplitudes(&point.amplitudes, &field, diags) {
            vectors.push(v);
        }
        if point.label != 0 && point.label != 1 {
            diags.push(format!("{field}.label: labels are binary, got {}", point.label));
        }
        labels.push(point.label.clamp(0, 1) as u8);
        if let Some(w) = point.weight {
            if !w.is_finite() || w < 0.0 {
                diags.push(format!("{field}.weight: must be nonnegative, got {w}"));
            }
            weights.push(w);
        }
    }
    if !weights.is_empty() && weights.len() != training.len() {
        diags.push(format!(
            "{prefix}.training: give a weight for every state or for none"
        ));
    }
    let test_vec = parse_amplitudes(&test.amplitudes, &format!("{prefix}.test"), diags);
    if !weights.is_empty() && weights.len() == training.len() {
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > kernelshot::dataset::WEIGHT_TOL {
            diags.push(format!("{prefix}.training: weights must sum to 1, got {sum}"));
        }
    }
    let lengths_differ = vectors
        .first()
        .map(|f| vectors.iter().any(|v| v.len() != f.len()))
        .unwrap_or(false)
        || test_vec
            .as_ref()
            .zip(vectors.first())
            .map(|(t, f)| t.len() != f.len())
            .unwrap_or(false);
    if lengths_differ {
        diags.push(format!(
            "{prefix}: every state must have the same number of amplitudes"
        ));
    }
    if diags.len() > before {
        return None;
    }
    let test_vec = test_vec?;
    let result = if weights.is_empty() {
        LabeledDataset::from_vectors(&vectors, &labels, &test_vec)
    } else {
        let states = vectors
            .iter()
            .map(|v| {
                kernelshot::qstate::amplitude_encode(v, "data")
                    .map(kernelshot::qstate::QState::Pure)
            })
            .collect::<kernelshot::Result<Vec<_>>>();
        states.and_then(|states| {
            kernelshot::qstate::amplitude_encode(&test_vec, "data").and_then(|t| {
                LabeledDataset::new(
                    states,
                    labels.clone(),
                    weights.clone(),
                    kernelshot::qstate::QState::Pure(t),
                )
            })
        })
    };
    match result {
        Ok(data) => Some(DatasetSource::Fixed(data)),
        Err(e) => {
            diags.push(format!("{prefix}: {e}"));
            None
        }
    }
}

fn check_classifier(
    raw: Option<&RawClassifier>,
    diags: &mut Vec<String>,
) -> Option<ClassifierSpec> {
    let defaults = RawClassifier {
        variant: None,
        copies: None,
        label_width: None,
        theta0: None,
        theta1: None,
        phi: None,
    };
    let c = raw.unwrap_or(&defaults);
    let before = diags.len();
    let variant = match c.variant.as_deref().unwrap_or("stc") {
        "htc" => Variant::Htc,
        "stc" => Variant::Stc,
        other => {
            diags.push(format!(
                "classifier.variant: unknown variant \"{other}\" (expected htc or stc)"
            ));
            Variant::Stc
        }
    };
    let copies = c.copies.unwrap_or(1);
    if copies < 1 {
        diags.push(format!("classifier.copies: must be at least 1, got {copies}"));
    } else if variant == Variant::Htc && copies != 1 {
        diags.push(format!(
            "classifier.copies: the amplitude variant admits a single copy, got {copies}"
        ));
    }
    let label_width = c.label_width.unwrap_or(1);
    if label_width < 1 {
        diags.push(format!(
            "classifier.label_width: must be at least 1, got {label_width}"
        ));
    }
    let defaults = Angles::hadamard_point();
    let theta0 = c.theta0.unwrap_or(defaults.theta0);
    let theta1 = c.theta1.unwrap_or(defaults.theta1);
    let phi = c.phi.unwrap_or(defaults.phi);
    for (name, value) in [("theta0", theta0), ("theta1", theta1), ("phi", phi)] {
        if !value.is_finite() {
            diags.push(format!("classifier.{name}: must be finite, got {value}"));
        }
    }
    if diags.len() > before {
        return None;
    }
    let spec = ClassifierSpec {
        variant,
        copies: copies as usize,
        label_width: label_width as usize,
        angles: Angles::new(theta0, theta1, phi),
    };
    Some(spec)
}

fn check_noise(raw: Option<&RawNoise>, diags: &mut Vec<String>) -> Option<NoiseSpec> {
    let n = raw?;
    let kind = match n.kind.as_deref() {
        Some(k) => k,
        None => {
            // Infer from which payload is present.
            match (n.p.is_some(), n.terms.is_some()) {
                (true, false) => "depolarizing",
                (false, true) => "pauli",
                _ => {
                    diags.push(
                        "noise: give either p (depolarizing) or terms (pauli)".into(),
                    );
                    return None;
                }
            }
        }
    };
    match kind {
        "depolarizing" => {
            if n.terms.is_some() {
                diags.push("noise.terms: only valid when kind = \"pauli\"".into());
            }
            let Some(p) = n.p else {
                diags.push("noise.p: required for depolarizing noise".into());
                return None;
            };
            if !(0.0..=1.0).contains(&p) {
                diags.push(format!("noise.p: rate must lie in [0, 1], got {p}"));
                return None;
            }
            Some(NoiseSpec::depolarizing(p))
        }
        "pauli" => {
            if n.p.is_some() {
                diags.push("noise.p: only valid when kind = \"depolarizing\"".into());
            }
            let Some(terms) = n.terms.as_ref() else {
                diags.push("noise.terms: required for pauli noise".into());
                return None;
            };
            if terms.is_empty() {
                diags.push("noise.terms: needs at least one term".into());
                return None;
            }
            let before = diags.len();
            let mut parsed = Vec::with_capacity(terms.len());
            let mut sum = 0.0;
            for (i, term) in terms.iter().enumerate() {
                if !term.weight.is_finite() || term.weight < 0.0 {
                    diags.push(format!(
                        "noise.terms[{i}].weight: must be nonnegative, got {}",
                        term.weight
                    ));
                }
                sum += term.weight;
                let upper = term.factor.to_ascii_uppercase();
                let factor = match upper.as_str() {
                    "I" => Some(Pauli::I),
                    "X" => Some(Pauli::X),
                    "Y" => Some(Pauli::Y),
                    "Z" => Some(Pauli::Z),
                    _ => {
                        diags.push(format!(
                            "noise.terms[{i}].factor: expected I, X, Y or Z, got \"{}\"",
                            term.factor
                        ));
                        None
                    }
                };
                if let Some(f) = factor {
                    parsed.push(PauliTerm::new(term.weight, PauliString::new(vec![f])));
                }
            }
            if (sum - 1.0).abs() > kernelshot::noise::COEFFICIENT_TOL {
                diags.push(format!("noise.terms: weights must sum to 1, got {sum}"));
            }
            if diags.len() > before {
                return None;
            }
            Some(NoiseSpec::pauli_channel(parsed))
        }
        other => {
            diags.push(format!(
                "noise.kind: unknown kind \"{other}\" (expected depolarizing or pauli)"
            ));
            None
        }
    }
}

fn check_shots(raw: Option<&RawShots>, diags: &mut Vec<String>) -> (u64, u64, u64) {
    let mut shots = DEFAULT_SHOTS;
    let mut seed = DEFAULT_SEED;
    let mut repetitions = 1;
    let Some(s) = raw else {
        return (shots, seed, repetitions);
    };
    if let Some(count) = s.count {
        if count < 1 {
            diags.push(format!("shots.count: must be positive, got {count}"));
        } else {
            shots = count as u64;
        }
    }
    if let Some(raw_seed) = s.seed {
        // TOML integers are signed; negative seeds map onto the upper
        // half of the u64 range.
        seed = raw_seed as u64;
    }
    if let Some(reps) = s.repetitions {
        if reps < 1 {
            diags.push(format!("shots.repetitions: must be positive, got {reps}"));
        } else {
            repetitions = reps as u64;
        }
    }
    (shots, seed, repetitions)
}

fn check_sweep(
    raw: Option<&RawSweep>,
    config: &RawConfig,
    diags: &mut Vec<String>,
) -> Option<Sweep> {
    let s = raw?;
    let before = diags.len();
    let param = match s.parameter.as_deref() {
        None => {
            diags.push("sweep.parameter: required".into());
            None
        }
        Some(name) => match SweepParam::parse(name) {
            Some(p) => Some(p),
            None => {
                diags.push(format!(
                    "sweep.parameter: unknown parameter \"{name}\" (expected theta, p, \
theta0, theta1, phi, shots, k_copies or lambda)"
                ));
                None
            }
        },
    };
    let start = s.start.unwrap_or_else(|| {
        diags.push("sweep.start: required".into());
        0.0
    });
    let stop = s.stop.unwrap_or_else(|| {
        diags.push("sweep.stop: required".into());
        0.0
    });
    if !start.is_finite() || !stop.is_finite() {
        diags.push("sweep: start and stop must be finite".into());
    }
    let steps = match s.steps {
        None => {
            diags.push("sweep.steps: required".into());
            1
        }
        Some(n) if n < 1 => {
            diags.push(format!("sweep.steps: must be at least 1, got {n}"));
            1
        }
        Some(n) => n as usize,
    };
    if diags.len() > before {
        return None;
    }
    let param = param?;
    let values = linspace(start, stop, steps);

    match param {
        SweepParam::Theta => {
            let source = config
                .dataset
                .as_ref()
                .and_then(|d| d.source.as_deref())
                .unwrap_or("toy");
            if source != "toy" {
                diags.push(
                    "sweep.parameter: a theta sweep varies the built-in example's test \
state, so it requires dataset.source = \"toy\""
                        .into(),
                );
            }
        }
        SweepParam::DepolarizingP => {
            if values.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
                diags.push("sweep: p values must lie in [0, 1]".into());
            }
            let pauli_configured = config
                .noise
                .as_ref()
                .map(|n| n.kind.as_deref() == Some("pauli") || n.terms.is_some())
                .unwrap_or(false);
            if pauli_configured {
                diags.push(
                    "sweep.parameter: a p sweep sets depolarizing noise and cannot be \
combined with a pauli channel"
                        .into(),
                );
            }
        }
        SweepParam::Shots | SweepParam::KCopies | SweepParam::Lambda => {
            let whole = values
                .iter()
                .all(|v| (v - v.round()).abs() <= INTEGER_TOL && v.round() >= 1.0);
            if !whole {
                diags.push(format!(
                    "sweep: {} values must be whole numbers of at least 1",
                    param.name()
                ));
            }
            if param == SweepParam::KCopies {
                let variant = config
                    .classifier
                    .as_ref()
                    .and_then(|c| c.variant.as_deref())
                    .unwrap_or("stc");
                if variant == "htc" {
                    diags.push(
                        "sweep.parameter: the amplitude variant admits a single copy, \
so k_copies cannot be swept"
                            .into(),
                    );
                }
            }
        }
        SweepParam::Theta0 | SweepParam::Theta1 | SweepParam::Phi => {}
    }
    if diags.len() > before {
        return None;
    }
    Some(Sweep { param, values })
}

fn check_plan(raw: Option<&RawPlan>, diags: &mut Vec<String>) -> (f64, f64) {
    let mut c = DEFAULT_C;
    let mut delta = DEFAULT_DELTA;
    let Some(p) = raw else {
        return (c, delta);
    };
    if let Some(value) = p.c {
        if !value.is_finite() || value <= 1.0 {
            diags.push(format!("plan.c: precision ratio must exceed 1, got {value}"));
        } else {
            c = value;
        }
    }
    if let Some(value) = p.delta {
        if !(value > 0.0 && value < 1.0) {
            diags.push(format!("plan.delta: must lie in (0, 1), got {value}"));
        } else {
            delta = value;
        }
    }
    (c, delta)
}

fn check_output(
    raw: Option<&RawOutput>,
    diags: &mut Vec<String>,
) -> (Option<PathBuf>, OutputFormat) {
    let mut path = None;
    let mut format = OutputFormat::Csv;
    let Some(o) = raw else {
        return (path, format);
    };
    path = o.path.as_ref().map(PathBuf::from);
    match o.format.as_deref() {
        None | Some("csv") => {}
        Some("json") => format = OutputFormat::Json,
        Some(other) => diags.push(format!(
            "output.format: unknown format \"{other}\" (expected csv or json)"
        )),
    }
    (path, format)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_text(text: &str) -> (Vec<String>, Option<Experiment>) {
        let raw: RawConfig = toml::from_str(text).expect("parseable config");
        check(&raw, Path::new("."))
    }

    #[test]
    fn minimal_toy_config_is_valid() {
        let (diags, exp) = check_text("schema_version = 1\n");
        assert!(diags.is_empty(), "{diags:?}");
        let exp = exp.unwrap();
        assert!(matches!(exp.dataset, DatasetSource::Toy { .. }));
        assert_eq!(exp.shots, DEFAULT_SHOTS);
        assert_eq!(exp.seed, DEFAULT_SEED);
        assert_eq!(exp.repetitions, 1);
        assert!(exp.noise.is_none());
        assert!(exp.sweep.is_none());
    }

    #[test]
    fn missing_schema_version_is_flagged() {
        let (diags, exp) = check_text("[shots]\ncount = 100\n");
        assert!(diags.iter().any(|d| d.contains("schema_version")));
        assert!(exp.is_none());
    }

    #[test]
    fn full_sweep_config_resolves() {
        let text = r#"
schema_version = 1

[dataset]
source = "toy"

[classifier]
variant = "stc"
copies = 1

[noise]
kind = "depolarizing"
p = 0.2

[shots]
count = 4096
seed = 7
repetitions = 3

[sweep]
parameter = "theta"
start = 0.0
stop = 6.283185307179586
steps = 41

[plan]
c = 2.0
delta = 0.1

[output]
format = "json"
"#;
        let (diags, exp) = check_text(text);
        assert!(diags.is_empty(), "{diags:?}");
        let exp = exp.unwrap();
        assert_eq!(exp.shots, 4096);
        assert_eq!(exp.seed, 7);
        assert_eq!(exp.repetitions, 3);
        assert_eq!(exp.format, OutputFormat::Json);
        let sweep = exp.sweep.unwrap();
        assert_eq!(sweep.param, SweepParam::Theta);
        assert_eq!(sweep.values.len(), 41);
        assert_eq!(sweep.values[0], 0.0);
        assert!((sweep.values[40] - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn inline_dataset_round_trips_weights() {
        let text = r#"
schema_version = 1

[dataset]
source = "inline"

[[dataset.training]]
amplitudes = [[1.0, 0.0], [0.0, 0.0]]
label = 0
weight = 0.25

[[dataset.training]]
amplitudes = [[0.0, 0.0], [1.0, 0.0]]
label = 1
weight = 0.75

[dataset.test]
amplitudes = [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]]
"#;
        let (diags, exp) = check_text(text);
        assert!(diags.is_empty(), "{diags:?}");
        match exp.unwrap().dataset {
            DatasetSource::Fixed(data) => {
                assert_eq!(data.len(), 2);
                assert_eq!(data.weights(), &[0.25, 0.75]);
                assert_eq!(data.labels(), &[0, 1]);
            }
            DatasetSource::Toy { .. } => panic!("expected a fixed dataset"),
        }
    }

    #[test]
    fn bad_weights_name_the_rule() {
        let text = r#"
schema_version = 1

[dataset]
source = "inline"

[[dataset.training]]
amplitudes = [[1.0, 0.0]]
label = 0
weight = 0.5

[[dataset.training]]
amplitudes = [[0.0, 1.0]]
label = 1
weight = 0.4

[dataset.test]
amplitudes = [[1.0, 0.0]]
"#;
        let (diags, exp) = check_text(text);
        assert!(exp.is_none());
        assert!(
            diags.iter().any(|d| d.contains("weights must sum to 1")),
            "{diags:?}"
        );
    }

    #[test]
    fn negative_shot_count_is_flagged() {
        let (diags, exp) = check_text("schema_version = 1\n[shots]\ncount = -5\n");
        assert!(exp.is_none());
        assert!(
            diags.iter().any(|d| d.contains("shots.count")),
            "{diags:?}"
        );
    }

    #[test]
    fn theta_sweep_requires_the_toy_source() {
        let text = r#"
schema_version = 1

[dataset]
source = "inline"

[[dataset.training]]
amplitudes = [[1.0, 0.0]]
label = 0

[dataset.test]
amplitudes = [[1.0, 0.0]]

[sweep]
parameter = "theta"
start = 0.0
stop = 1.0
steps = 3
"#;
        let (diags, _) = check_text(text);
        assert!(
            diags.iter().any(|d| d.contains("dataset.source = \"toy\"")),
            "{diags:?}"
        );
    }

    #[test]
    fn integer_sweeps_reject_fractional_values() {
        let text = "schema_version = 1\n[sweep]\nparameter = \"shots\"\nstart = 10.0\nstop = 15.0\nsteps = 3\n";
        let (diags, _) = check_text(text);
        assert!(
            diags.iter().any(|d| d.contains("whole numbers")),
            "{diags:?}"
        );
        let ok = "schema_version = 1\n[sweep]\nparameter = \"shots\"\nstart = 10\nstop = 16\nsteps = 3\n";
        let (diags, exp) = check_text(ok);
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(exp.unwrap().sweep.unwrap().values, vec![10.0, 13.0, 16.0]);
    }

    #[test]
    fn pauli_noise_parses_ancilla_terms() {
        let text = r#"
schema_version = 1

[noise]
kind = "pauli"
terms = [
  { weight = 0.9, factor = "I" },
  { weight = 0.1, factor = "x" },
]
"#;
        let (diags, exp) = check_text(text);
        assert!(diags.is_empty(), "{diags:?}");
        let noise = exp.unwrap().noise.unwrap();
        let report = kernelshot::noise::effective_scale(&noise).unwrap();
        assert!((report.scale - 0.8).abs() < 1e-12);
    }

    #[test]
    fn unknown_sweep_parameter_is_flagged() {
        let text = "schema_version = 1\n[sweep]\nparameter = \"banana\"\nstart = 0\nstop = 1\nsteps = 2\n";
        let (diags, exp) = check_text(text);
        assert!(exp.is_none());
        assert!(
            diags.iter().any(|d| d.contains("unknown parameter")),
            "{diags:?}"
        );
    }

    #[test]
    fn linspace_endpoints_are_exact() {
        let values = linspace(0.25, 0.75, 3);
        assert_eq!(values, vec![0.25, 0.5, 0.75]);
        assert_eq!(linspace(1.5, 9.0, 1), vec![1.5]);
    }

    #[test]
    fn depolarizing_rate_out_of_range_is_flagged() {
        let (diags, exp) = check_text("schema_version = 1\n[noise]\nkind = \"depolarizing\"\np = 1.5\n");
        assert!(exp.is_none());
        assert!(diags.iter().any(|d| d.contains("noise.p")), "{diags:?}");
    }
}
