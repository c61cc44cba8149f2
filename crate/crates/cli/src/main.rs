//! kernelshot: batch experiment runner for kernel-based quantum binary
//! classifiers. Parses a TOML config, executes analytic + sampled
//! classifier pipelines (optionally under Pauli noise) and writes
//! deterministic CSV or JSON reports.

mod config;
mod error;
mod pipeline;
mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Experiment, OutputFormat, Sweep, SweepParam};
use error::CliError;
use kernelshot::dataset::{LabeledDataset, Variant};
use kernelshot::kernels::classification_score;
use kernelshot::moments::plan_shots;
use kernelshot::noise::{effective_scale, planned_shots_under_noise};
use kernelshot::optim::{angle_scan, AngleGrid};
use pipeline::MeasurementPath;
use report::{PlanLine, ScanLine};

#[derive(Parser)]
#[command(
    name = "kernelshot",
    version,
    about = "Experiment runner for kernel-based quantum binary classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file
    Run(RunArgs),
    /// Check a config file and list every violated constraint
    Validate {
        /// Path to the experiment config
        #[arg(long)]
        config: PathBuf,
    },
    /// Sweep the built-in two-point example over the test-state angle
    ReproToy(ReproToyArgs),
    /// Tabulate expectation and squared-expectation over an angle grid
    AngleScan(AngleScanArgs),
    /// Sweep the depolarizing rate and report the rescaled statistics
    NoiseSweep(NoiseSweepArgs),
    /// Print the Chebyshev repetition plan for an operating point
    ShotsPlan(ShotsPlanArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the experiment config
    #[arg(long)]
    config: PathBuf,
    /// Report destination (defaults to the config's output.path, else stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format (overrides the config)
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Base seed (overrides the config)
    #[arg(long)]
    seed: Option<u64>,
    /// Shots per row (overrides the config)
    #[arg(long)]
    shots: Option<u64>,
    /// Worker threads for sweep points (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct ReproToyArgs {
    /// Report destination (defaults to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Base seed
    #[arg(long, default_value_t = config::DEFAULT_SEED)]
    seed: u64,
    /// Shots per row
    #[arg(long, default_value_t = config::DEFAULT_SHOTS)]
    shots: u64,
    /// Grid points over [0, 2π]
    #[arg(long, default_value_t = 41)]
    steps: usize,
    /// Sampled rows per grid point
    #[arg(long, default_value_t = 1)]
    repetitions: u64,
    /// Worker threads for sweep points (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct AngleScanArgs {
    /// Optional config supplying the dataset and classifier
    #[arg(long)]
    config: Option<PathBuf>,
    /// Grid points per angle axis
    #[arg(long, default_value_t = 17)]
    points: usize,
    /// Report destination (defaults to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct NoiseSweepArgs {
    /// Optional config supplying dataset, classifier and shot settings
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of depolarizing rates between 0 and --max-p
    #[arg(long, default_value_t = 10)]
    steps: usize,
    /// Largest depolarizing rate
    #[arg(long, default_value_t = 0.9)]
    max_p: f64,
    /// Report destination (defaults to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format (overrides the config)
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Base seed (overrides the config)
    #[arg(long)]
    seed: Option<u64>,
    /// Shots per row (overrides the config)
    #[arg(long)]
    shots: Option<u64>,
    /// Worker threads for sweep points (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct ShotsPlanArgs {
    /// Optional config; the plan targets its analytic score and noise
    #[arg(long)]
    config: Option<PathBuf>,
    /// Operating score f in [-1, 1]
    #[arg(long, conflicts_with = "config")]
    score: Option<f64>,
    /// Label register width
    #[arg(long, default_value_t = 1, conflicts_with = "config")]
    lambda: u64,
    /// Precision ratio: the mean is estimated to within |f|/c
    #[arg(long)]
    c: Option<f64>,
    /// Failure probability bound
    #[arg(long)]
    delta: Option<f64>,
    /// Noise expectation scale s
    #[arg(long, default_value_t = 1.0, conflicts_with = "config")]
    scale: f64,
    /// Report destination (defaults to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { config } => validate_cmd(&config),
        other => match dispatch(other) {
            Ok(()) => 0,
            Err(CliError::Config(diags)) => {
                for d in &diags {
                    eprintln!("{d}");
                }
                2
            }
            Err(CliError::Runtime(msg)) => {
                eprintln!("error: {msg}");
                1
            }
        },
    };
    std::process::exit(code);
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run(args) => run_cmd(args),
        Command::ReproToy(args) => repro_toy_cmd(args),
        Command::AngleScan(args) => angle_scan_cmd(args),
        Command::NoiseSweep(args) => noise_sweep_cmd(args),
        Command::ShotsPlan(args) => shots_plan_cmd(args),
        Command::Validate { .. } => unreachable!("validate is handled in main"),
    }
}

fn load_experiment(path: &Path) -> Result<Experiment, CliError> {
    let (raw, base) = config::load(path).map_err(CliError::config)?;
    let (diags, experiment) = config::check(&raw, &base);
    if diags.is_empty() {
        Ok(experiment.expect("clean diagnostics imply an experiment"))
    } else {
        Err(CliError::Config(diags))
    }
}

/// Diagnostics are the product of this subcommand, so they go to
/// stdout; the exit code still distinguishes clean from violated.
fn validate_cmd(path: &Path) -> i32 {
    let (raw, base) = match config::load(path) {
        Ok(parts) => parts,
        Err(diag) => {
            println!("{diag}");
            return 2;
        }
    };
    let (diags, _) = config::check(&raw, &base);
    if diags.is_empty() {
        println!("configuration is valid");
        0
    } else {
        for d in &diags {
            println!("{d}");
        }
        2
    }
}

fn write_report(
    rows: &[report::Row],
    out: Option<&Path>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let text = match format {
        OutputFormat::Csv => report::render_csv(rows),
        OutputFormat::Json => report::render_json(rows),
    };
    write_output(out, &text)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::Runtime(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_cmd(args: RunArgs) -> Result<(), CliError> {
    let mut exp = load_experiment(&args.config)?;
    if let Some(seed) = args.seed {
        exp.seed = seed;
    }
    if let Some(shots) = args.shots {
        if shots == 0 {
            return Err(CliError::config("--shots: must be positive"));
        }
        exp.shots = shots;
    }
    let rows = pipeline::run_experiment(&exp, MeasurementPath::Joint, args.jobs)?;
    let format = args.format.map(OutputFormat::from).unwrap_or(exp.format);
    let out = args.out.as_deref().or(exp.out_path.as_deref());
    write_report(&rows, out, format)
}

fn repro_toy_cmd(args: ReproToyArgs) -> Result<(), CliError> {
    if args.steps == 0 {
        return Err(CliError::config("--steps: must be at least 1"));
    }
    if args.shots == 0 {
        return Err(CliError::config("--shots: must be positive"));
    }
    if args.repetitions == 0 {
        return Err(CliError::config("--repetitions: must be at least 1"));
    }
    let mut exp = Experiment::toy_default();
    exp.shots = args.shots;
    exp.seed = args.seed;
    exp.repetitions = args.repetitions;
    exp.sweep = Some(Sweep {
        param: SweepParam::Theta,
        values: config::linspace(0.0, 2.0 * std::f64::consts::PI, args.steps),
    });
    let rows = pipeline::run_experiment(&exp, MeasurementPath::Reduced, args.jobs)?;
    let format = args.format.map(OutputFormat::from).unwrap_or(OutputFormat::Csv);
    write_report(&rows, args.out.as_deref(), format)
}

fn angle_scan_cmd(args: AngleScanArgs) -> Result<(), CliError> {
    if args.points == 0 {
        return Err(CliError::config("--points: must be at least 1"));
    }
    let (data, variant, copies): (LabeledDataset, Variant, usize) = match &args.config {
        Some(path) => {
            let exp = load_experiment(path)?;
            (exp.dataset.materialize(), exp.spec.variant, exp.spec.copies)
        }
        None => {
            let exp = Experiment::toy_default();
            (exp.dataset.materialize(), exp.spec.variant, exp.spec.copies)
        }
    };
    let grid = AngleGrid::cube(args.points);
    let table = angle_scan(&data, &grid, variant, copies)?;
    let lines: Vec<ScanLine> = table
        .rows
        .iter()
        .map(|r| ScanLine {
            theta0: r.angles.theta0,
            theta1: r.angles.theta1,
            phi: r.angles.phi,
            expectation: r.expectation,
            objective: r.objective,
            variance: r.variance,
        })
        .collect();
    let best = table.max_row();
    eprintln!(
        "maximum objective {} at theta0={}, theta1={}, phi={}",
        report::fmt_float(best.objective),
        report::fmt_float(best.angles.theta0),
        report::fmt_float(best.angles.theta1),
        report::fmt_float(best.angles.phi),
    );
    let format = args.format.map(OutputFormat::from).unwrap_or(OutputFormat::Csv);
    let text = match format {
        OutputFormat::Csv => report::render_scan_csv(&lines),
        OutputFormat::Json => report::render_scan_json(&lines),
    };
    write_output(args.out.as_deref(), &text)
}

fn noise_sweep_cmd(args: NoiseSweepArgs) -> Result<(), CliError> {
    if args.steps == 0 {
        return Err(CliError::config("--steps: must be at least 1"));
    }
    if !(0.0..=1.0).contains(&args.max_p) {
        return Err(CliError::config(format!(
            "--max-p: rate must lie in [0, 1], got {}",
            args.max_p
        )));
    }
    let mut exp = match &args.config {
        Some(path) => load_experiment(path)?,
        None => Experiment::toy_default(),
    };
    if exp.noise.is_some() {
        return Err(CliError::config(
            "noise-sweep sets depolarizing noise per point; remove the [noise] table",
        ));
    }
    if exp.sweep.is_some() {
        return Err(CliError::config(
            "noise-sweep defines its own sweep; remove the [sweep] table",
        ));
    }
    if let Some(seed) = args.seed {
        exp.seed = seed;
    }
    if let Some(shots) = args.shots {
        if shots == 0 {
            return Err(CliError::config("--shots: must be positive"));
        }
        exp.shots = shots;
    }
    exp.sweep = Some(Sweep {
        param: SweepParam::DepolarizingP,
        values: config::linspace(0.0, args.max_p, args.steps),
    });
    let rows = pipeline::run_experiment(&exp, MeasurementPath::Joint, args.jobs)?;
    let format = args.format.map(OutputFormat::from).unwrap_or(exp.format);
    let out = args.out.as_deref().or(exp.out_path.as_deref());
    write_report(&rows, out, format)
}

fn shots_plan_cmd(args: ShotsPlanArgs) -> Result<(), CliError> {
    let (score, lambda, scale, config_c, config_delta) = match (&args.config, args.score) {
        (Some(path), None) => {
            let exp = load_experiment(path)?;
            let data = exp.dataset.materialize();
            let score = classification_score(&data, &exp.spec)?.score;
            let scale = match &exp.noise {
                Some(spec) => effective_scale(spec)?.scale,
                None => 1.0,
            };
            (
                score,
                exp.spec.label_width as u64,
                scale,
                Some(exp.c),
                Some(exp.delta),
            )
        }
        (None, Some(score)) => {
            if !score.is_finite() || score.abs() > 1.0 {
                return Err(CliError::config(format!(
                    "--score: must lie in [-1, 1], got {score}"
                )));
            }
            if !args.scale.is_finite() || args.scale.abs() > 1.0 {
                return Err(CliError::config(format!(
                    "--scale: must lie in [-1, 1], got {}",
                    args.scale
                )));
            }
            if args.lambda == 0 {
                return Err(CliError::config("--lambda: must be at least 1"));
            }
            (score, args.lambda, args.scale, None, None)
        }
        (None, None) => {
            return Err(CliError::config(
                "shots-plan needs an operating point: give --config or --score",
            ));
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --config with --score"),
    };
    let c = args.c.or(config_c).unwrap_or(config::DEFAULT_C);
    let delta = args.delta.or(config_delta).unwrap_or(config::DEFAULT_DELTA);
    if !c.is_finite() || c <= 1.0 {
        return Err(CliError::config(format!(
            "--c: precision ratio must exceed 1, got {c}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(CliError::config(format!(
            "--delta: must lie in (0, 1), got {delta}"
        )));
    }
    let plan = match plan_shots(score, lambda as usize, c, delta) {
        Ok(plan) => plan,
        Err(kernelshot::Error::UndecidableScore) => {
            return Err(CliError::Runtime(
                "the operating score is numerically zero; no finite repetition \
budget separates the labels"
                    .into(),
            ));
        }
        Err(e) => return Err(e.into()),
    };
    let shots_noisy = match planned_shots_under_noise(plan.shots, scale) {
        Ok(shots) => shots,
        Err(kernelshot::Error::SignDestroyed) => {
            return Err(CliError::Runtime(
                "the noise scale is numerically zero; the channel destroys the \
signal at any budget"
                    .into(),
            ));
        }
        Err(e) => return Err(e.into()),
    };
    let line = PlanLine {
        score,
        label_width: lambda,
        c,
        delta,
        epsilon: plan.epsilon,
        shots: plan.shots,
        noise_scale: scale,
        shots_noisy,
    };
    let format = args.format.map(OutputFormat::from).unwrap_or(OutputFormat::Csv);
    let text = match format {
        OutputFormat::Csv => report::render_plan_csv(&line),
        OutputFormat::Json => report::render_plan_json(&line),
    };
    write_output(args.out.as_deref(), &text)
}
