//! Command-line surface: `forward`, `fig1` and `metrics`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::TomoError;
use crate::io::{format_number, read_wigner_csv, write_wigner_csv};
use crate::metrics::{l1_half_distance, l1_norm, ErrorReport};
use crate::noise::{averaged_reconstruction, jittered_samples, JitterModel};
use crate::phase_space::{PhaseSpaceGrid, WignerField};
use crate::sampling::{reconstruct_wigner, sample_tomogram, SamplingScheme};
use crate::states::AnalyticState;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_ARGS: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tomography", version, about = "Homodyne tomography: forward maps, sampled reconstruction and noise robustness")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the analytic tomogram of a reference state to CSV (X,phi,value).
    Forward(ForwardArgs),
    /// Reconstruct a Wigner function from noiseless, jittered and averaged samples.
    Fig1(ExperimentConfig),
    /// Compare two Wigner CSV files and print an error report as JSON.
    Metrics(MetricsArgs),
}

#[derive(Debug, Args)]
pub struct ForwardArgs {
    /// State identifier (single-photon, vacuum).
    #[arg(long, default_value = "single-photon")]
    pub state: String,
    /// Comma-separated angles in radians.
    #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    pub phi: Vec<f64>,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub x_step: f64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExperimentConfig {
    /// State identifier (single-photon, vacuum).
    #[arg(long, default_value = "single-photon")]
    pub state: String,
    /// Linear sampling step T.
    #[arg(long = "t", visible_alias = "step", default_value_t = 0.1)]
    #[serde(rename = "T")]
    pub t: f64,
    /// Number of sampled angles N (odd).
    #[arg(long = "n", visible_alias = "angles", default_value_t = 5)]
    #[serde(rename = "N")]
    pub n: usize,
    /// Linear truncation K: samples at k = -K..K.
    #[arg(long = "k", visible_alias = "truncation", default_value_t = 40)]
    #[serde(rename = "K")]
    pub k: usize,
    /// Half-width b of the box [-b, b]^2.
    #[arg(long, default_value_t = 1.5)]
    pub box_half_width: f64,
    /// Grid points per axis (odd).
    #[arg(long, default_value_t = 61)]
    pub grid_points: usize,
    /// Trapezoid nodes for the angular integral.
    #[arg(long, default_value_t = 256)]
    pub angular_nodes: usize,
    /// Linear jitter deviation in units of T.
    #[arg(long, default_value_t = 0.5)]
    pub sigma1: f64,
    /// Angular jitter deviation in units of 2π/N.
    #[arg(long, default_value_t = 0.5)]
    pub sigma2: f64,
    /// Noise realizations in the averaged reconstruction.
    #[arg(long, default_value_t = 10)]
    pub realizations: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            state: AnalyticState::SinglePhoton.id().to_string(),
            t: 0.1,
            n: 5,
            k: 40,
            box_half_width: 1.5,
            grid_points: 61,
            angular_nodes: 256,
            sigma1: 0.5,
            sigma2: 0.5,
            realizations: 10,
            seed: 1,
            output_dir: PathBuf::from("."),
        }
    }
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Reference Wigner CSV (p,q,value).
    #[arg(long)]
    pub reference: PathBuf,
    /// Reconstructed Wigner CSV on the same grid.
    #[arg(long)]
    pub test: PathBuf,
}

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<TomoError> for CliError {
    fn from(e: TomoError) -> Self {
        let code = match e {
            TomoError::InvalidParameter { .. }
            | TomoError::UnknownState(_)
            | TomoError::GridMismatch(_)
            | TomoError::OutOfBox { .. }
            | TomoError::ZeroRadius
            | TomoError::WindowTooWide { .. }
            | TomoError::NotNormalized { .. } => EXIT_BAD_ARGS,
            _ => EXIT_NUMERIC,
        };
        CliError { code, message: e.to_string() }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
}

/// Values written to `summary.json` by `fig1`.
#[derive(Debug, Clone, Serialize)]
pub struct Fig1Summary {
    pub epsilon_noiseless: f64,
    pub epsilon_single: f64,
    pub epsilon_avg: f64,
    pub w_norm: f64,
    pub config: ExperimentConfig,
    pub seed: u64,
}

/// Fields produced by the `fig1` experiment.
#[derive(Debug, Clone)]
pub struct Fig1Fields {
    pub reference: WignerField,
    pub noiseless: WignerField,
    pub single: WignerField,
    pub averaged: WignerField,
}

/// Runs the experiment in memory.
pub fn fig1_fields(config: &ExperimentConfig) -> Result<(Fig1Fields, Fig1Summary), TomoError> {
    let state: AnalyticState = config.state.parse()?;
    let scheme = SamplingScheme::new(config.t, config.n, config.k)?;
    let grid = PhaseSpaceGrid::new(config.box_half_width, config.grid_points)?;
    let model = JitterModel::new(config.sigma1, config.sigma2, config.seed)?;
    if config.realizations == 0 {
        return Err(TomoError::invalid("realizations", "must be at least 1"));
    }
    let tomogram = state.tomogram();

    let reference = WignerField::from_fn(grid, |p, q| state.wigner(p, q))?;
    let noiseless = reconstruct_wigner(&sample_tomogram(&tomogram, scheme), grid, config.angular_nodes)?;
    let single = reconstruct_wigner(&jittered_samples(&tomogram, &scheme, &model, 0), grid, config.angular_nodes)?;
    let averaged =
        averaged_reconstruction(&tomogram, &scheme, &model, config.realizations, grid, config.angular_nodes)?;

    let summary = Fig1Summary {
        epsilon_noiseless: l1_half_distance(&reference, &noiseless)?,
        epsilon_single: l1_half_distance(&reference, &single)?,
        epsilon_avg: l1_half_distance(&reference, &averaged)?,
        w_norm: l1_norm(&reference),
        config: config.clone(),
        seed: config.seed,
    };
    Ok((Fig1Fields { reference, noiseless, single, averaged }, summary))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(bytes))
        .map_err(|e| io_error(path, e))
}

pub fn cmd_fig1(config: &ExperimentConfig) -> Result<Fig1Summary, CliError> {
    let (fields, summary) = fig1_fields(config)?;
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    for (name, field) in [
        ("wigner_reference.csv", &fields.reference),
        ("wigner_noiseless.csv", &fields.noiseless),
        ("wigner_single.csv", &fields.single),
        ("wigner_avg.csv", &fields.averaged),
    ] {
        let mut buf = Vec::new();
        write_wigner_csv(field, &mut buf).map_err(|e| io_error(&dir.join(name), e))?;
        write_file(&dir.join(name), &buf)?;
    }
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    write_file(&dir.join("summary.json"), json.as_bytes())?;
    Ok(summary)
}

/// CSV text `X,phi,value` for the analytic tomogram of `args.state`.
pub fn forward_csv(args: &ForwardArgs) -> Result<String, CliError> {
    let state: AnalyticState = args.state.parse()?;
    if !(args.x_step > 0.0) || !args.x_min.is_finite() || !(args.x_max >= args.x_min) {
        return Err(TomoError::invalid("x-range", "need x-min <= x-max and a positive x-step").into());
    }
    if args.phi.is_empty() || args.phi.iter().any(|p| !p.is_finite()) {
        return Err(TomoError::invalid("phi", "need at least one finite angle").into());
    }
    let count = ((args.x_max - args.x_min) / args.x_step + 1e-9).floor() as usize + 1;
    let mut out = String::from("X,phi,value\n");
    for &phi in &args.phi {
        for i in 0..count {
            let x = args.x_min + i as f64 * args.x_step;
            out.push_str(&format!(
                "{},{},{}\n",
                format_number(x),
                format_number(phi),
                format_number(state.radon_tomogram(x, phi))
            ));
        }
    }
    Ok(out)
}

pub fn cmd_forward(args: &ForwardArgs) -> Result<(), CliError> {
    let csv = forward_csv(args)?;
    match &args.output {
        Some(path) => write_file(path, csv.as_bytes()),
        None => std::io::stdout()
            .write_all(csv.as_bytes())
            .map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
}

pub fn cmd_metrics(args: &MetricsArgs) -> Result<ErrorReport, CliError> {
    let read = |path: &Path| -> Result<WignerField, CliError> {
        let file = fs::File::open(path).map_err(|e| io_error(path, e))?;
        read_wigner_csv(file).map_err(|e| CliError { code: EXIT_BAD_ARGS, message: format!("{}: {e}", path.display()) })
    };
    let reference = read(&args.reference)?;
    let test = read(&args.test)?;
    Ok(ErrorReport::compare(&reference, &test)?)
}

/// Executes a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Forward(args) => cmd_forward(&args),
        Command::Fig1(config) => {
            let s = cmd_fig1(&config)?;
            eprintln!(
                "epsilon: noiseless {:.3e}, single {:.3e}, averaged {:.3e}; |W|_B = {:.4}",
                s.epsilon_noiseless, s.epsilon_single, s.epsilon_avg, s.w_norm
            );
            Ok(())
        }
        Command::Metrics(args) => {
            let report = cmd_metrics(&args)?;
            println!("{}", report.to_json());
            Ok(())
        }
    }
}
