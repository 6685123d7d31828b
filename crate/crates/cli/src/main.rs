//! `qmed`: quarter medians of planar point sets from the command line.

mod commands;
mod error;
mod input;
mod output;
mod reference;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quarter_median::Point2;

use crate::commands::*;
use crate::error::CliError;

#[derive(Parser)]
#[command(name = "qmed", version, about = "Quarter median of planar point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the quarter median problem for a CSV point file.
    Solve(SolveArgs),
    /// Median curve over frame angles in [0, π/2).
    Curve(PlotArgs),
    /// Open upper-right quadrant count over frame angles in [0, π/2).
    Scan(PlotArgs),
    /// Draw a sample from an elliptical model.
    Sample(SampleArgs),
    /// Monte Carlo comparison of location estimators.
    Simulate(SimulateArgs),
    /// Relative asymptotic efficiencies of the mean and the quarter median.
    Efficiencies(FormatArgs),
}

#[derive(Args)]
struct FormatArgs {
    /// Emit the report and manifest as one JSON document.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// exact | scan
    #[arg(long, default_value = "exact")]
    method: String,
    /// Grid size for the scan method.
    #[arg(long)]
    grid: Option<usize>,
    /// Maximum number of solutions listed.
    #[arg(long, default_value_t = 20)]
    max_solutions: usize,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long)]
    out_svg: Option<PathBuf>,
    /// CSV output; written to stdout when neither output path is given.
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct ModelArgs {
    /// normal | double_exponential | cauchy | pearson2 | logistic
    #[arg(long)]
    family: Option<String>,
    /// Location as "x,y".
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    mu: Option<Point2>,
    /// Shorthand for Σ = diag(1, λ).
    #[arg(long, conflicts_with_all = ["lambda1", "lambda2", "orientation"])]
    lambda: Option<f64>,
    #[arg(long)]
    lambda1: Option<f64>,
    #[arg(long)]
    lambda2: Option<f64>,
    /// Angle of the major axis in radians.
    #[arg(long, allow_hyphen_values = true)]
    orientation: Option<f64>,
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, CliError> {
        ModelSpec::resolve(self.family.clone(), self.mu, self.lambda, self.lambda1, self.lambda2, self.orientation)
    }

    fn any_set(&self) -> bool {
        self.family.is_some()
            || self.mu.is_some()
            || self.lambda.is_some()
            || self.lambda1.is_some()
            || self.lambda2.is_some()
            || self.orientation.is_some()
    }
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Written to stdout when absent.
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = DEFAULT_N)]
    n: usize,
    /// Defaults to 1000, or 10000 with --full-scale.
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated subset of qmed,smed,omed,tmed,mean.
    #[arg(long)]
    estimators: Option<String>,
    /// Run the published simulation grid (four λ, four families) and check
    /// the published eigenvalues against 99% bands.
    #[arg(long)]
    full_scale: bool,
    #[command(flatten)]
    format: FormatArgs,
}

fn parse_point(s: &str) -> Result<Point2, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected \"x,y\", got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<f64>().ok().filter(|v| v.is_finite());
    match (parse(a), parse(b)) {
        (Some(x), Some(y)) => Ok(Point2::new(x, y)),
        _ => Err(format!("expected two finite reals, got '{s}'")),
    }
}

fn split_list(s: Option<&str>, default: &str) -> Vec<String> {
    s.unwrap_or(default).split(',').map(|t| t.trim().to_string()).collect()
}

fn run(cli: Cli, command: &[String], out: &mut String) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(a) => {
            let cfg = SolveConfig { input: a.input, method: a.method, grid: a.grid, max_solutions: a.max_solutions };
            solve(&cfg, command, a.format.json, out)
        }
        Command::Curve(a) => {
            let cfg = PlotConfig { input: a.input, grid: a.grid, out_svg: a.out_svg, out_csv: a.out_csv };
            curve(&cfg, command, a.format.json, out)
        }
        Command::Scan(a) => {
            let cfg = PlotConfig { input: a.input, grid: a.grid, out_svg: a.out_svg, out_csv: a.out_csv };
            scan(&cfg, command, a.format.json, out)
        }
        Command::Sample(a) => {
            let cfg = SampleConfig { model: a.model.spec()?, n: a.n, out_csv: a.out_csv };
            sample(&cfg, a.seed, command, out)
        }
        Command::Simulate(a) if a.full_scale => {
            if a.model.any_set() {
                return Err(CliError::Input("--full-scale uses the published model grid; drop the model flags".into()));
            }
            let cfg = FullScaleConfig {
                n: a.n,
                reps: a.reps.unwrap_or(reference::PUBLISHED_REPS),
                estimators: match a.estimators.as_deref() {
                    Some(list) => split_list(Some(list), ""),
                    None => reference::ESTIMATORS.iter().map(|e| e.name().to_string()).collect(),
                },
                lambdas: reference::LAMBDAS.to_vec(),
                families: reference::FAMILIES.iter().map(|f| f.name()).collect(),
                z: Z99,
            };
            let mut progress = |msg: &str| eprintln!("qmed: {msg}");
            full_scale(&cfg, a.seed, command, a.format.json, out, &mut progress)
        }
        Command::Simulate(a) => {
            let cfg = SimulateConfig {
                model: a.model.spec()?,
                n: a.n,
                reps: a.reps.unwrap_or(DEFAULT_REPS),
                estimators: split_list(a.estimators.as_deref(), "qmed"),
            };
            simulate(&cfg, a.seed, command, a.format.json, out)
        }
        Command::Efficiencies(a) => efficiencies(command, a.json, out),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let command: Vec<String> = std::iter::once("qmed".to_string()).chain(args.iter().skip(1).cloned()).collect();
    let cli = Cli::parse_from(&args);
    let mut out = String::new();
    let result = run(cli, &command, &mut out);
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("qmed: {e}");
            return ExitCode::from(3);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qmed: {e}");
            e.exit_code()
        }
    }
}
