//! `ellipse-law`: batch front end for the closed forms, the checkers, the
//! quadrature oracle and the particle simulator.
//!
//! Exit status: 0 on success, 1 on a numerical or tolerance failure, 2 on a
//! usage or domain error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "ellipse-law",
    version,
    about = "Ellipse-law minimisers of anisotropic log-gases: evaluate, check, simulate"
)]
struct Cli {
    /// Worker threads for parallel sections (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate W_alpha * mu_{a,b} and its gradient at a point or on a grid.
    Potential(PotentialArgs),
    /// Check the Euler-Lagrange conditions and boundary continuity.
    Elcheck(ElcheckArgs),
    /// Run the particle gradient flow.
    Simulate(SimulateArgs),
    /// Compare the closed forms against brute-force quadrature.
    OracleCompare(OracleArgs),
    /// Reduce a general anisotropy (alpha, beta, gamma) to canonical form.
    Reduce(ReduceArgs),
    /// Energy of a uniform ellipse measure, closed form and Monte Carlo.
    Energy(EnergyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("location").required(true).args(["x", "grid"])))]
pub struct PotentialArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true, requires = "y")]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "x")]
    pub y: Option<f64>,
    /// Square grid as `extent,resolution`, covering [-extent, extent]^2.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<(f64, usize)>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Defaults to json for a single point and csv for a grid.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Accept a > b by evaluating in exchanged coordinates.
    #[arg(long)]
    pub allow_swap: bool,
}

fn parse_grid(s: &str) -> Result<(f64, usize), String> {
    let (e, n) = s.split_once(',').ok_or("expected extent,resolution")?;
    let extent: f64 = e.trim().parse().map_err(|err| format!("extent: {err}"))?;
    let n: usize = n.trim().parse().map_err(|err| format!("resolution: {err}"))?;
    if !(extent > 0.0) || !extent.is_finite() || n < 2 {
        return Err("need extent > 0 and resolution >= 2".into());
    }
    Ok((extent, n))
}

#[derive(Args, Debug, Serialize)]
pub struct ElcheckArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Half-width of the exterior grid.
    #[arg(long, default_value_t = 4.0)]
    pub extent: f64,
    /// Points per side of the exterior grid.
    #[arg(long, default_value_t = 201)]
    pub resolution: usize,
    /// Points per side of the interior grid.
    #[arg(long, default_value_t = 101)]
    pub interior_resolution: usize,
    #[arg(long, default_value_t = 64)]
    pub boundary_samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitKind {
    Disk,
    Gaussian,
}

/// Simulation parameters; the same keys are accepted in a TOML config file.
#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SimParams {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Coefficient of x2^2/|x|^2; switches to the general kernel.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Coefficient of x1 x2/|x|^2; switches to the general kernel.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Number of particles.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub init: Option<InitKind>,
    /// Radius of the uniform initial disk.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Standard deviation of the Gaussian initial condition.
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub record_every: Option<u64>,
    #[arg(long)]
    pub energy_every: Option<u64>,
    #[arg(long)]
    pub inflate: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// TOML file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: SimParams,
    /// Output directory for snapshots.csv, summary.json and manifest.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["points", "random"])))]
pub struct OracleArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// CSV file of `x1,x2` rows (an optional header line is skipped).
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Number of random points, half inside the ellipse and half outside.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted relative discrepancy.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    #[arg(long, default_value_t = 32)]
    pub radial_nodes: usize,
    #[arg(long, default_value_t = 256)]
    pub angular_nodes: usize,
    #[arg(long)]
    pub allow_swap: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReduceFormat {
    Json,
}

#[derive(Args, Debug, Serialize)]
pub struct ReduceArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReduceFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("measure").required(true).args(["a", "minimizer"])))]
pub struct EnergyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, requires = "b")]
    pub a: Option<f64>,
    #[arg(long, requires = "a")]
    pub b: Option<f64>,
    /// Use the minimising ellipse of I_alpha.
    #[arg(long)]
    pub minimizer: bool,
    /// Monte Carlo sample pairs (0 skips the estimate).
    #[arg(long, default_value_t = 200_000)]
    pub mc_samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub allow_swap: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Potential(args) => commands::potential(&args),
        Command::Elcheck(args) => commands::elcheck(&args),
        Command::Simulate(args) => commands::simulate(&args),
        Command::OracleCompare(args) => commands::oracle_compare(&args),
        Command::Reduce(args) => commands::reduce(&args),
        Command::Energy(args) => commands::energy(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}
