use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "plancherel", version, about = "Plancherel growth processes: sampling, kernels and verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Serialize)]
pub struct Global {
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file. Without it, artifacts go to $PLANCHEREL_OUT_DIR or stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// key = value file mirroring the long flags; command-line flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Jsonl,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw diagrams from M_θ and tabulate shape frequencies.
    Sample(SampleArgs),
    /// Simulate the jump process along a curve.
    Simulate(SimulateArgs),
    /// Shape process of a planar point configuration along a curve.
    Rsk(RskArgs),
    /// Tabulate the correlation kernel on a lattice grid.
    Kernel(KernelArgs),
    /// Bulk / edge convergence tables and first-row samples.
    Limits(LimitsArgs),
    /// Run a verification suite and write its verdict.
    Verify(VerifyArgs),
}

pub const COMMANDS: [&str; 6] = ["sample", "simulate", "rsk", "kernel", "limits", "verify"];

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub theta: f64,
    /// Number of diagrams.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    /// Curve descriptor, e.g. `hyperbola:theta=1` or `line:u+v=2`.
    #[arg(long, conflicts_with = "theta")]
    pub curve: Option<String>,
    /// Shorthand for `--curve hyperbola:theta=<θ>`.
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t1: f64,
    #[arg(long, default_value_t = 1)]
    pub n_trajectories: usize,
    /// Initial diagram such as `3,1`; drawn from M_θ(t0) when absent.
    #[arg(long)]
    pub initial: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Incremental,
    FromScratch,
}

#[derive(Args, Debug, Serialize)]
pub struct RskArgs {
    #[arg(long, conflicts_with = "theta")]
    pub curve: Option<String>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t1: f64,
    /// CSV (`u,v`) point configuration; a Poisson process is sampled when absent.
    #[arg(long, conflicts_with = "n_trajectories")]
    pub points: Option<PathBuf>,
    #[arg(long)]
    pub n_trajectories: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Incremental)]
    pub mode: ModeArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Series,
    Ratio,
    Contour,
}

#[derive(Args, Debug, Serialize)]
pub struct KernelArgs {
    #[arg(long)]
    pub theta: f64,
    /// θ at the second time, for a two-time kernel along a non-stationary curve.
    #[arg(long)]
    pub theta_t: Option<f64>,
    /// Lattice range such as `-7/2..7/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    /// Defaults to `ratio` at equal times and `series` otherwise.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitKind {
    Bulk,
    Edge,
    FirstRow,
}

#[derive(Args, Debug, Serialize)]
pub struct LimitsArgs {
    #[arg(long, value_enum)]
    pub kind: LimitKind,
    /// Bulk position parameter in (−2, 2).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Comma-separated θ-ladder.
    #[arg(long, default_value = "25,100,400")]
    pub thetas: String,
    /// Comma-separated rescaled times.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub taus: String,
    /// Bulk: integer offsets; edge: real positions.
    #[arg(long, allow_hyphen_values = true)]
    pub xs: Option<String>,
    /// First row: curve family (`hyperbola` or `line`).
    #[arg(long, default_value = "hyperbola")]
    pub family: String,
    #[arg(long, default_value_t = 2000)]
    pub n_trajectories: usize,
    /// Also write a gnuplot script next to the output.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
}
