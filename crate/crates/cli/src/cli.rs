use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minimax_core::AlgoKind;

/// Anchored extragradient experiments, certificates and lower-bound labs.
#[derive(Debug, Parser)]
#[command(name = "anchored-minimax", version, args_override_self = true)]
pub struct Cli {
    /// key=value file mirroring the subcommand's long flags; flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Seed for seeded presets given as `random-monotone:<n>`.
    #[arg(long, global = true, env = "ANCHORED_MINIMAX_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Repeat for more log output on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one method on a problem and write its convergence curve as CSV.
    Run(RunArgs),
    /// Check a certificate.
    Certify {
        #[command(subcommand)]
        which: CertifyCommand,
    },
    /// Build the worst-case instance and compare the three lower-bound values.
    Lowerbound(LowerboundArgs),
    /// Closed-form vs RK4 trajectories of the continuous-time flows for xy.
    Flow(FlowArgs),
}

#[derive(Debug, Subcommand)]
pub enum CertifyCommand {
    /// Step-size condition for EAG-C.
    Stepsize(StepsizeArgs),
    /// The per-iteration semidefinite certificate for EAG-C.
    Eagc(EagcArgs),
    /// Monotonicity of the EAG-V Lyapunov function along a run.
    Lyapunov(LyapunovArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Preset name or hard-instance file.
    #[arg(long)]
    pub problem: String,
    #[arg(long, value_parser = parse_algo)]
    pub algo: AlgoKind,
    /// Step size (initial step for eag-v); defaults to the preset's choice.
    #[arg(long, visible_alias = "alpha0")]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub iters: usize,
    /// Anchor offset: `β_k = 1/(k+delta)`.
    #[arg(long, default_value_t = 2.0)]
    pub delta: f64,
    /// SimGD-A decay exponent in (1/2, 1).
    #[arg(long)]
    pub simgd_p: Option<f64>,
    #[arg(long)]
    pub simgd_gamma: Option<f64>,
    /// Omit the theoretical-bound column.
    #[arg(long)]
    pub no_bound: bool,
    /// Emit every iteration instead of thinning above 10^4.
    #[arg(long)]
    pub dense: bool,
    /// Append the iterate coordinates z_0.. to every row.
    #[arg(long)]
    pub emit_iterates: bool,
    /// CSV destination; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StepsizeArgs {
    #[arg(long = "alphaR", visible_alias = "alpha-r")]
    pub alpha_r: f64,
    /// One-row CSV destination.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EagcArgs {
    #[arg(long = "alphaR", visible_alias = "alpha-r", default_value_t = 0.125)]
    pub alpha_r: f64,
    /// Last iteration checked.
    #[arg(long, default_value_t = 1000)]
    pub k: usize,
    /// Per-step CSV destination.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long)]
    pub alpha0: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub iters: usize,
    #[arg(long, default_value_t = 2.0)]
    pub delta: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LowerboundArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long = "R", visible_alias = "r", default_value_t = 1.0)]
    pub r: f64,
    #[arg(long = "D", visible_alias = "d", default_value_t = 1.0)]
    pub d: f64,
    /// Ambient dimension; at least k+2.
    #[arg(long)]
    pub n: Option<usize>,
    /// Also run this method on the instance and check every span-counted point.
    #[arg(long, value_parser = parse_algo)]
    pub algo: Option<AlgoKind>,
    #[arg(long, visible_alias = "alpha0")]
    pub alpha: Option<f64>,
    /// Write the instance for later `run --problem FILE`.
    #[arg(long)]
    pub save: Option<PathBuf>,
    /// Per-point CSV destination when --algo is given.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlowKindArg {
    Anchored,
    MoreauYosida,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[arg(long, value_enum, default_value_t = FlowKindArg::Anchored)]
    pub kind: FlowKindArg,
    #[arg(long, default_value_t = 0.01)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub y0: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub t0: f64,
    #[arg(long, default_value_t = 20.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Join a discrete run on bilinear-unit, sampled at k = round(t/alpha).
    #[arg(long, value_parser = parse_algo)]
    pub algo: Option<AlgoKind>,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn parse_algo(s: &str) -> Result<AlgoKind, String> {
    s.parse::<AlgoKind>().map_err(|e| e.to_string())
}
