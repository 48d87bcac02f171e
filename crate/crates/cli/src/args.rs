//! Command-line surface and the parsed run configuration.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hyperadia::adiabatic::SolverConfig;
use hyperadia::{Channel, StepPotential};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "hyperadia",
    about = "Adiabatic eigenvalues, effective potentials and phase shifts for the planar step-potential pair with a spectator",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve channels directly at the given radii
    Direct(DirectArgs),
    /// Sweep a radius grid with warm-started solves
    Sweep(SweepArgs),
    /// Asymptotic model coefficients (A, B, A*, B* or q) per channel
    Asym(AsymArgs),
    /// Truncated-matrix eigenvalues against the direct solve
    Matrix(MatrixArgs),
    /// Reproduce the published truncation-convergence table
    Table1(RefTableArgs),
    /// Reproduce the published effective-potential table
    Table2(RefTableArgs),
    /// Reproduce the published asymptotic-coefficient table
    Table3(RefTableArgs),
    /// Exact sweep against the inverse-log models for the lowest channel
    Fig2(Fig2Args),
    /// Exact sweep against the inverse-power asymptote
    Fig3(Fig3Args),
    /// Low-energy phase shifts over a wave-number grid
    Phase(PhaseArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct PotentialArgs {
    /// Thermal-style strength parameter; converts as v0bar = 8 pi^2 / Lambda*^2
    #[arg(long = "lambda-star", global = false)]
    pub lambda_star: Option<f64>,
    /// Dimensionless step height (2m/hbar^2) V0 sigma^2
    #[arg(long)]
    pub v0bar: Option<f64>,
}

impl PotentialArgs {
    pub fn resolve(&self, default_lambda_star: Option<f64>) -> Result<StepPotential> {
        match (self.lambda_star, self.v0bar) {
            (Some(_), Some(_)) => bail!("give exactly one of --lambda-star and --v0bar"),
            (Some(ls), None) => Ok(StepPotential::from_lambda_star(ls)?),
            (None, Some(v)) => Ok(StepPotential::from_v0bar(v)?),
            (None, None) => match default_lambda_star {
                Some(ls) => Ok(StepPotential::from_lambda_star(ls)?),
                None => bail!("give one of --lambda-star and --v0bar"),
            },
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Table format written to --out or stdout
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    pub format: String,
    /// Output path; a .meta.json sidecar lands next to it
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Worker threads for per-row computations
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Solver tolerance overrides, KEY=VALUE (repeatable); keys: x_switch,
    /// series_eps, max_terms, pole_delta, bracket_delta, nu_tol_rel,
    /// residual_tol_rel, ref_tol_scale
    #[arg(long = "tol-override")]
    pub tol_override: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub solver: SolverConfig,
    /// Scales every reference-check tolerance.
    pub ref_tol_scale: f64,
}

impl OutputArgs {
    pub fn tolerances(&self) -> Result<Tolerances> {
        let mut solver = SolverConfig::default();
        let mut ref_tol_scale = 1.0;
        for kv in &self.tol_override {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| anyhow!("--tol-override wants KEY=VALUE, got {kv:?}"))?;
            let v: f64 = value
                .parse()
                .with_context(|| format!("tolerance override {key}: bad value {value:?}"))?;
            match key {
                "x_switch" => solver.hyp.x_switch = v,
                "series_eps" => solver.hyp.series_eps = v,
                "max_terms" => solver.hyp.max_terms = v as usize,
                "pole_delta" => solver.hyp.pole_delta = v,
                "bracket_delta" => solver.bracket_delta = v,
                "nu_tol_rel" => solver.nu_tol_rel = v,
                "residual_tol_rel" => solver.residual_tol_rel = v,
                "ref_tol_scale" => ref_tol_scale = v,
                other => bail!("unknown tolerance override key {other:?}"),
            }
        }
        Ok(Tolerances {
            solver,
            ref_tol_scale,
        })
    }
}

fn parse_channel(s: &str) -> Result<Channel> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        bail!("channel wants l1,l2,l (e.g. 0,0,0), got {s:?}");
    }
    let l1: i32 = parts[0].trim().parse().context("channel l1")?;
    let l2: i32 = parts[1].trim().parse().context("channel l2")?;
    let l: u32 = parts[2].trim().parse().context("channel l")?;
    Ok(Channel::new(l1, l2, l))
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// Channel as l1,l2,l (repeatable)
    #[arg(long = "channel", value_parser = parse_channel, required = true)]
    pub channels: Vec<Channel>,
}

/// A resolved grid of values from a min:max:points[:log|lin] spec.
#[derive(Debug, Clone)]
pub struct GridSpec(pub Vec<f64>);

/// Parse min:max:points[:log|lin]; log is the default spacing.
pub fn parse_grid(s: &str) -> Result<GridSpec> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(parts.len() == 3 || parts.len() == 4) {
        bail!("grid wants min:max:points[:log|lin], got {s:?}");
    }
    let min: f64 = parts[0].parse().context("grid min")?;
    let max: f64 = parts[1].parse().context("grid max")?;
    let points: usize = parts[2].parse().context("grid points")?;
    let log = match parts.get(3).copied().unwrap_or("log") {
        "log" => true,
        "lin" => false,
        other => bail!("grid spacing must be log or lin, got {other:?}"),
    };
    if max.is_nan() || max <= min || points < 2 {
        bail!("grid needs max > min and at least 2 points");
    }
    if log && min <= 0.0 {
        bail!("log grid needs min > 0");
    }
    Ok(GridSpec(
        (0..points)
            .map(|i| {
                let f = i as f64 / (points - 1) as f64;
                if log {
                    (min.ln() + (max.ln() - min.ln()) * f).exp()
                } else {
                    min + (max - min) * f
                }
            })
            .collect(),
    ))
}

#[derive(Debug, Args)]
pub struct DirectArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub channels: ChannelArgs,
    /// Radii, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub rho: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub channels: ChannelArgs,
    /// Radius grid min:max:points[:log|lin]
    #[arg(long = "rho-grid", value_parser = parse_grid, required = true)]
    pub rho_grid: GridSpec,
    /// Solve each point independently (parallel) instead of warm-started
    #[arg(long)]
    pub independent: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AsymArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub channels: ChannelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub channels: ChannelArgs,
    /// Hyperradius
    #[arg(long, default_value_t = 5.0)]
    pub rho: f64,
    /// Basis cutoffs, comma separated ascending
    #[arg(long = "n-max", value_delimiter = ',', required = true)]
    pub n_max: Vec<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RefTableArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Radius grid min:max:points[:log|lin]
    #[arg(long = "rho-grid", value_parser = parse_grid)]
    pub rho_grid: Option<GridSpec>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Fig3Args {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Pair angular momentum of the plotted channel (1 or 2)
    #[arg(long, default_value_t = 1)]
    pub l1: u32,
    /// Radius grid min:max:points[:log|lin]
    #[arg(long = "rho-grid", value_parser = parse_grid)]
    pub rho_grid: Option<GridSpec>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Channel as l1,l2,l (exactly one for channel phase shifts)
    #[arg(long = "channel", value_parser = parse_channel)]
    pub channel: Option<Channel>,
    /// Two-body hard-disc reference instead of a channel
    #[arg(long = "hard-disc")]
    pub hard_disc: bool,
    /// Angular momentum of the hard-disc phase shift
    #[arg(long, alias = "L", default_value_t = 0)]
    pub l: u32,
    /// Wave-number grid min:max:points[:log|lin]
    #[arg(long = "k-grid", value_parser = parse_grid, required = true)]
    pub k_grid: GridSpec,
    #[command(flatten)]
    pub output: OutputArgs,
}
