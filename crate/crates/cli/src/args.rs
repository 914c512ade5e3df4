use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gdof_core::{Alpha, AlphaGrid, AntennaConfig, Rational};
use gdof_mc::{RateTerm, Sampling};

pub const OUT_DIR_ENV: &str = "GDOF_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "gdof", version, about = "Exact GDoF regions of the MIMO Z-interference channel with delayed CSIT")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Half-planes and vertices of one region.
    Region(RegionArgs),
    /// Maximum sum-GDoF over an alpha grid.
    Sum(SumArgs),
    /// Overlay several regions and report equality/containment.
    Compare(CompareArgs),
    /// Corner points with the power allocations that reach them.
    Corners(CornersArgs),
    /// Check inner bound = outer bound over a sweep; one JSON line per (tuple, alpha).
    Verify(VerifyArgs),
    /// Exhaustive oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Monte Carlo slope of a finite-SNR log-det rate term.
    Validate(ValidateArgs),
    /// Deterministic SVG figures.
    Plot(PlotArgs),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Check that the weighted outer bound is maximized at full transmit rank.
    Rank(RankArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Delayed,
    Perfect,
    Dof,
    Tin,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Delayed => "delayed",
            Kind::Perfect => "perfect",
            Kind::Dof => "dof",
            Kind::Tin => "tin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    pub fn ext(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file. Defaults to a generated name under $GDOF_OUT_DIR, or stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// Antenna tuple M1,M2,N1,N2.
    #[arg(long)]
    pub config: AntennaConfig,
    /// Interference exponent, as a decimal or num/den.
    #[arg(long)]
    pub alpha: Alpha,
    #[arg(long, value_enum, default_value = "delayed")]
    pub csit: Kind,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[arg(long)]
    pub config: AntennaConfig,
    /// start:stop:step or a comma-separated list.
    #[arg(long, default_value = "0:3:1/10")]
    pub alpha_grid: AlphaGrid,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "delayed")]
    pub csit: Vec<Kind>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub config: AntennaConfig,
    #[arg(long)]
    pub alpha: Alpha,
    /// Regions to compare; the first is drawn solid.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "delayed,perfect,dof")]
    pub csit: Vec<Kind>,
    /// Also write the overlay SVG here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CornersArgs {
    #[arg(long)]
    pub config: AntennaConfig,
    #[arg(long)]
    pub alpha: Alpha,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Sweep every tuple with all entries up to this bound.
    #[arg(long, conflicts_with = "config")]
    pub max_antennas: Option<u32>,
    /// Specific tuples instead of a sweep (repeatable).
    #[arg(long)]
    pub config: Vec<AntennaConfig>,
    #[arg(long, default_value = "0:3:1/10")]
    pub alpha_grid: AlphaGrid,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// Bound on M1, N1, N2.
    #[arg(long, default_value_t = 6)]
    pub max_antennas: u32,
    /// Bound on M2 (not capped at N1+N2).
    #[arg(long, default_value_t = 8)]
    pub max_m2: u32,
    #[arg(long, default_value = "0:3:1/8")]
    pub alpha_grid: AlphaGrid,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, required_unless_present = "fterm")]
    pub config: Option<AntennaConfig>,
    #[arg(long, default_value = "0")]
    pub alpha: Alpha,
    /// Private-message power back-off exponent.
    #[arg(long, default_value = "0", value_parser = parse_rational)]
    pub a2: Rational,
    #[arg(long, required_unless_present = "fterm", value_parser = parse_term)]
    pub term: Option<RateTerm>,
    /// Generic two-component term u,a1,u1,a2,u2 instead of a named rate term.
    #[arg(long, conflicts_with_all = ["config", "term"], value_parser = parse_fterm)]
    pub fterm: Option<gdof_core::FTermSpec>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// log2(rho) values, strictly increasing.
    #[arg(long, value_delimiter = ',', default_value = "16,20,24,28,32,36,40")]
    pub ladder: Vec<f64>,
    /// Number of top ladder points used in the fit.
    #[arg(long, default_value_t = 4)]
    pub fit_top: usize,
    #[arg(long, value_enum, default_value = "common")]
    pub sampling: SamplingArg,
    /// Also write per-point means as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SamplingArg {
    Common,
    Independent,
}

impl From<SamplingArg> for Sampling {
    fn from(s: SamplingArg) -> Self {
        match s {
            SamplingArg::Common => Sampling::Common,
            SamplingArg::Independent => Sampling::Independent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Region whose weighted bound is inactive.
    CaseI,
    /// Region with both corner points.
    CaseIi,
    /// (2,2,3,2) at alpha = 0.4, 0.8, 1, 1.2, 1.6.
    AlphaFamily,
    /// (1,2,1,1) at alpha = 0.4 against treating interference as noise.
    TinGap,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_enum, conflicts_with_all = ["config", "sum"])]
    pub figure: Option<Figure>,
    #[arg(long, required_unless_present = "figure")]
    pub config: Option<AntennaConfig>,
    /// One or more alphas for a region overlay.
    #[arg(long, value_delimiter = ',', default_value = "0.6")]
    pub alpha: Vec<Alpha>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "delayed,perfect")]
    pub csit: Vec<Kind>,
    /// Plot sum-GDoF over --alpha-grid instead of regions.
    #[arg(long)]
    pub sum: bool,
    #[arg(long, default_value = "0:3:1/10")]
    pub alpha_grid: AlphaGrid,
    #[command(flatten)]
    pub output: Output,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    gdof_core::parse_rational(s).map_err(|e| e.to_string())
}

fn parse_term(s: &str) -> Result<RateTerm, String> {
    s.parse()
}

fn parse_fterm(s: &str) -> Result<gdof_core::FTermSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [u, a1, u1, a2, u2] = parts.as_slice() else {
        return Err(format!("expected u,a1,u1,a2,u2, got {s:?}"));
    };
    let dim = |x: &str| x.parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    Ok(gdof_core::FTermSpec::new(
        dim(u)?,
        (parse_rational(a1)?, dim(u1)?),
        (parse_rational(a2)?, dim(u2)?),
    ))
}
