//! Command-line syntax. Every value here is optional so that a `--config`
//! file can fill the gaps; defaults are applied in [`crate::config`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "lifshitz",
    version,
    about = "Casimir and van der Waals free energies of three-layer systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate ε(iξ) of one or more materials on a log-spaced ξ grid.
    Materials(MaterialsArgs),
    /// Per-Matsubara-term TM/TE breakdown at one or more separations.
    Spectral(SpectralArgs),
    /// Free energy per unit area over a log-spaced range of separations.
    Sweep(SweepArgs),
    /// Sign crossover, repulsion maximum and TM zero.
    Features(FeaturesArgs),
    /// Re-run a recorded manifest and check the outputs are byte-identical.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// TOML file with default values for any option (flags take precedence).
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Temperature in K [default: 300].
    #[arg(long, value_name = "K")]
    pub temperature: Option<f64>,

    /// Relative tolerance of every wavevector integral [default: 1e-7].
    #[arg(long, value_name = "TOL")]
    pub rel_tol: Option<f64>,

    /// Largest Matsubara index before a sum is declared unconverged [default: 20000].
    #[arg(long, value_name = "N")]
    pub max_n: Option<usize>,

    /// Output directory [default: out].
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Data file format [default: both].
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Worker threads [default: all cores]. Results do not depend on this.
    #[arg(long, value_name = "N")]
    pub workers: Option<usize>,

    /// Also write two-column .dat files and a gnuplot script.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Debug, Default, Args)]
pub struct SystemArgs {
    /// First half-space: material file or built-in name [default: au].
    #[arg(long, value_name = "MATERIAL")]
    pub m1: Option<String>,

    /// Gap medium [default: bromobenzene].
    #[arg(long, value_name = "MATERIAL")]
    pub m2: Option<String>,

    /// Second half-space [default: sio2].
    #[arg(long, value_name = "MATERIAL")]
    pub m3: Option<String>,
}

#[derive(Debug, Args)]
pub struct MaterialsArgs {
    /// Material files or built-in names [default: au sio2 bromobenzene].
    #[arg(value_name = "MATERIAL")]
    pub materials: Vec<String>,

    /// Lowest imaginary frequency in rad/s [default: 1e13].
    #[arg(long, value_name = "RAD_PER_S")]
    pub xi_min: Option<f64>,

    /// Highest imaginary frequency in rad/s [default: 1e18].
    #[arg(long, value_name = "RAD_PER_S")]
    pub xi_max: Option<f64>,

    /// Number of grid points [default: 200].
    #[arg(long)]
    pub points: Option<usize>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    /// Separations in nm, comma-separated or repeated [default: 2,10].
    #[arg(long = "d", value_name = "NM", value_delimiter = ',')]
    pub separations: Vec<f64>,

    #[command(flatten)]
    pub system: SystemArgs,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Smallest separation in nm [default: 1].
    #[arg(long, value_name = "NM")]
    pub d_min: Option<f64>,

    /// Largest separation in nm [default: 1000].
    #[arg(long, value_name = "NM")]
    pub d_max: Option<f64>,

    /// Grid density [default: 16].
    #[arg(long)]
    pub points_per_decade: Option<usize>,

    /// Add the TM and TE parts of the retarded energy.
    #[arg(long)]
    pub components: bool,

    /// Add the nonretarded (van der Waals) energy.
    #[arg(long)]
    pub nonretarded: bool,

    /// Add the half-weighted n = 0 (entropic) term.
    #[arg(long)]
    pub entropic: bool,

    /// Sphere radius in m; adds the sphere-plate force 2πR·F.
    #[arg(long, value_name = "M")]
    pub radius: Option<f64>,

    #[command(flatten)]
    pub system: SystemArgs,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// Search interval for the sign crossover, nm [default: 1,10].
    #[arg(long, value_name = "LO,HI", value_delimiter = ',')]
    pub crossover_bracket: Option<Vec<f64>>,

    /// Search interval for the repulsion maximum, nm [default: 1,100].
    #[arg(long, value_name = "LO,HI", value_delimiter = ',')]
    pub max_bracket: Option<Vec<f64>>,

    /// Search interval for the zero of the TM part, nm [default: 1,10].
    #[arg(long, value_name = "LO,HI", value_delimiter = ',')]
    pub tm_zero_bracket: Option<Vec<f64>>,

    /// Distance tolerance in nm [default: 0.001].
    #[arg(long, value_name = "NM")]
    pub tol: Option<f64>,

    /// Sphere radius in m; adds sphere-plate forces to every feature.
    #[arg(long, value_name = "M")]
    pub radius: Option<f64>,

    #[command(flatten)]
    pub system: SystemArgs,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// A manifest.json written by an earlier run.
    pub manifest: PathBuf,

    /// Output directory [default: `replay/` next to the manifest].
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}
