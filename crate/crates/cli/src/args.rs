use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Volumes and distance bounds for halfspace cuts of the unit-volume ball and
/// the unit cube.
#[derive(Debug, Parser)]
#[command(name = "cutgeom", version)]
pub struct Cli {
    /// One JSON object per line instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the records to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slab volume `0 <= x₁ <= d` of the n-ball against its limit.
    BallSlab {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
    },
    /// Largest distance between two volume-ε convex subsets of the ball.
    BallDistance {
        #[arg(long)]
        epsilon: f64,
        /// Dimension; the limit row is always printed.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Volume of a cut `{v·x <= a}` of the unit cube.
    CubeCut(CubeCutArgs),
    /// Distance between opposite diagonal cuts of volume ε.
    CubeDistance {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        epsilon: f64,
    },
    /// Finite-dimensional values against their limit over a list of dimensions.
    Converge {
        #[arg(long, value_enum)]
        body: BodyArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Limit constant for the cube.
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
    },
    /// Search over cube normals for the largest cut distance (JSON report).
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Monte Carlo volume of a cube cut or ball slab.
    Mc(McArgs),
    /// Berry–Esseen bound against the measured Irwin–Hall sup gap.
    Bound {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Grid points for the sup gap.
        #[arg(long, default_value_t = 2001)]
        points: usize,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("level").required(true).args(["a", "epsilon"])))]
pub struct CubeCutArgs {
    /// Dimension; may be omitted when `--normal` is given.
    #[arg(long)]
    pub n: Option<usize>,
    /// Threshold in the scale of the given direction (`Σxᵢ <= a` by default).
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Solve for the threshold giving this volume.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Nonnegative direction `v`, comma separated; defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    pub normal: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("level").required(true).args(["epsilon", "threshold"])))]
pub struct McArgs {
    #[arg(long, value_enum)]
    pub body: BodyArg,
    #[arg(long)]
    pub n: usize,
    /// Cut volume ε (cube) or a slab holding `1/2 - ε` (ball).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// `a` in `v·x <= a` (cube) or the slab half-width `d` (ball).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Cube direction, comma separated; defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    pub normal: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BodyArg {
    Ball,
    Cube,
}

impl BodyArg {
    pub fn as_str(self) -> &'static str {
        match self {
            BodyArg::Ball => "ball",
            BodyArg::Cube => "cube",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Paper,
    Corrected,
}
