use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "dunkl-bose", version = env!("DUNKL_BOSE_GIT_DESCRIBE"))]
#[command(about = "Thermodynamics of a trapped ideal Bose gas with Wigner-Dunkl statistics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct GasArgs {
    /// Trap dimension (real, >= 1).
    #[arg(short = 'd', long = "dimension", default_value_t = 3.0, allow_negative_numbers = true)]
    pub d: f64,
    /// Wigner parameter, > -1/2.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Semiclassical particle number.
    #[arg(short = 'N', long = "particles", default_value_t = 1e6, allow_negative_numbers = true)]
    pub particles: f64,
    /// Treat the dimension as that of a homogeneous gas (maps d -> d/2).
    #[arg(long)]
    pub homogeneous: bool,
    /// Box hypervolume used by the homogeneous map.
    #[arg(long, default_value_t = 1.0, requires = "homogeneous", allow_negative_numbers = true)]
    pub hypervolume: f64,
}

#[derive(Debug, Args, Clone)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub steps: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical temperature and its ratio to the undeformed value.
    Tc {
        #[command(flatten)]
        gas: GasArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full thermodynamic state on a linear temperature grid
    /// (defaults: 0.05 t_c to 2.5 t_c, 200 points).
    Sweep {
        #[command(flatten)]
        gas: GasArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Heat-capacity discontinuity at t_c in three dimensions versus theta.
    Fig1 {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta_min: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        theta_max: f64,
        #[arg(long, default_value_t = 500, allow_negative_numbers = true)]
        steps: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Heat capacity across the transition for several theta
    /// (t in units of t_c; defaults 0.05 to 2.5, 400 points).
    Fig2 {
        #[arg(short = 'd', long = "dimension", default_value_t = 2.0, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.2, 0.0, -0.2], allow_hyphen_values = true)]
        theta: Vec<f64>,
        #[arg(short = 'N', long = "particles", default_value_t = 1e6, allow_negative_numbers = true)]
        particles: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Measured high-temperature U/(N k_B T) against the analytic coefficient.
    Classical {
        #[arg(short = 'd', long = "dimension", default_value_t = 3.0, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.0], allow_hyphen_values = true)]
        theta: Vec<f64>,
        #[arg(short = 'N', long = "particles", default_value_t = 1e6, allow_negative_numbers = true)]
        particles: f64,
        #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
        t_over_tc: f64,
        #[arg(long)]
        homogeneous: bool,
        #[arg(long, default_value_t = 1.0, requires = "homogeneous", allow_negative_numbers = true)]
        hypervolume: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify a Wigner parameter against the window (-1/2, 1/2].
    ValidateTheta {
        #[arg(allow_negative_numbers = true)]
        theta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Level sums over the discrete spectrum against the continuum formulas.
    ExactCheck {
        #[command(flatten)]
        gas: GasArgs,
        /// Temperatures to compare at.
        #[arg(long = "t", value_delimiter = ',', default_values_t = vec![10.0, 20.0, 50.0, 100.0, 200.0, 400.0], allow_hyphen_values = true)]
        t_values: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form three-dimensional heat-capacity jump.
    Jump {
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.0], allow_hyphen_values = true)]
        theta: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Tc { output, .. }
            | Command::Sweep { output, .. }
            | Command::Fig1 { output, .. }
            | Command::Fig2 { output, .. }
            | Command::Classical { output, .. }
            | Command::ValidateTheta { output, .. }
            | Command::ExactCheck { output, .. }
            | Command::Jump { output, .. } => output,
        }
    }
}
