use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "isodense", version, about = "Isoperimetric regions for the density r^p + a")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and print the solution as JSON.
    Solve(SolveArgs),
    /// Solve over a range of offsets and write CSV.
    Sweep(SweepArgs),
    /// Perimeter and mass on an (|alpha|, beta) grid, as CSV.
    Contour(ContourArgs),
    /// Run the curve or surface evolver.
    Evolve(EvolveArgs),
    /// Critical offset above which the centred region is optimal.
    Acrit(AcritArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Clone)]
pub struct Problem {
    /// Ambient dimension (1, 2 or 3).
    #[arg(long, default_value_t = 1)]
    pub dim: u32,
    /// Exponent of the density.
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    /// Target weighted mass.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mass: f64,
}

#[derive(Debug, Args, Clone)]
pub struct EvolverOpts {
    /// Vertices of the curve (2D) or segments of the profile (3D).
    #[arg(long, default_value_t = 512)]
    pub vertices: usize,
    /// Iteration cap for the evolver.
    #[arg(long, default_value_t = 20_000)]
    pub iters: usize,
    /// Relative perimeter decrease over 50 iterations that counts as converged.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: Problem,
    /// Offset of the density.
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Use the numerical solver even when an exact one exists.
    #[arg(long)]
    pub force_numeric: bool,
    #[command(flatten)]
    pub evolver: EvolverOpts,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub problem: Problem,
    #[arg(long, allow_negative_numbers = true)]
    pub a_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a_max: f64,
    /// Number of offsets, end points included.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[arg(long)]
    pub force_numeric: bool,
    #[command(flatten)]
    pub evolver: EvolverOpts,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mass: f64,
    /// Points per axis.
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, default_value_t = 2)]
    pub dim: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mass: f64,
    #[command(flatten)]
    pub evolver: EvolverOpts,
    /// Where to write the final curve as CSV.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct AcritArgs {
    #[command(flatten)]
    pub problem: Problem,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle1d,
    BranchContinuity,
    Reduction,
    RadialQuadrature,
    EvolverP2,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
}
