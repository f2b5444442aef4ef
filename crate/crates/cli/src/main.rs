//! `hvhess` — hypervolume values, gradients, and Hessians from the command
//! line, with oracle verification, a Newton demo, and a sweep benchmark.
//!
//! Exit codes: 0 success, 2 parse error, 3 validation error (reference or
//! general position), 4 oracle deviation beyond tolerance.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod output;

/// A failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn validation(message: String) -> Self {
        Self { code: 3, message }
    }

    pub fn deviation(message: String) -> Self {
        Self { code: 4, message }
    }
}

impl From<hvhess::HvError> for CliError {
    fn from(e: hvhess::HvError) -> Self {
        CliError::validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::parse(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "hvhess",
    about = "Hypervolume indicator values, gradients, and sparse Hessians",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hypervolume of a point set
    Hv(InputArgs),
    /// Objective-space gradient, one entry per line in concat order
    Grad(GradArgs),
    /// Objective-space Hessian as row,col,value triples
    Hess(HessArgs),
    /// Check analytic derivatives against the finite-difference oracles
    Verify(VerifyArgs),
    /// Hypervolume Newton iteration on a built-in problem
    Newton(NewtonArgs),
    /// Benchmark the 3-D Hessian sweep on random fronts
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// JSON document with points/reference, or CSV rows of coordinates
    #[arg(long)]
    input: PathBuf,
    /// Reference point as "r1,r2,..."; overrides the document's field
    #[arg(long = "ref")]
    reference: Option<String>,
    /// Write stdout content to this file instead
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GradArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Compare against central finite differences and report deviations
    #[arg(long)]
    fd_check: bool,
    /// Finite-difference step
    #[arg(long, default_value_t = 1e-5)]
    h: f64,
    /// Deviation tolerance for --fd-check (absolute and relative)
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    /// Triple dimension sweep, m = 3 only
    Sweep3d,
    /// Recursive projection/clipping, any m
    General,
}

#[derive(Args)]
struct HessArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Algorithm::General)]
    algorithm: Algorithm,
    /// Compare against central second differences and report deviations
    #[arg(long)]
    fd_check: bool,
    /// Finite-difference step
    #[arg(long, default_value_t = 1e-4)]
    h: f64,
    /// Deviation tolerance for --fd-check (absolute and relative)
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Also write the dense matrix as comma-separated rows to this file
    #[arg(long)]
    heatmap: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Gradient finite-difference step (Hessian checks use 1e-4)
    #[arg(long, default_value_t = 1e-5)]
    h: f64,
    /// Overrides both tolerance pairs when set
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct NewtonArgs {
    /// Built-in problem name
    #[arg(long, default_value = "quad")]
    problem: String,
    /// Number of decision points
    #[arg(long, default_value_t = 5)]
    n_points: usize,
    /// Seed for the starting configuration
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Newton iterations to run
    #[arg(long, default_value_t = 20)]
    steps: usize,
    /// Reference point as "r1,r2"
    #[arg(long = "ref", default_value = "4,4")]
    reference: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Front sizes, comma-separated
    #[arg(long, default_value = "1000,10000,100000")]
    sizes: String,
    /// Timed repetitions per size (median is reported)
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hv(args) => commands::run_hv(&args),
        Command::Grad(args) => commands::run_grad(&args),
        Command::Hess(args) => commands::run_hess(&args),
        Command::Verify(args) => commands::run_verify(&args),
        Command::Newton(args) => commands::run_newton(&args),
        Command::Bench(args) => commands::run_bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
