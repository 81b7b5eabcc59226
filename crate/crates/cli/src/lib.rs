//! Command-line front end: solve equation files, generate seeded instances,
//! sweep the identity suite across all solution routes, and benchmark how
//! the closed form scales with the term count.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

pub mod bench;
pub mod equation_file;
pub mod gen;
pub mod solve;
pub mod verify;

/// Errors mapped onto the process exit codes: 1 for I/O and schema problems,
/// 2 for degenerate equations, 3 for identity violations.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Degenerate(quatlin_core::Error),
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Json(_) | CliError::Schema(_) => 1,
            CliError::Degenerate(_) => 2,
            CliError::Violation(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "quatlin", version, about = "Closed-form linear quaternionic equation solver")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve an equation file and print the solution with its certificates.
    Solve(SolveArgs),
    /// Generate a random instance with a recorded ground-truth solution.
    Gen(GenArgs),
    /// Run the identity suite over seeded random instances.
    Verify(VerifyArgs),
    /// Time the solution routes against the term count.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, Eq, PartialEq, ValueEnum)]
pub enum MethodArg {
    /// Closed form (delta and the Phi operator).
    Closed,
    /// Gaussian elimination on the associated real system.
    Oracle,
    /// Both routes, reporting their discrepancy.
    Both,
}

#[derive(Parser)]
pub struct SolveArgs {
    /// Equation file (JSON).
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    pub method: MethodArg,
    /// Relative tolerance for cross-route and truth comparisons.
    /// (Degeneracy detection is scale-relative and not affected.)
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Emit the report as one JSON object.
    #[arg(long)]
    pub json: bool,
    /// Compare against the file's recorded "truth" solution.
    #[arg(long)]
    pub check_truth: bool,
}

#[derive(Parser)]
pub struct GenArgs {
    #[arg(long)]
    pub seed: u64,
    /// Number of plain terms c q b.
    #[arg(long)]
    pub n: usize,
    /// Number of conjugate terms c q̄ b (subtracted).
    #[arg(long, default_value_t = 0)]
    pub conj: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Parser)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub cases: usize,
    /// Largest plain-term count drawn per instance.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Parser)]
pub struct BenchArgs {
    /// Largest term count; rows cover n = 2..=n-max.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Timed repetitions per row; the median is reported.
    #[arg(long, default_value_t = 25)]
    pub reps: usize,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Parse arguments and dispatch; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.cmd {
        Command::Solve(args) => solve::cmd_solve(&args),
        Command::Gen(args) => gen::cmd_gen(&args),
        Command::Verify(args) => verify::cmd_verify(&args),
        Command::Bench(args) => bench::cmd_bench(&args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
