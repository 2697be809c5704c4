//! `lt`: Frobenius trace tables, Chebotarev and Lang-Trotter counts, and
//! exact verification suites.

mod cache;
mod commands;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use parse::{parse_curve, parse_x, Curve};

const ABOUT: &str =
    "Frobenius traces of y^2 = x^3 + Ax + B and the counting functions built on them.\n\
Sign convention: a_p = p + 1 - #E(F_p), so |a_p| < 2 sqrt(p). Only odd primes not dividing \
-16(4A^3 + 27B^2) are counted.";

#[derive(Parser, Debug)]
#[command(name = "lt", version, about = ABOUT, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute an a_p table and write it as CSV (p,a,ordinary,D,d).
    Ap(ApArgs),
    /// Evaluate a counting function from a cached a_p table.
    Count(CountArgs),
    /// Run the exact verification suites; exit 1 if any fails.
    Verify(VerifyArgs),
    /// Cardinalities of the Borel and mixed subgroup layers.
    Groups(GroupsArgs),
    /// Ray class order of Q(sqrt d) modulo m.
    Rayclass(RayclassArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    /// Curve coefficients A,B.
    #[arg(long, value_parser = parse_curve, default_value = "1,1", allow_hyphen_values = true)]
    pub curve: Curve,
    /// Largest prime to include; scientific notation accepted (1e6).
    #[arg(long, value_parser = parse_x, default_value = "1e6")]
    pub x: u64,
    /// Number of contiguous prime shards evaluated in parallel.
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
}

#[derive(Args, Debug)]
pub struct ApArgs {
    #[command(flatten)]
    pub table: TableArgs,
    /// Output file; defaults to $LT_CACHE_DIR/ap_A_B_x.csv.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    #[value(name = "PEa")]
    Pea,
    #[value(name = "PEk")]
    Pek,
    #[value(name = "DE")]
    De,
    #[value(name = "piC")]
    PiC,
    #[value(name = "pitilde")]
    PiTilde,
    Smoothed,
    /// Class frequencies mod ℓ against their densities.
    Freq,
    /// CSV of x,observed,expected over --xs.
    Sweep,
    /// Observed counts against the unit-constant bound shapes over --xs.
    Profile,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Strict,
    Inclusive,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    Bump,
    Dominating,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[command(flatten)]
    pub table: TableArgs,
    /// Trace value for PEa.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub a: i64,
    /// Fundamental discriminant for PEk.
    #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
    pub d: i64,
    /// Auxiliary prime ℓ (PEa restriction, piC, pitilde, smoothed, freq).
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long, value_enum, default_value_t = Split::Strict)]
    pub split: Split,
    /// Class predicate: all, trace:T, det:D, cp:T:D, c:A (trace A, square discriminant), square.
    #[arg(long, default_value = "all")]
    pub pred: String,
    #[arg(long, value_enum, default_value_t = Window::Bump)]
    pub window: Window,
    /// Window support c1,c2.
    #[arg(long)]
    pub support: Option<String>,
    /// Sample points for sweep and profile, e.g. 1e4,1e5,1e6.
    #[arg(long, value_parser = parse_x, value_delimiter = ',')]
    pub xs: Vec<u64>,
    /// Counting function swept by --kind sweep.
    #[arg(long = "of", value_enum, default_value_t = Kind::Pea)]
    pub of: Kind,
    /// Compute and cache the table if it is missing.
    #[arg(long)]
    pub compute: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suites to run (functoriality, ray-class, frobenius-field, borel, mixed-group); all by default.
    #[arg(long = "suite")]
    pub suites: Vec<String>,
    /// Restrict group suites to this prime.
    #[arg(long)]
    pub ell: Option<u32>,
    /// Random class functions per group pair.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

#[derive(Args, Debug)]
pub struct GroupsArgs {
    #[arg(long, default_value_t = 5)]
    pub ell: u32,
    /// Also build the mixed group for Q(sqrt d).
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// Write the multiplication table of GL_2(F_ℓ) in group-table format.
    #[arg(long)]
    pub table_out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct RayclassArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    #[arg(long)]
    pub m: u64,
    /// Cross-check against ideal enumeration.
    #[arg(long)]
    pub oracle: bool,
}

/// Process outcome: 1 for a failed check, 2 for bad input or missing data.
#[derive(Debug)]
pub enum Failure {
    Verification(String),
    Usage(String),
}

impl From<lt_core::Error> for Failure {
    fn from(e: lt_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Ap(a) => commands::ap(&a),
        Command::Count(c) => commands::count(&c),
        Command::Verify(v) => commands::verify(&v),
        Command::Groups(g) => commands::groups(&g),
        Command::Rayclass(r) => commands::rayclass(&r),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("lt: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("lt: {m}");
            ExitCode::from(2)
        }
    }
}
