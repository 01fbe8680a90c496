mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact pseudodifferential operators, fractional relations and Grassmannian planes.
#[derive(Parser, Debug)]
#[command(name = "pseudodiff", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub window: Window,
}

/// Precision settings shared by every command.
#[derive(Args, Debug, Clone)]
pub struct Window {
    /// x-precision of operator coefficients given without `O(x^k)`.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub prec_x: u64,
    /// Extra trust below a plane's floor for z-series given without `O(z^k)`.
    #[arg(long, global = true, default_value_t = -12, allow_negative_numbers = true,
          value_parser = clap::value_parser!(i64).range(-200..=-1))]
    pub z_floor: i64,
    /// Degree through which planes are built.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=40))]
    pub depth: u64,
    /// Largest monomial exponent in the relation search.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub nmax: u64,
    /// Degree bound for dependences in the rank search.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=16))]
    pub deg_bound: u64,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Operator arithmetic.
    #[command(subcommand)]
    Psdo(PsdoCmd),
    /// Fractional operators.
    #[command(subcommand)]
    Frac(FracCmd),
    /// Planes in the big cell.
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Relations between commuting operators.
    #[command(subcommand)]
    Bc(BcCmd),
    /// Weierstrass curves and their planes.
    #[command(subcommand)]
    Krichever(KricheverCmd),
    /// Runs the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10))]
        only: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PsdoCmd {
    /// Product `p q`.
    Mul {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Inverse of an operator with unit leading coefficient.
    Invert {
        #[arg(long)]
        p: String,
    },
    /// Dressing operator `U` with `L = U D^m U^-1`.
    Dress {
        #[arg(long)]
        l: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FracCmd {
    /// Fractionality certificate of an operator.
    Certify {
        #[arg(long)]
        p: String,
    },
    /// Denominatorial order of `frac( A ; B )`.
    Dord {
        #[arg(long)]
        p: String,
    },
    /// Whether `frac( A ; B )` is differential.
    Differential {
        #[arg(long)]
        p: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Example {
    /// Spanned by `z^n + n z^(n-2)`.
    #[value(name = "4.5")]
    Trivial,
    /// A plane of rank two over `C(z^2)`.
    #[value(name = "rank2")]
    RankTwo,
    /// `span{z^n}`.
    Standard,
}

#[derive(Args, Debug)]
pub struct PlaneSource {
    /// A built-in plane.
    #[arg(long, conflicts_with = "plane")]
    pub example: Option<Example>,
    /// A plane JSON file.
    #[arg(long)]
    pub plane: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum PlaneCmd {
    /// The canonical basis.
    Show {
        #[command(flatten)]
        source: PlaneSource,
    },
    /// `dim (W + f W) / W`.
    Kw {
        #[command(flatten)]
        source: PlaneSource,
        #[arg(long)]
        f: String,
    },
    /// Whether `f W ⊆ W`.
    Spectral {
        #[command(flatten)]
        source: PlaneSource,
        #[arg(long)]
        f: String,
    },
    /// Rank over `C(f)`.
    Rank {
        #[command(flatten)]
        source: PlaneSource,
        #[arg(long)]
        f: String,
    },
    /// The dressing operator of the plane.
    Dressing {
        #[command(flatten)]
        source: PlaneSource,
    },
}

#[derive(Subcommand, Debug)]
pub enum BcCmd {
    /// A polynomial `F` with `F(p, q) = 0`.
    Relate {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Dimension of `span{p^i q^j : i, j <= n}`.
    Span {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub g2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g3: String,
}

#[derive(Subcommand, Debug)]
pub enum KricheverCmd {
    /// Plane, commuting pair, relation and rank of a curve with a marked point.
    Elliptic {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Laurent coefficients of the Weierstrass function.
    Weierstrass {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 8)]
        terms: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let report = commands::run(&cli, argv);
    report.emit(cli.window.json);
    ExitCode::from(report.exit_code())
}
