//! Command-line grammar. The parsed [`RunConfig`] fully determines the output.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use welding_core::moments::THREADS_ENV;
use welding_core::numerics::CumulativeMode;

#[derive(Parser, Debug)]
#[command(
    name = "welding",
    version,
    about = "Exact welding-coefficient moments, Virasoro actions and diagonal-law numerics"
)]
pub struct RunConfig {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the artifact to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Digits used for published floating-point values.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u16).range(1..=60))]
    pub digits: u16,
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the joint moments of the welding coefficients at one level.
    Moments(MomentsArgs),
    /// Inspect the Witt-algebra action.
    #[command(subcommand)]
    Operators(OperatorsCmd),
    /// Evaluate the conjectured diagonal law and Cardy's formula.
    #[command(subcommand)]
    Diagonal(DiagonalCmd),
    /// Closed-form welding family `u(z) = z (1 + w z^N)^(-1/N)`.
    Family(FamilyArgs),
    /// Run every acceptance check and write a markdown report.
    ReproducePaper(ReproduceArgs),
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[arg(long)]
    pub level: u32,
    /// Also check the known identities and print a pass/fail table.
    #[arg(long)]
    pub verify: bool,
    /// Unlock levels 7 and 8.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    U,
    L,
}

#[derive(Subcommand, Debug)]
pub enum OperatorsCmd {
    /// The polynomial `P_n` in the interior (`u`) or exterior (`l`) coefficients.
    Pn {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Side::U)]
        side: Side,
    },
    /// Matrices of the level operators between weights `n-2`, `n-1` and `n`.
    Matrices {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        n: u32,
    },
    /// Kernel of the transposed level-one operator at weight `n`.
    Kernel {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        n: u32,
    },
    /// Bracket relations on `rho0^lambda u^p`.
    Commutators {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..=4))]
        range: i64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=5))]
        max_weight: u32,
    },
    /// Action on the radii against the stress-tensor coefficients.
    Stress {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(0..=8))]
        window: i64,
    },
    /// Diagonal lemma: part (a) at `n`, or part (b) at `(m, n)` when `--m` is given.
    DiagonalLemma {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=8))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        m: Option<u32>,
    },
    /// `(L_0 + Lbar_0)` on both radii under the implemented sign convention.
    MinusDiagnostic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CardyReport {
    Value,
    Log,
    Exponent,
}

/// Shared parameters of the conjectured law.
#[derive(Args, Debug, Clone)]
pub struct LawArgs {
    #[arg(long)]
    pub beta: String,
    /// Central charge; `alpha = 1 - c`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
}

#[derive(Subcommand, Debug)]
pub enum DiagonalCmd {
    /// `nu(exp(-x) <= a <= 1)`.
    Cdf {
        #[arg(long)]
        x: String,
        #[command(flatten)]
        law: LawArgs,
    },
    /// Laplace transform of `-log a`.
    Laplace {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        law: LawArgs,
    },
    /// Finite-difference residual of the Laplace-transform ODE.
    Ode {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "1e-4")]
        h: String,
        #[command(flatten)]
        law: LawArgs,
    },
    /// Cardy's annulus crossing formula `F(rho)`.
    Cardy {
        #[arg(long)]
        rho: String,
        /// Evaluate through the log-space path.
        #[arg(long)]
        small_rho: bool,
        #[arg(long, value_enum, default_value_t = CardyReport::Value)]
        report: CardyReport,
    },
    /// Feasibility of a scale `beta` on a grid `a:b:step` of moduli.
    Sandwich {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value = "0.5:10:0.5")]
        grid: String,
    },
    /// Modified Bessel function `K_alpha(x)`.
    Bessel {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        x: String,
    },
    /// `int_0^x exp(-beta/y) dy`.
    Cumint {
        #[arg(long)]
        x: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = CumulativeMode::Closed)]
        mode: CumulativeMode,
    },
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..=16))]
    pub n: u32,
    /// Gaussian rational such as `1/2`, `1/3-1/4i` or `i/5`.
    #[arg(long, allow_hyphen_values = true)]
    pub w: String,
    /// Truncation order of the area formula.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..=2000))]
    pub order: u32,
    /// Check the `P_n` pattern for `1 <= n <= K`.
    #[arg(long, value_name = "K", default_value_t = 8)]
    pub check_pn: u32,
    /// Order of the inversion check.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..=400))]
    pub inversion_order: u32,
    /// Number of series coefficients listed in the report.
    #[arg(long, default_value_t = 8)]
    pub show_terms: u32,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Highest moment level used by the moment checks.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=6))]
    pub max_level: u32,
}
