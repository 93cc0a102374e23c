use std::path::PathBuf;

use anharmonic::ModelParams;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "anharmonic", version, about = "Functional integral of the quartic anharmonic oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Z(β) by both Gelfand–Yaglom methods, with the S(β) terms and the remainder budget.
    Z(ZArgs),
    /// CSV data for figure 1 (S against b) or figure 2 (the Gelfand–Yaglom term against τ).
    Figure(FigureArgs),
    /// Run the acceptance suite and print PASS/FAIL per criterion.
    Validate(ValidateArgs),
    /// Evaluate one reference computation directly.
    Oracle(OracleArgs),
}

/// Model constants; omitted values take the command's defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Quartic coupling a ≥ 0.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Quadratic coefficient b.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Kinetic coefficient c > 0.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Interval length β > 0 (τ for figure 1).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
}

impl ParamArgs {
    /// Fills gaps from `[a, b, c, β]`; invalid constants are usage errors.
    pub fn resolve(&self, defaults: [f64; 4]) -> CliResult<ModelParams> {
        ModelParams::new(
            self.a.unwrap_or(defaults[0]),
            self.b.unwrap_or(defaults[1]),
            self.c.unwrap_or(defaults[2]),
            self.beta.unwrap_or(defaults[3]),
        )
        .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Precision {
    #[default]
    Standard,
    /// Double-double arithmetic in the slice recurrence.
    Extended,
}

#[derive(Debug, Clone, Args)]
pub struct ZArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of nontrivial S terms (1 to 3).
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    /// Slices for the discrete value and the remainder budget.
    #[arg(long, default_value_t = 64)]
    pub n_slices: usize,
    /// Principal-sum cutoff; defaults to ⌈3 ln N⌉.
    #[arg(long)]
    pub k0: Option<usize>,
    /// Poincaré order of the discrete series and the remainder budget.
    #[arg(long, default_value_t = 2)]
    pub j_order: usize,
    /// Step of the direct ODE solve; defaults to β/4096.
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long, value_enum, default_value_t = Precision::Standard)]
    pub precision: Precision,
    /// Print `key=value` lines.
    #[arg(long)]
    pub kv: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// 1 or 2.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    /// Lower end of the swept variable.
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    /// Upper end of the swept variable.
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Suite {
    #[default]
    Quick,
    Full,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value_t = Suite::Quick)]
    pub suite: Suite,
    /// Seed of the randomized criteria.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Shrink every tolerance to zero (negative control).
    #[arg(long, hide = true)]
    pub corrupt_tolerance: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    /// Harmonic chain Z_N (a = 0).
    Gaussian,
    /// Z_N from the multi-index series, N ≤ 5.
    Multisum,
    /// Z_N by nested quadrature, N ≤ 3.
    Bruteforce,
    /// Z_N by importance sampling.
    Montecarlo,
    /// −d ln Z_N/da at a = 0.
    CouplingDerivative,
    /// The same moment with both endpoints clamped.
    Bridge,
    /// ∫exp(−(Ax⁴+Bx²+Cx))dx by quadrature with A, B, C = a, b, c.
    I1,
    /// The parabolic-cylinder series of the same integral through m = K0.
    I1Series,
    /// First continuum term C₁(β).
    C2,
    /// Clamped-endpoint first-order S(β).
    Clamped,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub kind: OracleKind,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 3)]
    pub n_slices: usize,
    /// Truncation index for `multisum` and `i1-series`.
    #[arg(long, default_value_t = 40)]
    pub k0: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Sample count for `montecarlo`.
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
}
