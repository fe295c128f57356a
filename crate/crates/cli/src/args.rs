use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lagweyl", version, about = "Laguerre/Hermite expansions, Hankel–Clifford transforms and radial Weyl operators")]
pub struct Cli {
    /// Starting Gauss rule order; overrides LAGWEYL_RULE_ORDER (default 200).
    #[arg(long, global = true)]
    pub rule_order: Option<usize>,

    /// Report layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned table.
    Text,
    /// One `key=value` record per line.
    Lines,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a function on the orthant in Laguerre functions.
    Expand(ExpandArgs),
    /// Fit coefficient decay and decide space membership.
    Classify(ClassifyArgs),
    /// Apply Hankel–Clifford or fractional transforms to coefficients.
    Transform(TransformArgs),
    /// Radial-symbol Weyl operators on Hermite expansions.
    Weyl {
        #[command(subcommand)]
        action: WeylAction,
    },
    /// Summarize a coefficient file.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Exp,
    Laguerre,
    Poly,
    Const,
}

/// A radial profile given either as a SYMSPEC file or inline.
#[derive(Debug, Args)]
pub struct SymbolArgs {
    /// SYMSPEC 1 file.
    #[arg(long, conflicts_with = "family")]
    pub symbol: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub family: Option<Family>,

    /// Exponential rate `b`.
    #[arg(long)]
    pub b: Option<f64>,

    /// Power `m` of the poly family.
    #[arg(long)]
    pub power: Option<u32>,

    /// Constant value of the const family.
    #[arg(long)]
    pub coef: Option<f64>,

    /// Multi-index of a single Laguerre function, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub index: Vec<usize>,

    #[arg(long, default_value_t = 1)]
    pub dim: usize,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub source: SymbolArgs,

    /// SYMSPEC 1 file (same as --symbol).
    #[arg(long = "in", conflicts_with_all = ["symbol", "family"])]
    pub input: Option<PathBuf>,

    /// Laguerre orders γ per axis; one value is broadcast.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub gamma: Vec<f64>,

    /// Truncation per axis; one value is broadcast.
    #[arg(long, value_delimiter = ',', default_value = "32")]
    pub trunc: Vec<usize>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,

    #[arg(long, value_delimiter = ',')]
    pub alpha_grid: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// LCOEF file, or a SYMSPEC laguerre combination.
    #[arg(long = "in")]
    pub input: PathBuf,

    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Hankel–Clifford transform (θ = π, a sign flip) on all or `--partial` axes.
    #[arg(long, conflicts_with = "theta")]
    pub hankel: bool,

    /// Angles θ in (-π, π] \ {0}, one per transformed axis.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub theta: Vec<f64>,

    /// 1-based axes to transform; all axes when absent.
    #[arg(long, value_delimiter = ',')]
    pub partial: Vec<usize>,

    /// Truncation used when the input is a SYMSPEC file.
    #[arg(long, value_delimiter = ',', default_value = "32")]
    pub trunc: Vec<usize>,
}

#[derive(Debug, Subcommand)]
pub enum WeylAction {
    /// Apply the diagonal operator to a Hermite LCOEF file.
    Apply {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare eigenvalues with the phase-space quadrature oracle.
    Compare {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Starting Gauss–Hermite order per phase-space variable.
        #[arg(long, default_value_t = lagweyl::weyl::DEFAULT_PHASE_RULE_ORDER)]
        phase_order: usize,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Print the eigenvalues λ_k for k up to `--kmax` per axis.
    Spectrum {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance of the operators of e^{-(b+1/j)ρ} from that of e^{-bρ} on h_0.
    Converge {
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        jmax: usize,
    },
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long = "in")]
    pub input: PathBuf,

    #[arg(long, value_delimiter = ',')]
    pub alpha_grid: Vec<f64>,
}
