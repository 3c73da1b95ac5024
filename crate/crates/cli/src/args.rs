use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexbound::poly::DEFAULT_BUDGET;
use indexbound::DEFAULT_CAP;
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "indexbound",
    version,
    about = "Index bounds for character sums over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Weil, index, improved and reduced-degree bounds for one polynomial.
    Bound(BoundArgs),
    /// Exact character sum by enumeration.
    Sum(SumArgs),
    /// Artin-Schreier point counts and their intervals.
    Curve(CurveArgs),
    /// Reproduce a preset table of binomial bounds.
    Table(TableArgs),
    /// Run the containment, dominance and invariance checks over a corpus.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Table1,
    Table2,
    Table3,
}

/// Parameter bindings for names in the polynomial.
#[derive(Args, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bindings {
    /// Value of the parameter `a` (`0`, an integer, `g`, or `g^k`).
    #[arg(long = "a", value_name = "LIT", conflicts_with = "sweep")]
    pub a: Option<String>,
    /// Sweep the named parameter over every nonzero field element.
    #[arg(long, value_name = "NAME")]
    pub sweep: Option<String>,
    /// Bind another parameter, as NAME=LIT.
    #[arg(long = "set", value_name = "NAME=LIT")]
    pub set: Vec<String>,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest number of shift vectors a class search may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Largest field that may be built or enumerated.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: u32,
    /// Polynomial, e.g. "x^25 + a*x^4".
    #[arg(long)]
    pub poly: String,
    #[command(flatten)]
    pub bindings: Bindings,
    /// Character scalar: the sum uses ψ(c·x).
    #[arg(long, value_name = "LIT")]
    pub c: Option<String>,
    /// Also evaluate every class member and report the tightest.
    #[arg(long)]
    pub exhaustive: bool,
    /// Compute the exact sum and check containment.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub limits: Limits,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Add this much to the improved radius coefficient (harness testing).
    #[arg(long, default_value_t = 0, hide = true)]
    pub widen: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub poly: String,
    #[command(flatten)]
    pub bindings: Bindings,
    #[arg(long, value_name = "LIT")]
    pub c: Option<String>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveArgs {
    /// Base field size.
    #[arg(long)]
    pub q: u64,
    /// Extension degree: the curve lives over F_{q^m}.
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub poly: String,
    #[command(flatten)]
    pub bindings: Bindings,
    /// Count points and check containment.
    #[arg(long)]
    pub oracle: bool,
    /// Also sum the per-character improved intervals.
    #[arg(long)]
    pub certify: bool,
    #[command(flatten)]
    pub limits: Limits,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyArgs {
    /// Corpus file, one job per line; the built-in corpus when omitted.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

impl Command {
    pub fn format(&self) -> Format {
        match self {
            Command::Bound(a) => a.format,
            Command::Sum(a) => a.format,
            Command::Curve(a) => a.format,
            Command::Table(a) => a.format,
            Command::Verify(a) => a.format,
        }
    }
}
