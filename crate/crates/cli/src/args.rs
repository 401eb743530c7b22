use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "golod", version, about = "Koszul homology, Betti numbers and Golod verdicts for artinian local rings over F_p")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Characteristic, overriding the input file.
    #[arg(long = "char", global = true, value_name = "P")]
    pub char: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Series and resolution cutoff.
    #[arg(long, alias = "D", global = true, default_value_t = 6, value_name = "D")]
    pub depth: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; with several inputs, inputs are processed concurrently.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Permit resolutions beyond homological degree 8.
    #[arg(long, global = true)]
    pub allow_deep: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: invariants, Koszul homology, class and Golod verdicts, EZD search, Betti numbers.
    Analyze(AnalyzeArgs),
    /// Presentation of R/m^i.
    Quotient { input: String, power: u32 },
    /// Betti numbers of the residue field.
    Betti {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, value_name = "I")]
        quotient: Option<u32>,
    },
    /// Expand a named Poincare-series formula.
    Series(SeriesArgs),
    /// Submaximal Pfaffians of an odd skew-symmetric matrix.
    Pfaffian {
        matrix: PathBuf,
        /// Ring file (or builtin:NAME) whose ideal is compared with the Pfaffian ideal.
        #[arg(long, value_name = "RING")]
        compare: Option<String>,
    },
    /// Report on the trivial extension by the shifted dual.
    Trivext(AnalyzeArgs),
    /// Search for an exact zero divisor.
    Ezd {
        input: String,
        #[arg(long, value_enum, default_value_t = EzdChoice::Auto)]
        mode: EzdChoice,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print a named example ring, or list them.
    Builtin {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

pub const DEFAULT_BUDGET: u64 = 1 << 22;
pub const DEFAULT_RANDOM_SAMPLES: u64 = 4096;

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Ring files, or builtin:NAME.
    #[arg(required = true)]
    pub inputs: Vec<String>,
    /// Analyze R/m^I instead of R.
    #[arg(long, value_name = "I")]
    pub quotient: Option<u32>,
    #[arg(long, value_enum, default_value_t = EzdChoice::Auto)]
    pub ezd: EzdChoice,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Compute Betti numbers up to D (default: --depth).
    #[arg(long, num_args = 0..=1, value_name = "D")]
    pub betti: Option<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EzdChoice {
    /// Full when p^dim(m) is small, otherwise linear forms plus random samples.
    Auto,
    Linear,
    Full,
    Random,
    None,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(value_enum)]
    pub name: SeriesName,
    #[arg(long)]
    pub e: Option<u32>,
    /// h_1,...,h_e for golod; the integer h for ggo.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub h: Vec<i64>,
    /// Coefficients of P^R for la, or of P^Q_R for rs.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p: Vec<i64>,
    #[arg(long)]
    pub mu: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    Golod,
    Thg,
    La,
    Ezd,
    Rs,
    Ggo,
    Codepth3,
    Trivext,
}
