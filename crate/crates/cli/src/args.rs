use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "argshift", version, about = "Argument shift method toolkit for Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Jacobi identity and attached invariants.
    Validate(Common),
    /// Compute the index with its rank certificate.
    Index(Common),
    /// Fundamental semi-invariant, its character and the components of its zero set.
    Semiinvariant(Common),
    /// Classical and extended shift generators with their transcendence degree.
    Shift(Common),
    /// Check pairwise commutation under both brackets.
    CommuteCheck(Common),
    /// Analyze the pencil A_x - lambda A_a.
    Pencil(Common),
    /// Decide completeness by the singular-set criterion and directly.
    Completeness(Common),
    /// Run the full pipeline.
    Report(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::Index(c)
            | Command::Semiinvariant(c)
            | Command::Shift(c)
            | Command::CommuteCheck(c)
            | Command::Pencil(c)
            | Command::Completeness(c)
            | Command::Report(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "catalog"])))]
pub struct Common {
    /// Algebra JSON file, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Catalog algebra, e.g. `b2`, `h(3)`, `b2+h3`, `abelian(7)`.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
    /// Shift point as comma-separated rationals.
    #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Evaluation point for `pencil`, as comma-separated rationals.
    #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Polynomial in x1..xn; repeatable.
    #[arg(long = "poly", value_name = "POLY", allow_hyphen_values = true)]
    pub polys: Vec<String>,
    /// Random samples per component and for rank estimates.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rank and root tolerance.
    #[arg(long, value_name = "T", allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Closure and identity tolerance.
    #[arg(long, value_name = "T", allow_hyphen_values = true)]
    pub closure_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include certificates and samples.
    #[arg(long)]
    pub verbose: bool,
}
