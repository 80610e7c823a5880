use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hochster_core::FieldSpec;

#[derive(Debug, Parser)]
#[command(
    name = "hochster",
    version,
    about = "Betti tables, regularity and classification of uniform clutters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Coefficient field: `q` for the rationals or a prime.
    #[arg(long, global = true, default_value = "q")]
    pub field: FieldSpec,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Worker threads for subset enumeration (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest vertex count for exhaustive subset enumeration.
    #[arg(long, global = true, default_value_t = hochster_core::betti::DEFAULT_SUBSET_CAP)]
    pub subset_cap: u32,

    /// Largest clique tried as a separator when decomposing (defaults to d+2).
    #[arg(long, global = true)]
    pub separator_cap: Option<u32>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded Betti table of the ideal generated by the non-circuits.
    Betti(InputArg),
    /// Castelnuovo-Mumford regularity.
    Reg(InputArg),
    /// Whether the resolution is d-linear.
    Linearity(InputArg),
    /// All structural and homological verdicts.
    Classify(InputArg),
    /// Search for a decomposition into two proper subclutters.
    Decompose(InputArg),
    /// Reduced homology of the clique complex.
    Homology(InputArg),
    /// Closed-form Betti table for minimal clutters or cycles.
    ResolutionFormula(FormulaArgs),
    /// Emit a fixture in the clutter text format.
    Generate(GenerateArgs),
    /// Cross-check engine results against identities and closed forms.
    Check(InputArg),
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Clutter file, or `-` for standard input.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FormulaSource {
    /// Take n, d and the generator count from a clutter file (`-` for stdin).
    pub input: Option<PathBuf>,

    /// Explicit `n,d,mu`.
    #[arg(long, value_parser = parse_params)]
    pub params: Option<(u32, u32, u64)>,

    /// Betti table of the n-cycle.
    #[arg(long)]
    pub cycle: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FormulaArgs {
    #[command(flatten)]
    pub source: FormulaSource,
}

fn parse_params(s: &str) -> Result<(u32, u32, u64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, d, mu] = parts.as_slice() else {
        return Err(format!("expected n,d,mu, got '{s}'"));
    };
    let bad = |what: &str| format!("'{what}' is not a non-negative integer");
    Ok((
        n.parse().map_err(|_| bad(n))?,
        d.parse().map_err(|_| bad(d))?,
        mu.parse().map_err(|_| bad(mu))?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cycle,
    CrossPolytope,
    #[value(name = "example-4-9")]
    Example49,
    #[value(name = "example-6-6")]
    Example66,
    Rp2,
    Torus,
    GeneralizedChordal,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: Family,

    /// Vertex count for `cycle`, dimension for `cross-polytope`.
    pub size: Option<u32>,

    /// Uniformity for `generalized-chordal`.
    #[arg(long, default_value_t = 3)]
    pub d: u32,

    /// Vertex budget for `generalized-chordal`.
    #[arg(long, default_value_t = 10)]
    pub max_n: u32,

    /// Number of construction steps for `generalized-chordal`.
    #[arg(long, default_value_t = 6)]
    pub steps: u32,

    /// Forbid new vertices in added circuits.
    #[arg(long)]
    pub no_fresh_vertex: bool,
}
