//! Argument definitions.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Parser)]
#[command(name = "t237", version, about = "Exact computations for the T_{2,3,7} surfaces and their log canonical models")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Riemann-Roch correction of a cyclic quotient singularity.
    Delta(DeltaArgs),
    /// Hirzebruch-Jung continued fractions and discrepancies.
    Hj(HjArgs),
    /// Plurigenera P_0 .. P_max of a surface.
    Plurigenera(PlurigeneraArgs),
    /// Hilbert series numerator of the plurigenera against given weights.
    Hilbert(HilbertArgs),
    /// Pullback of a divisor under the contraction of some curves.
    Pullback(PullbackArgs),
    /// Lattice invariants of a configuration's intersection form.
    Lattice(LatticeArgs),
    /// Kodaira fibers of a Weierstrass model y^2 = x^3 + A x + B.
    Weierstrass(WeierstrassArgs),
    /// Classification of a Brieskorn-type elliptic surface.
    Brieskorn(BrieskornArgs),
    /// Smallest volume of the family as a function of the boundary coefficient.
    Volume(VolumeArgs),
}

impl Command {
    /// Subcommand name and its arguments as JSON, for the report envelope.
    pub fn describe(&self) -> (&'static str, Value) {
        let name = match self {
            Command::Delta(_) => "delta",
            Command::Hj(_) => "hj",
            Command::Plurigenera(_) => "plurigenera",
            Command::Hilbert(_) => "hilbert",
            Command::Pullback(_) => "pullback",
            Command::Lattice(_) => "lattice",
            Command::Weierstrass(_) => "weierstrass",
            Command::Brieskorn(_) => "brieskorn",
            Command::Volume(_) => "volume",
        };
        (name, serde_json::to_value(self).expect("arguments serialize"))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SourceArgs {
    /// Built-in data: theorem-4.3, theorem-4.4, t237, type-I-config.
    #[arg(long, conflicts_with = "input")]
    pub preset: Option<String>,
    /// JSON file with a configuration, Riemann-Roch data or parameters.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("singularity").required(true).args(["chain", "sing"])))]
pub struct DeltaArgs {
    /// Self-intersection numbers b_i >= 2 of the resolution chain.
    #[arg(long, value_delimiter = ',')]
    pub chain: Option<Vec<u32>>,
    /// The singularity 1/n(1,q) given as n,q.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub sing: Option<Vec<u64>>,
    /// Use the canonical divisor (default when --incidence is absent).
    #[arg(long, conflicts_with = "incidence")]
    pub canonical: bool,
    /// Local intersection numbers of the boundary with each chain curve.
    #[arg(long, value_delimiter = ',')]
    pub incidence: Option<Vec<u32>>,
    /// Multiple, either k or a range a..b (inclusive).
    #[arg(long = "n", default_value = "1")]
    pub n: String,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("singularity").required(true).args(["q", "chain"])))]
pub struct HjArgs {
    /// Order of the cyclic group.
    #[arg(long = "n", requires = "q")]
    pub n: Option<u64>,
    /// Weight q with gcd(n, q) = 1.
    #[arg(long, requires = "n")]
    pub q: Option<u64>,
    /// Evaluate a chain instead of expanding n/q.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "q"])]
    pub chain: Option<Vec<u32>>,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "input"])))]
pub struct PlurigeneraArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Largest multiple (defaults to the truncation order).
    #[arg(long)]
    pub max: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "input"])))]
pub struct HilbertArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Weights w_i of the denominator product of (1 - t^w_i).
    #[arg(long, value_delimiter = ',', required = true)]
    pub weights: Vec<u32>,
    /// Compare against a hypersurface of this degree.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Truncation order (defaults to the truncation setting).
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "input"])))]
#[command(group(ArgGroup::new("locus").required(true).args(["contract", "keep"])))]
pub struct PullbackArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Curves to contract.
    #[arg(long, value_delimiter = ',')]
    pub contract: Option<Vec<String>>,
    /// Curves to keep; every other curve is contracted.
    #[arg(long, value_delimiter = ',')]
    pub keep: Option<Vec<String>>,
    /// Strict transform part as label=coefficient pairs.
    #[arg(long, value_delimiter = ',')]
    pub divisor: Vec<String>,
    /// Add the pullback of the canonical class.
    #[arg(long)]
    pub canonical: bool,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "input"])))]
pub struct LatticeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    /// Vector as comma separated coordinates or one of h, s, f (rank 10 only).
    #[arg(long = "vector")]
    pub vectors: Vec<String>,
    /// Split a hyperbolic plane off along this isotropic vector.
    #[arg(long)]
    pub split: Option<String>,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("model").required(true).args(["a", "input"])))]
pub struct WeierstrassArgs {
    /// Coefficients of A from the constant term up.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "b")]
    pub a: Option<Vec<String>>,
    /// Coefficients of B from the constant term up.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "a")]
    pub b: Option<Vec<String>>,
    /// N, so that A, B, Δ have degree budgets 4N, 6N, 12N.
    #[arg(long, default_value_t = 1)]
    pub budget: u32,
    /// JSON file {"a": [...], "b": [...], "budget": N}.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub input: Option<PathBuf>,
    /// Also minimalize at every non-minimal place of degree one.
    #[arg(long)]
    pub minimalize: bool,
}

#[derive(Debug, Args, Serialize)]
#[command(group(ArgGroup::new("params").required(true).args(["input", "special", "t", "sweep"])))]
pub struct BrieskornArgs {
    /// JSON file with keys t4 .. t42 (missing keys are zero).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Point a,b of the special locus.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, conflicts_with_all = ["input", "t", "sweep"])]
    pub special: Option<Vec<String>>,
    /// Parameter assignments such as t4=1,t42=-2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["input", "sweep"])]
    pub t: Vec<String>,
    /// JSON array of parameter objects, classified in parallel.
    #[arg(long, conflicts_with = "input")]
    pub sweep: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VolumeArgs {
    /// Boundary coefficient c in (0, 1].
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
}
