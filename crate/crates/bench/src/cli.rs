use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use prc_core::EpsilonMode;

#[derive(Debug, Parser)]
#[command(
    name = "prc-bench",
    version,
    about = "Benchmark projection representation-based classifiers and export convergence traces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train and evaluate classifiers on one seeded split and write a report.
    Bench(BenchArgs),
    /// Run a single projection and write its distance trace as CSV.
    Trace(TraceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Prc,
    Dprc,
    Lrc,
    Nn,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Prc => "prc",
            Method::Dprc => "dprc",
            Method::Lrc => "lrc",
            Method::Nn => "nn",
        }
    }
}

/// Iteration controls shared by both subcommands.
#[derive(Debug, Clone, Args)]
pub struct IterationArgs {
    /// Relative-gap stopping threshold (0 disables the gap test)
    #[arg(long, default_value_t = 0.01)]
    pub delta0: f64,
    /// Maximum number of projection iterations per class
    #[arg(long, default_value_t = 100)]
    pub max_iters: usize,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["data", "synth"])))]
pub struct BenchArgs {
    /// Headerless CSV with rows `label,f1,...,fq`
    #[arg(long, value_name = "CSV")]
    pub data: Option<PathBuf>,
    /// Synthetic subspace data, e.g. `q=20,m=5,n=10,k=3,noise=0.05,sep=5`
    /// (seed defaults to --seed)
    #[arg(long, value_name = "SPEC")]
    pub synth: Option<String>,
    /// Methods to evaluate
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "prc,dprc,lrc,nn"
    )]
    pub methods: Vec<Method>,
    /// Training samples drawn per class; the rest are test samples
    #[arg(long)]
    pub train_per_class: usize,
    /// Seed for splitting (and synthetic data without an explicit seed)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub iteration: IterationArgs,
    /// DPRC output dimension [default: min(q, classes - 1)]
    #[arg(long)]
    pub dprc_dim: Option<usize>,
    /// DPRC regularizer: `rel:<f>` (f * trace(Jw) / q) or `abs:<value>`
    #[arg(long, default_value = "rel:1e-4")]
    pub epsilon: EpsilonArg,
    /// Reduce features with PCA fitted on the training split
    #[arg(long)]
    pub pca_dim: Option<usize>,
    /// Write the report here
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Save the fitted DPRC projection here
    #[arg(long, value_name = "PATH")]
    pub model_out: Option<PathBuf>,
    /// Record per-method wall time in the report file (makes it non-reproducible)
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["data", "synth", "random"])))]
pub struct TraceArgs {
    /// Headerless CSV with rows `label,f1,...,fq`
    #[arg(long, value_name = "CSV")]
    pub data: Option<PathBuf>,
    /// Synthetic subspace data spec (seed defaults to --seed)
    #[arg(long, value_name = "SPEC")]
    pub synth: Option<String>,
    /// Gaussian training samples as `<q>x<n>`, e.g. `5000x20`
    #[arg(long, value_name = "QxN")]
    pub random: Option<RandomShape>,
    /// Target class, by label or dense id
    #[arg(long, default_value = "0")]
    pub class: String,
    /// Query: `random`, `train:<i>` (sample i of the class, kept in the model) or
    /// `heldout:<i>` (sample i, removed from the model)
    #[arg(long, default_value = "random")]
    pub query: QueryArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub iteration: IterationArgs,
    /// Write the CSV here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonArg(pub EpsilonMode);

impl FromStr for EpsilonArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| format!("expected rel:<f> or abs:<v>, got `{s}`"))?;
        let v: f64 = value
            .parse()
            .map_err(|_| format!("`{value}` is not a number"))?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(format!("epsilon must be finite and non-negative, got {v}"));
        }
        match kind {
            "rel" => Ok(EpsilonArg(EpsilonMode::Relative(v))),
            "abs" => Ok(EpsilonArg(EpsilonMode::Absolute(v))),
            _ => Err(format!("unknown epsilon mode `{kind}`")),
        }
    }
}

impl std::fmt::Display for EpsilonArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            EpsilonMode::Relative(v) => write!(f, "rel:{v}"),
            EpsilonMode::Absolute(v) => write!(f, "abs:{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomShape {
    pub q: usize,
    pub n: usize,
}

impl FromStr for RandomShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (q, n) = s
            .split_once('x')
            .ok_or_else(|| format!("expected <q>x<n>, got `{s}`"))?;
        let q: usize = q.parse().map_err(|_| format!("bad dimension `{q}`"))?;
        let n: usize = n.parse().map_err(|_| format!("bad sample count `{n}`"))?;
        if q == 0 || n == 0 {
            return Err("dimension and sample count must be positive".into());
        }
        Ok(RandomShape { q, n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryArg {
    Random,
    Train(usize),
    HeldOut(usize),
}

impl FromStr for QueryArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "random" {
            return Ok(QueryArg::Random);
        }
        let (kind, idx) = s
            .split_once(':')
            .ok_or_else(|| format!("expected random, train:<i> or heldout:<i>, got `{s}`"))?;
        let i: usize = idx.parse().map_err(|_| format!("bad index `{idx}`"))?;
        match kind {
            "train" => Ok(QueryArg::Train(i)),
            "heldout" => Ok(QueryArg::HeldOut(i)),
            _ => Err(format!("unknown query kind `{kind}`")),
        }
    }
}
