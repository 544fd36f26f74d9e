use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use singlering::montecarlo::OutputFormat;

#[derive(Parser, Debug)]
#[command(name = "singlering", version, about, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = default_threads())]
    pub threads: usize,
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file. Relative paths are resolved against SINGLERING_OUTPUT_DIR
    /// when it is set; without either, output goes to stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Default output directory; each command then writes `<command>.<ext>` there.
    #[arg(
        long,
        global = true,
        env = "SINGLERING_OUTPUT_DIR",
        hide_env_values = true
    )]
    pub output_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Uu,
    Sq,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact Weingarten value, series partial sums and upper bounds.
    Wg(WgArgs),
    /// Exact mixed moment of Haar-unitary entries.
    EntryMoment(EntryArgs),
    /// Exact trace moments of A = U T V with their bound report.
    ExactMoment(ExactArgs),
    /// Exhaustive check of the permutation counting lemma.
    VerifyLemmas(LemmaArgs),
    /// Monte-Carlo trace moments.
    McMoment(McArgs),
    /// Extreme-eigenvalue experiments (deviation rate or tail curve).
    SpectrumExperiment(SpectrumArgs),
}

#[derive(Args, Debug)]
pub struct WgArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    /// Permutation in cycle notation, e.g. "(1 2)(3 4)"; "()" is the identity.
    #[arg(long, default_value = "()")]
    pub pi: String,
    /// Truncation order of the series; defaults to k² + 4.
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Exponent j of the power-type alternative bound.
    #[arg(long, default_value_t = 4)]
    pub j: u32,
    /// Constant K_j of the power-type alternative bound.
    #[arg(long, default_value_t = singlering::weingarten::DEFAULT_KJ)]
    pub kj: f64,
}

#[derive(Args, Debug)]
pub struct EntryArgs {
    #[arg(long)]
    pub n: usize,
    /// Row indices of the plain factors, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub rows: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub cols: Vec<usize>,
    /// Row indices of the conjugated factors.
    #[arg(long, value_delimiter = ',', required = true)]
    pub conj_rows: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub conj_cols: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    /// Singular values: "1,2,3", "const:v:n", "uniform:lo:hi:n",
    /// "random:lo:hi:n" or "file:PATH".
    #[arg(long)]
    pub profile: String,
    /// Seed for random profiles and sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
    /// Slack in the applicability condition k⁶ < (2 - ε) n.
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
}

#[derive(Args, Debug)]
pub struct LemmaArgs {
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct McArgs {
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,
    /// Compare with the exact moment when it is computable; more than
    /// `--max-z` standard errors apart is a failure.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 4.0)]
    pub max_z: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Rate,
    Tail,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// JSON experiment document; overrides every other experiment flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Kind::Rate)]
    pub kind: Kind,
    /// "const:v", "uniform:lo:hi" or "random:lo:hi".
    #[arg(long, default_value = "random:0.5:4")]
    pub family: String,
    /// Dimensions for the rate experiment.
    #[arg(long, value_delimiter = ',', default_value = "64,128,256")]
    pub n_grid: Vec<usize>,
    /// Dimension for the tail experiment.
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,0.1,0.2,0.3,0.5")]
    pub deltas: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    pub replications: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the per-dimension summary (rate) or tail curve (tail).
    /// Defaults to `<output stem>.summary.<ext>` / `<output stem>.tail.<ext>`
    /// next to the records file, or stderr when records go to stdout.
    #[arg(long)]
    pub summary_output: Option<PathBuf>,
}
