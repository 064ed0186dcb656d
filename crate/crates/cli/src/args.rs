use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::input::InputFormat;

#[derive(Debug, Parser)]
#[command(
    name = "bei",
    version,
    about = "Corona products, cutsets and binomial edge ideal invariants"
)]
pub struct Cli {
    /// Largest vertex count accepted by cutset enumeration.
    #[arg(long, global = true, env = "BEI_BOUND", default_value_t = bei_core::cutsets::DEFAULT_BOUND)]
    pub bound: usize,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph or corona product and print it.
    Construct(ConstructArgs),
    /// Enumerate all cutsets.
    Cutsets(CutsetsArgs),
    /// Decide unmixedness / accessibility, or test a given vertex set.
    Check(CheckArgs),
    /// Evaluate closed-form invariants of a corona family.
    Invariants(InvariantsArgs),
    /// Build and verify a diameter-reduction gadget.
    Gadget(GadgetArgs),
    /// Scan graph6 lines and report unmixed/accessible verdicts.
    Scan(ScanArgs),
    /// Re-encode a graph, or emit a CAS script for it.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Jsonl,
    Dot,
    Graph6,
    Edgelist,
    Cas,
}

/// Where the graph comes from: a positional name/graph6, `--corona`, or a file.
#[derive(Debug, Args)]
pub struct GraphInput {
    /// Named graph (Kn, Pn, Cn) or inline graph6.
    pub graph: Option<String>,

    /// Input file ("-" for stdin): graph6, edge list, or corona spec JSON.
    #[arg(short, long)]
    pub input: Option<String>,

    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub input_format: InputFormat,

    /// Build `BASE ∘_L PENDANT` from two named or graph6 graphs.
    #[arg(long, num_args = 2, value_names = ["BASE", "PENDANT"])]
    pub corona: Option<Vec<String>>,

    /// Attachment set L as comma-separated base vertices (default: all).
    #[arg(long, requires = "corona")]
    pub attach: Option<String>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
}

#[derive(Debug, Args)]
pub struct CutsetsArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Only list cutsets with at most this many vertices.
    #[arg(long)]
    pub size_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long)]
    pub unmixed: bool,
    #[arg(long)]
    pub accessible: bool,
    /// Test whether this vertex list is a cutset (and, for coronas, its structure).
    #[arg(long)]
    pub cutset: Option<String>,
    /// Find a removal chain for this cutset.
    #[arg(long)]
    pub chain: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    LCorona,
    FullCorona,
    CmClosed,
    Path,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Order of the complete base or path.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of attached copies (l-corona).
    #[arg(long)]
    pub l: Option<usize>,
    /// Cohen-Macaulay closed base graph (cm-closed).
    #[arg(long)]
    pub base: Option<String>,
    /// Pendant block graph, named or graph6.
    #[arg(long, conflicts_with = "pendant_json")]
    pub pendant_block_graph: Option<String>,
    /// Pendant invariants as JSON.
    #[arg(long)]
    pub pendant_json: Option<String>,
    /// Skip the dimension oracle cross-check.
    #[arg(long)]
    pub no_oracle: bool,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
    #[arg(long, value_enum, default_value_t = DialectArg::M2)]
    pub dialect: DialectArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GadgetKind {
    D2,
    D3,
}

#[derive(Debug, Args)]
pub struct GadgetArgs {
    #[arg(value_enum)]
    pub kind: GadgetKind,
    #[command(flatten)]
    pub input: GraphInput,
    /// Check diameter, accessibility transfer and distance cases.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DialectArg {
    M2,
    Singular,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// graph6 lines, one graph per line ("-" for stdin).
    #[arg(short, long, default_value = "-")]
    pub input: String,
    /// Keep only these diameters (comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub diameter: Option<Vec<usize>>,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Write a CAS script for every accessible graph into this directory.
    #[arg(long)]
    pub cas_dir: Option<String>,
    #[arg(long, value_enum, default_value_t = DialectArg::M2)]
    pub dialect: DialectArg,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, value_enum, default_value_t = OutFormat::Graph6)]
    pub out: OutFormat,
    #[arg(long, value_enum, default_value_t = DialectArg::M2)]
    pub dialect: DialectArg,
}
