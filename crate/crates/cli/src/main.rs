mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "nfgdual", version, about = "Normal factor graphs, duality and MacWilliams identities over prime fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Limit on enumerated configurations, codewords or table entries.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    pub cap: u128,
    /// Row and column order of state-indexed matrices, as comma-separated labels.
    #[arg(long = "state-order", global = true, value_delimiter = ',')]
    pub state_order: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Linear block codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Normal factor graphs.
    #[command(subcommand)]
    Nfg(NfgCmd),
    /// Weight adjacency matrices.
    #[command(subcommand)]
    Wam(WamCmd),
    /// Convolutional codes given by encoders or trellis sections.
    #[command(subcommand)]
    Conv(ConvCmd),
    /// Fourier transform identities.
    #[command(subcommand)]
    Xform(XformCmd),
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Input JSON file; `-` or nothing reads standard input.
    pub input: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Exact,
    Complete,
    Hamming,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Subcode,
    Projection,
    Truncated,
    Rtruncated,
    Tailbiting,
}

#[derive(Subcommand, Debug)]
pub enum CodeCmd {
    /// The dual code.
    Dual(Input),
    /// Weight generating function.
    Wgf {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = KindArg::Hamming)]
        kind: KindArg,
    },
    /// Hamming weight distribution by enumeration.
    Weights(Input),
    /// MacWilliams transform of the weight generating function, checked against the dual.
    Macwilliams {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = KindArg::Hamming)]
        kind: KindArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum NfgCmd {
    /// Partition function.
    Eval {
        #[command(flatten)]
        input: Input,
        /// Apply the replication rules first instead of rejecting non-normal graphs.
        #[arg(long)]
        normalize: bool,
    },
    /// Dual graph: transformed factors and sign inverters on internal edges.
    Dualize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        normalize: bool,
    },
    /// Checks that the dual graph realizes the transformed partition function.
    VerifyDuality {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum WamCmd {
    /// Weight adjacency matrix of a section or encoder.
    Compute {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = KindArg::Hamming)]
        kind: KindArg,
    },
    /// Matrix power, optionally modulo x^(dmax+1).
    Power {
        #[command(flatten)]
        input: Input,
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        dmax: Option<u32>,
    },
    /// MacWilliams transform of a weight adjacency matrix.
    Macwilliams {
        #[command(flatten)]
        input: Input,
        /// Accepted for symmetry with the other commands; must match the matrix kind.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConvCmd {
    /// Trellis section of an encoder.
    Section(Input),
    /// Dual section.
    Dual(Input),
    /// Time-reversed section.
    Reverse(Input),
    /// Block code from N sections with a boundary rule.
    Terminate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long = "N")]
        n: usize,
        /// Also enumerate the code and compare with the matrix-power enumerator.
        #[arg(long)]
        verify: bool,
    },
    /// Free distance spectrum up to weight dmax.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dmax: u32,
    },
    /// Tail-biting spectrum of length N divided by N, up to weight dmax.
    Normalized {
        #[command(flatten)]
        input: Input,
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        dmax: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum XformCmd {
    /// Checks the Fourier transform identities on (Z_p)^dim.
    VerifyIdentities {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(commands::run(cli))
}
