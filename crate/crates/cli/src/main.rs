mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "genus", version, about = "Minimum and maximum genus of graphs, Milgram scaffolds and cubic-graph census")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub output: Format,

    /// Search-node budget for each minimum-genus computation.
    #[arg(long, env = "GENUS_BUDGET", global = true, default_value_t = genus_core::genus::DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,

    /// Seed for the randomized maximum-genus tree search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads; defaults to the number of cores.
    #[arg(long, env = "GENUS_WIDTH", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub width: Option<u64>,

    /// Omit timings and search counters so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti number and structural invariants.
    Betti(GraphArgs),
    /// Exact minimum genus with a witness rotation system.
    Genus {
        #[command(flatten)]
        graph: GraphArgs,
        /// Stop once the genus is known to be at least this value.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Maximum genus with a Xuong-tree certificate.
    Maxgenus(GraphArgs),
    /// Planarity test.
    Planar(GraphArgs),
    /// Print a graph as an edge list or graph6.
    Show {
        graph: String,
        #[arg(long, value_enum, default_value = "edges")]
        format: ShowFormat,
    },
    /// Build M_k and verify its vertex count, Betti number, genus and maximum genus.
    Milgram {
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=6))]
        k: u8,
    },
    /// Genus of every chording of the Milgram host for k, with overlap certificates.
    Chordings {
        #[arg(long, value_parser = clap::value_parser!(u8).range(4..=6))]
        k: u8,
    },
    /// Genus census of triangle-free 2-connected cubic graphs.
    Census {
        /// Order for the built-in generator.
        #[arg(long, conflicts_with = "ingest", required_unless_present = "ingest")]
        n: Option<usize>,
        /// graph6 file to read instead of generating.
        #[arg(long)]
        ingest: Option<PathBuf>,
        /// Order expected in the ingested file (defaults to the first graph's order).
        #[arg(long, requires = "ingest")]
        order: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
        /// Resumable checkpoint file, written every 10^4 graphs.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Upper bounds on the least Betti number of a genus-k graph.
    Gtable {
        #[arg(long, default_value_t = 11)]
        kmax: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct GraphArgs {
    /// Builtin name or path to an edge-list or graph6 file.
    pub graph: String,
    /// Exit with status 1 unless the result equals this value.
    #[arg(long)]
    pub expect: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShowFormat {
    Edges,
    Graph6,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    #[cfg(feature = "parallel")]
    if let Some(w) = cli.width {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global() {
            eprintln!("genus: cannot size the worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(commands::run(&cli))
}
