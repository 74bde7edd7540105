//! `ltop`: command-line access to length-metric computations on weighted
//! graphs and lazily generated infinite graphs.

mod commands;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "ltop", version, about = "Length-metric analysis of weighted graphs and their exhaustions")]
pub struct Cli {
    /// Report file; defaults to $LTOP_OUT_DIR/<command>.json, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed recorded in the report provenance.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// A finite graph: either a JSON file or a generator truncated at a level.
#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// Graph JSON file with `vertices` and `edges`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Generator invocation `name?param=value&...`.
    #[arg(long = "gen")]
    pub generator: Option<String>,
    /// Truncation level, required with --gen.
    #[arg(long)]
    pub level: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two points: vertex ids or `edge:ID@OFFSET`.
    Dist {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// With --gen: distances at each of these levels instead of one.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<usize>>,
    },
    /// Vertex classes of a truncation at distance tolerance tau.
    Quotient {
        #[arg(long = "gen")]
        generator: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        tau: f64,
    },
    /// Frontier clustering across levels, as JSON and CSV.
    Boundary {
        #[arg(long = "gen")]
        generator: String,
        /// Replace lengths by a Floyd decay: pow2, pow4 or exp:<lambda>.
        #[arg(long)]
        floyd: Option<String>,
        /// Basepoint for --floyd; defaults to the generator's own.
        #[arg(long, requires = "floyd")]
        basepoint: Option<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<usize>,
        #[arg(long)]
        depth: usize,
        /// Resolutions; defaults to 2^-1, ..., 2^-10.
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        /// CSV file; defaults to the report path with extension .csv.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Truncation of a generator with Floyd lengths.
    Floyd {
        #[arg(long = "gen")]
        generator: String,
        /// Decay function: pow2, pow4 or exp:<lambda>.
        #[arg(long = "f", alias = "floyd")]
        decay: String,
        #[arg(long)]
        basepoint: Option<String>,
        #[arg(long)]
        level: usize,
    },
    /// Normal-spanning-tree lengths for a connected graph.
    Nst {
        #[command(flatten)]
        source: GraphSource,
        /// Root vertex; defaults to the first vertex.
        #[arg(long)]
        root: Option<String>,
    },
    /// Column distances of the graph built over a finite metric sample.
    Lind {
        /// Sample file with `points` and `distances`.
        #[arg(long)]
        metric: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Fundamental cycle basis.
    Cyclebasis {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Geodetic circuits summing to a cycle-space element.
    Geodetic {
        #[command(flatten)]
        source: GraphSource,
        /// Edge ids of the element.
        #[arg(long, value_delimiter = ',', required = true)]
        element: Vec<String>,
    },
    /// Euler tour of a connected graph with even degrees.
    Euler {
        #[command(flatten)]
        source: GraphSource,
        /// Include the circuit insertion log.
        #[arg(long)]
        log: bool,
    },
    /// Hamilton cycle of the line graph read off an Euler tour.
    HamiltonFromEuler {
        #[command(flatten)]
        source: GraphSource,
        /// Euler tour JSON to convert; computed when absent.
        #[arg(long)]
        tour: Option<PathBuf>,
    },
    /// Line graph with lengths (l(e) + l(f)) / 2.
    Linegraph {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Catalog of generators and their parameters.
    GenList,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.code() as u8);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.code() as u8)
        }
    }
}
