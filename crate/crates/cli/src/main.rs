use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "sigpow",
    version,
    about = "Signed distances, powers and balance of signed graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, size, connectivity, diameter, balance and compatibility.
    Info { file: PathBuf },
    /// Signed distance matrices as tab-separated integers.
    Distance {
        #[arg(long, value_enum, default_value_t = DistanceMode::Both)]
        mode: DistanceMode,
        file: PathBuf,
    },
    /// The n-th power as a graph file.
    Power {
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = PowerMode::Unique)]
        mode: PowerMode,
        file: PathBuf,
    },
    /// The associated signed complete graph as a graph file.
    Complete {
        #[arg(long, value_enum)]
        mode: CompleteArg,
        file: PathBuf,
    },
    /// Balance with a switching labeling or a negative cycle.
    Balance { file: PathBuf },
    /// Distance compatibility, or the first incompatible pair with witnesses.
    Compatible { file: PathBuf },
    /// Adjacency spectrum as value / multiplicity rows.
    Spectrum {
        /// Use the associated complete graph K^{D±} instead of the graph.
        #[arg(long)]
        complete_pm: bool,
        #[arg(long, default_value_t = sigpow::spectra::DEFAULT_TOL)]
        tol: f64,
        file: PathBuf,
    },
    /// Lift a path of the graph into its unique n-th power.
    Lift {
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Vertices separated by spaces or commas.
        #[arg(long)]
        path: String,
        file: PathBuf,
    },
    /// Project a path of the n-th power back to a walk of the graph.
    Project {
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Side::Max)]
        mode: Side,
        #[arg(long)]
        path: String,
        file: PathBuf,
    },
    /// Randomized checking of the statements about powers.
    Verify {
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        /// Directory receiving counterexample graphs and a manifest.
        #[arg(long, default_value = "counterexamples")]
        bundle: PathBuf,
    },
    /// Emit a seeded corpus described by a key=value spec file.
    Generate { spec: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    Max,
    Min,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerMode {
    Max,
    Min,
    Unique,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompleteArg {
    Max,
    Min,
    Pm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Max,
    Min,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = commands::run(cli.command, &mut out);
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}: {}", e.name(), e);
            if let Some(extra) = e.detail() {
                eprintln!("{extra}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
