//! `midspec`: batch front end for middle-levels graph spectra, exact
//! eigenbasis blocks, certification checks, Hamiltonian cycle search, and
//! edge-list export.
//!
//! Exit codes: 0 success / all checks pass, 1 usage or internal error,
//! 2 verification failure or search exhaustion. Every command is
//! deterministic: identical invocations produce byte-identical stdout and
//! files, except for the `elapsed_ms` report field, which consumers are
//! expected to drop before comparing.

mod commands;
mod render;
mod report;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "midspec",
    version,
    about = "Spectra, eigenbases, and Hamiltonian cycles of middle-levels graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for tables and reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write the primary payload to PATH instead of stdout
    /// (for `hamilton` this names the certificate file).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Suppress secondary output (info lines and the elapsed-time line).
    #[arg(long, global = true)]
    pub quiet: bool,

    /// Override the default k caps of `verify` and `eigenbasis`, clamped
    /// to the library's hard limits.
    #[arg(long, global = true, env = "MIDSPEC_MAX_K", value_name = "K")]
    pub max_k: Option<u32>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the spectrum of one middle-levels or Johnson graph.
    Spectrum {
        /// Middle-levels parameter k, selecting the graph on the two
        /// middle layers of the (2k+1)-cube.
        #[arg(long)]
        k: Option<u32>,
        /// Graph family.
        #[arg(long, value_enum, default_value_t = SpectrumFamily::Middle)]
        family: SpectrumFamily,
        /// Ground-set size (johnson family).
        #[arg(long)]
        n: Option<u32>,
        /// Subset size (johnson family).
        #[arg(long)]
        m: Option<u32>,
    },
    /// Print the eigenvalue/multiplicity grid for k = 1..=kmax.
    Table {
        /// Largest middle-levels parameter to include.
        #[arg(long)]
        kmax: u32,
        /// Append the concatenated multiplicity sequence and compare its
        /// nine-entry prefix against OEIS A050166.
        #[arg(long)]
        oeis: bool,
    },
    /// Run exact certification checks on the middle-levels graph.
    Verify {
        /// Middle-levels parameter k.
        #[arg(long)]
        k: u32,
        /// Checks to run (default: all).
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<CheckKind>,
        /// Exit 0 even when some requested checks are skipped as over cap.
        #[arg(long)]
        allow_skip: bool,
    },
    /// Write one exact eigenbasis block in matrix text form.
    Eigenbasis {
        /// Middle-levels parameter k.
        #[arg(long)]
        k: u32,
        /// Constraint-kernel parameter r (eigenvalue k+1-r), 0 <= r <= k.
        #[arg(long)]
        r: u32,
        /// Emit the reflected block for eigenvalue -(k+1-r) instead.
        #[arg(long)]
        negative: bool,
    },
    /// Search for a Hamiltonian cycle on the middle-levels graph.
    Hamilton {
        /// Middle-levels parameter k.
        #[arg(long)]
        k: u32,
        /// Node-expansion budget (default 10000000).
        #[arg(long, env = "MIDSPEC_BUDGET")]
        budget: Option<u64>,
        /// Include subset labels in the certificate (the revolving-door
        /// view: consecutive labels differ by adding or removing one
        /// element).
        #[arg(long)]
        labels: bool,
    },
    /// Write a graph as an edge list.
    Export {
        /// Graph family.
        #[arg(long, value_enum)]
        family: ExportFamily,
        /// Middle-levels parameter (middle family).
        #[arg(long)]
        k: Option<u32>,
        /// Dimension (hypercube) or ground-set size (johnson).
        #[arg(long)]
        n: Option<u32>,
        /// Subset size (johnson family).
        #[arg(long)]
        m: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumFamily {
    Middle,
    Johnson,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFamily {
    Hypercube,
    Middle,
    Johnson,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum CheckKind {
    Eigen,
    Msq,
    Moments,
    Rank,
    Charpoly,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                // --help and --version are not failures.
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
