//! `graphop`: enumerate multigraph classes, compute invariant-tensor kernels,
//! discover and verify dimension-dependent identities, and evaluate
//! operators on polynomials.

mod commands;
mod report;

use std::fs::File;
use std::io::{BufWriter, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use graphop::identity::{DEFAULT_WITNESS_BUDGET, MIN_VERIFY_TRIALS};
use graphop::tensor::MAX_CELLS_ENV;
use graphop::{CellLimit, Error};

use commands::IdentityOptions;
use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(
    name = "graphop",
    version,
    about = "Multigraph-indexed equivariant differential operators"
)]
struct Cli {
    /// Output format; text on a terminal, json otherwise.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Seed for randomized commands (required by them).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Ceiling on evaluation-matrix cells.
    #[arg(long, global = true, env = MAX_CELLS_ENV, default_value_t = CellLimit::default().0)]
    max_cells: u64,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List multigraph classes with a given number of edges.
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = 0)]
        max_isolated: usize,
    },
    /// Kernel of the pairing tensors on 2p indices in dimension d.
    Kernel {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        d: usize,
    },
    /// Relations among the p-edge operators that hold in dimension d.
    Identities {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: usize,
        /// Check each relation on random jets (needs --seed).
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = MIN_VERIFY_TRIALS)]
        trials: usize,
        /// Search for a nonzero value in this larger dimension.
        #[arg(long, value_name = "D_PRIME")]
        witness: Option<usize>,
        /// Evaluations allowed per witness search.
        #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
        witness_budget: usize,
    },
    /// Evaluate a graph or operator (JSON file) on a polynomial at a point.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        poly: String,
        /// Comma-separated coordinates, e.g. "1,0" or "1/2,-3".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        beta0: usize,
    },
    /// Regenerate the small-class census and the 3-edge degree-vector census.
    Tables,
    /// Exact rank of the p-edge operators on random jets (needs --seed).
    Independence {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        max_isolated: usize,
        #[arg(long)]
        trials: Option<usize>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceGuard { .. } => 3,
        Error::VerificationFailure { .. } | Error::WitnessNotFound { .. } => 4,
        _ => 2,
    }
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64, Error> {
    seed.ok_or_else(|| Error::InvalidInput(format!("{what} is randomized and needs --seed")))
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let limit = CellLimit(cli.max_cells);
    match &cli.command {
        Command::Enumerate {
            edges,
            connected,
            max_isolated,
        } => commands::enumerate(*edges, *connected, *max_isolated, limit),
        Command::Kernel { p, d } => commands::kernel_cmd(*p, *d, limit),
        Command::Identities {
            d,
            p,
            verify,
            trials,
            witness,
            witness_budget,
        } => {
            let verify = if *verify {
                Some((*trials, require_seed(cli.seed, "identities --verify")?))
            } else {
                None
            };
            let opts = IdentityOptions {
                verify,
                witness: witness.map(|dp| (dp, *witness_budget)),
            };
            commands::identities(*d, *p, &opts, limit)
        }
        Command::Eval {
            graph,
            poly,
            point,
            d,
            beta0,
        } => commands::eval(graph, poly, point, *d, *beta0),
        Command::Tables => Ok(commands::tables()),
        Command::Independence {
            p,
            d,
            max_isolated,
            trials,
        } => {
            let seed = require_seed(cli.seed, "independence")?;
            commands::independence(*p, *d, *max_isolated, *trials, seed, limit)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &cli.out {
        Some(path) => {
            let format = cli.format.unwrap_or(Format::Json);
            File::create(path).and_then(|f| {
                let mut w = BufWriter::new(f);
                report.render(format, &mut w)?;
                w.flush()
            })
        }
        None => {
            let stdout = std::io::stdout();
            let default = if stdout.is_terminal() {
                Format::Text
            } else {
                Format::Json
            };
            let mut lock = stdout.lock();
            report.render(cli.format.unwrap_or(default), &mut lock)
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(2)
        }
    }
}
