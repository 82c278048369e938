//! `dtorsion`: discrete torsion computations on finite groups from the command line.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "dtorsion", version, about = "Discrete torsion, orbifold Euler characteristics and equivariant Cech data")]
struct Cli {
    /// Emit a versioned JSON document instead of tab-separated text.
    #[arg(long, global = true)]
    json: bool,
    /// Print wall-clock time to standard error.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ClassArgs {
    /// Class index in enumeration order (default 0, the trivial class).
    #[arg(long, conflicts_with = "cocycle")]
    class: Option<usize>,
    /// Read the cocycle from a file instead.
    #[arg(long, value_name = "FILE")]
    cocycle: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, exponent, conjugacy classes and abelianization.
    Info { group: String },
    /// H^p(G, U(1)), or H^p(G, Z/N) with --modulus.
    Cohomology {
        group: String,
        #[arg(short = 'p', long = "degree", default_value_t = 2)]
        p: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
        /// Also compute H^{p+1}(G, Z) from the integral bar complex.
        #[arg(long)]
        oracle: bool,
    },
    /// Canonical cocycle representatives of H^p(G, U(1)).
    Cocycles {
        group: String,
        #[arg(short = 'p', long = "degree", default_value_t = 2)]
        p: usize,
        #[arg(long)]
        class: Option<usize>,
    },
    /// Discrete torsion phases on every commuting pair.
    Phases {
        group: String,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// The torus partition sum over twisted sectors.
    Partition {
        group: String,
        #[command(flatten)]
        class: ClassArgs,
        /// Group sectors by simultaneous conjugation.
        #[arg(long)]
        quotient_conjugation: bool,
    },
    /// Membrane phases of a 3-cocycle on pairwise commuting triples.
    Membrane {
        group: String,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Euler characteristic and both orbifold Euler formulas of a G-complex.
    Euler { group: String, complex: PathBuf },
    /// Inertia decomposition of a G-complex.
    Inertia { group: String, complex: PathBuf },
    /// The twisted regular representation and its decomposition.
    Projrep {
        group: String,
        #[command(flatten)]
        class: ClassArgs,
        /// Dump every matrix as (row, col, k/N) triples.
        #[arg(long)]
        emit_matrices: bool,
    },
    /// Check or compare equivariant Cech data.
    #[command(subcommand)]
    Cech(CechCommand),
}

#[derive(Subcommand, Debug)]
enum CechCommand {
    /// Check every relation of the structures in a file.
    Verify { file: PathBuf },
    /// Difference of the equivariant structures in two files on the same site.
    Diff { first: PathBuf, second: PathBuf },
}

fn dispatch(cmd: Vec<String>, command: &Command) -> CliResult {
    use commands::*;
    let class = |g: &dtorsion::FiniteGroup, p: usize, c: &ClassArgs| select(g, p, c.class, c.cocycle.as_deref());
    match command {
        Command::Info { group } => info(cmd, &load_group(group)?),
        Command::Cohomology { group, p, modulus, oracle } => cohomology(cmd, &load_group(group)?, *p, *modulus, *oracle),
        Command::Cocycles { group, p, class } => cocycles(cmd, &load_group(group)?, *p, *class),
        Command::Phases { group, class: c } => {
            let g = load_group(group)?;
            phases(cmd, &g, &class(&g, 2, c)?)
        }
        Command::Partition { group, class: c, quotient_conjugation } => {
            let g = load_group(group)?;
            partition(cmd, &g, &class(&g, 2, c)?, *quotient_conjugation)
        }
        Command::Membrane { group, class: c } => {
            let g = load_group(group)?;
            membrane(cmd, &g, &class(&g, 3, c)?)
        }
        Command::Euler { group, complex } => euler(cmd, &load_complex(&load_group(group)?, complex)?),
        Command::Inertia { group, complex } => inertia(cmd, &load_complex(&load_group(group)?, complex)?),
        Command::Projrep { group, class: c, emit_matrices } => {
            let g = load_group(group)?;
            projrep(cmd, &g, &class(&g, 2, c)?, *emit_matrices)
        }
        Command::Cech(CechCommand::Verify { file }) => cech_verify(cmd, &load_cech(file)?),
        Command::Cech(CechCommand::Diff { first, second }) => cech_diff(cmd, &load_cech(first)?, &load_cech(second)?),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    // --json and --timing are not echoed
    let cmd: Vec<String> = argv[1..].iter().filter(|a| *a != "--json" && *a != "--timing").cloned().collect();
    let outcome = dispatch(cmd, &cli.command);
    if cli.timing {
        eprintln!("timing\t{:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    let emit = |r: &report::Report| {
        let text = if cli.json { r.to_json() } else { r.to_text() };
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes());
        let _ = out.flush();
    };
    match outcome {
        Ok(r) => {
            emit(&r);
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(r)) => {
            emit(&r);
            eprintln!("error: a checked relation failed");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
