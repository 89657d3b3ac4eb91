//! `pclang`: state-complexity experiments on prefix-closed languages.

mod commands;
mod harness;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "pclang", version, about = "State-complexity experiments on prefix-closed regular languages")]
struct Cli {
    /// Report format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply an operation to automaton files.
    Ops {
        /// complement, intersection, union, concat, star or reverse.
        operation: String,
        /// One input file, two for binary operations.
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        /// Use the nondeterministic construction even for deterministic inputs.
        #[arg(long)]
        nfa: bool,
        /// Write the result automaton here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the result in DOT format.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Check that a witness attains a bound, e.g. `bound union-isc 3 4`.
    Bound {
        /// <operation>-<isc|nsc>, e.g. concat-nsc.
        theorem: String,
        /// `m n` for binary operations, `n` otherwise.
        #[arg(required = true, num_args = 1..=2)]
        params: Vec<usize>,
    },
    /// Check, search or emit fooling-set certificates.
    Fooling {
        #[command(subcommand)]
        action: FoolingAction,
    },
    /// Build (and optionally validate) a witness family instance.
    Witness {
        family: String,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Write the automata to `<file>` (binary families: `<file>.k`, `<file>.l`).
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        validate: bool,
        /// Candidate budget for reconstructed families.
        #[arg(long)]
        budget: Option<u64>,
        /// Skip the seed candidates of reconstructed families.
        #[arg(long)]
        no_seeds: bool,
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Tabulate the state complexity of star over all minimal DFAs.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Count automata differing by a renaming of symbols separately.
        #[arg(long)]
        no_alphabet_perm: bool,
        /// Run on a single thread.
        #[arg(long)]
        serial: bool,
        /// Write the table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the sizes of minimal automata for a language file.
    Complexity { input: PathBuf },
    /// Decide whether a language file is prefix-closed.
    CheckPrefixClosed { input: PathBuf },
    /// Run randomized consistency checks between constructions.
    Random {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_states: usize,
        #[arg(long, default_value_t = 2)]
        max_symbols: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FoolingAction {
    /// Verify a certificate against a language.
    Check { language: PathBuf, certificate: PathBuf },
    /// Search for a large certificate.
    Search {
        language: PathBuf,
        #[arg(long, default_value_t = 64)]
        max_pairs: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Search for an (A, B, u, v) certificate.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the certificate of a nondeterministic bound, e.g. `emit union-nsc --m 3 --n 3`.
    Emit {
        family: String,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.format) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(output::exit_code(&err))
        }
    }
}
