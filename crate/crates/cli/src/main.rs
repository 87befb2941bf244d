use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use septamer::DEFAULT_BUDGET;

mod commands;
mod document;
mod error;

use error::{CliError, INPUT_ERROR};

/// Minimal separators, creatures, skinny ladders, certificates and exact
/// independent sets. Graph files are JSON documents or DIMACS `p edge`
/// files; omit FILE or pass `-` to read standard input.
#[derive(Parser, Debug)]
#[command(name = "septamer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph from a named family.
    Gen(GenArgs),
    /// Minimal separators.
    Sep {
        #[command(subcommand)]
        action: SepAction,
    },
    /// Exact ζ of a vertex set, with a witness.
    Zeta {
        file: Option<PathBuf>,
        /// Comma-separated labels or indices.
        #[arg(long)]
        set: String,
    },
    /// Search for or verify a k-creature.
    Creature {
        #[command(subcommand)]
        action: CreatureAction,
    },
    /// Search for a k-skinny-ladder induced minor.
    Ladder {
        #[command(subcommand)]
        action: LadderAction,
    },
    /// Certify every minimal separator and print the breakdown.
    Certify {
        file: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "zeta-max")]
        zeta_max: Option<usize>,
    },
    /// Maximum weight independent set.
    Mwis {
        file: Option<PathBuf>,
        /// JSON array of weights; overrides weights in the document.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Also run the exhaustive solver and compare.
        #[arg(long)]
        brute: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Prism,
    Theta,
    SkinnyLadder,
    Creature,
    Interval,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    family: Family,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long = "path-len", default_value_t = 3)]
    path_len: usize,
    /// Size of the A side of a creature.
    #[arg(long = "a-size", default_value_t = 1)]
    a_size: usize,
    /// Size of the B side of a creature.
    #[arg(long = "b-size", default_value_t = 1)]
    b_size: usize,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SepAction {
    /// One sorted JSON array per separator, in lexicographic order.
    Enum {
        file: Option<PathBuf>,
        #[arg(long)]
        brute: bool,
    },
    Count {
        file: Option<PathBuf>,
        #[arg(long)]
        brute: bool,
    },
    /// The traces N(v) ∩ S over minimal separators S avoiding v.
    Traces {
        file: Option<PathBuf>,
        #[arg(long)]
        vertex: String,
        /// Check the count against n^(k+1).
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CreatureAction {
    Find {
        file: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, env = "SEPTAMER_BUDGET_DEFAULT", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    Verify {
        file: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// JSON object with fields a, b, x, y (labels or indices).
        #[arg(long)]
        witness: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum LadderAction {
    Find {
        file: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, env = "SEPTAMER_BUDGET_DEFAULT", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

pub fn read_input(file: Option<&PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match file {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
        }
    }
    Ok(text)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<error::Status, CliError> {
    use commands::*;
    match cli.command {
        Command::Gen(args) => gen(&args, out),
        Command::Sep { action } => match action {
            SepAction::Enum { file, brute } => sep_enum(file.as_ref(), brute, out),
            SepAction::Count { file, brute } => sep_count(file.as_ref(), brute, out),
            SepAction::Traces { file, vertex, k } => sep_traces(file.as_ref(), &vertex, k, out),
        },
        Command::Zeta { file, set } => zeta(file.as_ref(), &set, out),
        Command::Creature { action } => match action {
            CreatureAction::Find { file, k, budget } => creature_find(file.as_ref(), k, budget, out),
            CreatureAction::Verify { file, k, witness } => creature_verify(file.as_ref(), k, &witness, out),
        },
        Command::Ladder { action } => match action {
            LadderAction::Find { file, k, budget } => ladder_find(file.as_ref(), k, budget, out),
        },
        Command::Certify { file, k, zeta_max } => certify(file.as_ref(), k, zeta_max, out),
        Command::Mwis { file, weights, brute } => mwis(file.as_ref(), weights.as_ref(), brute, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(status) => status.code(),
        Err(CliError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("septamer: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
