//! `bcolor`: solve, generate, fuzz, inspect and verify b-coloring instances.
//!
//! Exit codes: 0 yes/ok, 1 no (or a failed check), 2 usage or input errors,
//! 3 an internal invariant of a solver was violated.

mod cmd;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bcolor", version, about = "Exact b-coloring solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a graph has a b-coloring with exactly k colors.
    Solve(SolveArgs),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Cross-check every solver against brute force on random graphs.
    Fuzz(FuzzArgs),
    /// Print structural parameters of a graph.
    Params(ParamsArgs),
    /// Check that a coloring file is a b-coloring of a graph.
    Verify(VerifyArgs),
}

/// Graph given either as `--input FILE` or as the first positional argument.
/// Built-in fixture names (`G_IM`, `T_PIV`, `T_NP`, `T_PIV18`, `T_NP18`) are
/// accepted when no such file exists.
#[derive(Args, Debug)]
pub struct InputArg {
    #[arg(long = "input", value_name = "GRAPH")]
    flag: Option<PathBuf>,
    #[arg(value_name = "GRAPH", conflicts_with = "flag")]
    positional: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Caps {
    /// Largest graph handed to brute force.
    #[arg(long = "cap-brute-n", default_value_t = 16)]
    brute_n: usize,
    /// State budget of the tree-decomposition DP.
    #[arg(long = "cap-states", default_value_t = bcolor::smallk::DEFAULT_STATE_BUDGET)]
    states: usize,
    /// Largest co-cluster modulator searched for.
    #[arg(long = "cap-cocluster-s", default_value_t = bcolor::cocluster::DEFAULT_S_CAP)]
    cocluster_s: usize,
    /// Largest modulator the co-cluster solver enumerates signatures for.
    #[arg(long = "cap-cocluster-p", default_value_t = bcolor::cocluster::DEFAULT_P_CAP)]
    cocluster_p: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Auto,
    Brute,
    Twdp,
    Fen,
    Cocluster,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    input: InputArg,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Witness path; defaults to `<input>.k<k>.bcol` next to the input.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Uniform random labelled tree.
    Tree {
        #[arg(long)]
        n: usize,
    },
    /// Pivot with two gate candidates and k - 2 outer candidates.
    PivotedTree {
        #[arg(long)]
        k: usize,
        /// One extra leaf on a gate, which breaks pivotedness.
        #[arg(long)]
        unpivot: bool,
        /// Randomize the split between gates and the leaf padding.
        #[arg(long)]
        vary: bool,
    },
    /// Random tree plus `extra` edges: feedback edge number exactly `extra`.
    Fen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        extra: usize,
    },
    /// Complete multipartite graph plus `s` modulator vertices.
    Cocluster {
        #[arg(long)]
        parts: usize,
        #[arg(long)]
        max_side: usize,
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// Graph built around a known k-b-coloring.
    Planted {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.2)]
        density: f64,
        /// Where the planted coloring goes; defaults to `<out>.bcol`.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long = "max-n", default_value_t = 10)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for reproducer dumps.
    #[arg(long, default_value = "fuzz-dumps")]
    out: PathBuf,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[command(flatten)]
    input: InputArg,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "input", value_name = "GRAPH")]
    input: Option<PathBuf>,
    /// `GRAPH COLORING`, or just `COLORING` with `--input`.
    #[arg(value_name = "FILE", num_args = 1..=2)]
    files: Vec<PathBuf>,
    /// Number of colors; defaults to the coloring file's header.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    json: bool,
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub err: anyhow::Error,
}

impl CliError {
    pub fn usage(err: impl Into<anyhow::Error>) -> Self {
        CliError { code: 2, err: err.into() }
    }

    pub fn invariant(err: impl Into<anyhow::Error>) -> Self {
        CliError { code: 3, err: err.into() }
    }
}

pub type CliResult = Result<ExitCode, CliError>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("BCOLOR_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd::solve(a),
        Command::Gen(a) => cmd::gen(a),
        Command::Fuzz(a) => cmd::fuzz(a),
        Command::Params(a) => cmd::params(a),
        Command::Verify(a) => cmd::verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e.err);
            ExitCode::from(e.code)
        }
    }
}
