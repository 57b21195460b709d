//! `palwidth`: JSON reports for palindromic width, commutator-length
//! certificates, palindromic decompositions and nilpotent-product bounds.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use palwidth_core::pal_width::DEFAULT_STATE_CAP;
use palwidth_core::{Error, Notion};

#[derive(Parser, Debug)]
#[command(name = "palwidth", version, about = "Palindromic and commutator width reports")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Ceiling on the |G|^2 pair states explored by the width search.
    #[arg(long, global = true, env = "PALWIDTH_STATE_CAP", default_value_t = DEFAULT_STATE_CAP)]
    pub cap: usize,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Add wall-clock time to the report (makes output non-deterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact palindromic width of a finite group given as a JSON spec file.
    Pw {
        spec: PathBuf,
        #[arg(long, default_value = "word")]
        notion: Notion,
    },
    /// Δ and the commutator-length lower bound for an element of F_n ≀ K.
    Qh {
        /// Element text `[w1; …; wl] k`.
        #[arg(required_unless_present = "q_index", conflicts_with = "q_index")]
        element: Option<String>,
        /// Use `q_j` instead of an explicit element.
        #[arg(long)]
        q_index: Option<u64>,
        /// JSON spec of the top group K (default: S3 on s1, s2, c).
        #[arg(long)]
        group: Option<PathBuf>,
        /// Rank of the free base group.
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Palindromic decomposition of an element of F_2 ≀ S_3.
    Decompose { element: String },
    /// Width bounds for a 2-nilpotent product of abelian groups.
    Nilprod { specs: PathBuf },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 3,
        Error::Invariant(_) => 4,
        _ => 2,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::Invariant(_) => "invariant",
        _ => "input",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Pw { spec, notion } => report::pw(spec, *notion, &cli.global),
        Command::Qh {
            element,
            q_index,
            group,
            rank,
        } => report::qh(element.as_deref(), *q_index, group.as_deref(), *rank),
        Command::Decompose { element } => report::decompose(element),
        Command::Nilprod { specs } => report::nilprod(specs, &cli.global),
    };
    match outcome {
        Ok(mut out) => {
            if cli.global.timing {
                out.set_wall_time(start.elapsed());
            }
            println!("{}", out.render(cli.global.pretty));
            if out.verified() {
                ExitCode::SUCCESS
            } else {
                eprintln!("palwidth: verification failed");
                ExitCode::from(4)
            }
        }
        Err(err) => {
            let diag = serde_json::json!({ "error": error_kind(&err), "message": err.to_string() });
            eprintln!("{diag}");
            ExitCode::from(exit_code(&err))
        }
    }
}
