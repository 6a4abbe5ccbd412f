mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opm_core::verify::DEFAULT_SEED;
use opm_core::OpmError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "opm", version, about = "Partially separable optimization test problems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    fmt: Format,

    /// Seed for the random points used by the verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List problems, optionally filtered by a classification glob such as "QUR2-*".
    List { pattern: Option<String> },
    /// Describe one problem.
    Info {
        name: String,
        #[arg(short)]
        n: Option<usize>,
    },
    /// Evaluate the objective and, on request, its derivatives.
    Eval {
        name: String,
        #[arg(short)]
        n: Option<usize>,
        /// Comma-separated point, or the literal x0 for the standard start.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["x0", "file"])]
        x: Option<String>,
        /// Evaluate at the standard start.
        #[arg(long, conflicts_with = "file")]
        x0: bool,
        /// File holding the point as whitespace-separated numbers.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Outputs to compute, from f, g and H.
        #[arg(long, default_value = "f")]
        want: String,
    },
    /// Run verification suites on one problem or on "all".
    Check {
        target: String,
        #[arg(short)]
        n: Option<usize>,
        /// Comma-separated subset of gradfd, hessfd, cps, sparsity, metadata.
        #[arg(long)]
        suites: Option<String>,
    },
    /// Minimize a problem from its standard start.
    Solve {
        name: String,
        #[arg(short)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "newton")]
        method: MethodArg,
        /// Include per-iteration records.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        grad_tol: Option<f64>,
    },
    /// Print the catalog table for every registered problem.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Newton,
    Pbfgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] OpmError),
    #[error("bad pattern '{pattern}': {reason}")]
    BadPattern { pattern: String, reason: String },
    #[error("{0}")]
    BadInput(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::BadPattern { .. } => "BadPattern",
            CliError::BadInput(_) => "BadInput",
            CliError::Io(_) => "Io",
        }
    }
}

/// What a command wants printed, and whether it counts as success.
pub struct Reply {
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List { pattern } => commands::list(pattern.as_deref(), cli.fmt),
        Command::Info { name, n } => commands::info(&name, n, cli.fmt),
        Command::Eval {
            name,
            n,
            x,
            x0,
            file,
            want,
        } => commands::eval(&name, n, x.as_deref(), x0, file.as_deref(), &want, cli.fmt),
        Command::Check { target, n, suites } => commands::check(&target, n, suites.as_deref(), cli.seed, cli.fmt),
        Command::Solve {
            name,
            n,
            method,
            trace,
            max_iters,
            grad_tol,
        } => commands::solve(&name, n, method, trace, max_iters, grad_tol, cli.fmt),
        Command::Table => commands::table(cli.fmt),
    };
    match result {
        Ok(reply) => {
            print!("{}", reply.text);
            if reply.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::FAILURE
        }
    }
}
