//! `veronese`: normal bundles of Veronese embeddings from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid mathematical
//! input, 3 I/O or format error.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use veronese_core::verify::Scope;

#[derive(Parser, Debug)]
#[command(name = "veronese", version, about = "Exact splitting types of Veronese normal bundles")]
struct Cli {
    /// Output format; JSON is canonical, tables are a derived view.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Line,
    Rnc,
    File,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Fast,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Presentation, rank, degree, slope, Hilbert polynomial and Chern class of the normal bundle.
    Normal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Splitting type of the normal bundle restricted to sampled rational curves.
    Restrict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = CurveKind::Line)]
        curve: CurveKind,
        /// Curve file (JSON), required with `--curve file`.
        #[arg(long, required_if_eq("curve", "file"))]
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        /// Base seed; sample `k` uses `seed + k`.
        #[arg(long, env = "VERONESE_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Rank, degree and slope of each bundle in the K-tower.
    Slopes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Run the verification corpus.
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::Fast)]
        scope: ScopeArg,
        /// Read golden files from this directory instead of the built-in copies.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn io(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<veronese_core::Error> for Failure {
    fn from(e: veronese_core::Error) -> Self {
        Failure {
            code: if e.is_math_input() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let output = match cli.command {
        Command::Normal { n, d } => commands::normal(n, d)?,
        Command::Restrict {
            n,
            d,
            curve,
            path,
            samples,
            seed,
        } => commands::restrict(n, d, curve, path.as_deref(), samples, seed)?,
        Command::Slopes { n, d } => commands::slopes(n, d)?,
        Command::Verify { scope, golden_dir } => {
            let scope = match scope {
                ScopeArg::Fast => Scope::Fast,
                ScopeArg::Full => Scope::Full,
            };
            commands::verify(scope, golden_dir)
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&output.json).expect("JSON values serialize") + "\n",
        Format::Table => table::render(&output.json),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    for message in &output.failures {
        eprintln!("verification failed: {message}");
    }
    Ok(if output.failures.is_empty() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
