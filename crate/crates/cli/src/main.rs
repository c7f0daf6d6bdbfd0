use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use semifield_cli::commands::{self, SearchOptions};

/// Verify, analyze and search for finite semifields of order 2^n.
///
/// BASIS arguments take a basis file or one of the built-in fixtures
/// `paper-example`, `f8`, `f128`.
#[derive(Parser)]
#[command(name = "semifield", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the standard-basis conditions.
    Verify {
        basis: String,
        /// Also write the multiplication table (hex rows) to this file.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Commutativity, associativity, nuclei and subsemifields.
    Analyze {
        basis: String,
        /// Subsemifield dimension to scan for; repeatable.
        #[arg(long = "sub")]
        sub: Vec<usize>,
    },
    /// Write the basis of the opposite semifield.
    Opposite { basis: String, output: PathBuf },
    /// Multiply two elements given as bit strings.
    Mult { basis: String, x: String, y: String },
    /// Run a constrained search described by a TOML config.
    Search {
        config: PathBuf,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (overrides the config).
        #[arg(long)]
        threads: Option<usize>,
        /// Print event lines to stderr.
        #[arg(long)]
        progress: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let exit = match &cli.command {
        Command::Verify { basis, table } => {
            commands::cmd_verify(basis, table.as_deref(), &mut out, &mut err)
        }
        Command::Analyze { basis, sub } => commands::cmd_analyze(basis, sub, &mut out, &mut err),
        Command::Opposite { basis, output } => {
            commands::cmd_opposite(basis, output, &mut out, &mut err)
        }
        Command::Mult { basis, x, y } => commands::cmd_mult(basis, x, y, &mut out, &mut err),
        Command::Search {
            config,
            out: dir,
            threads,
            progress,
        } => commands::cmd_search(
            config,
            &SearchOptions {
                out_dir: dir.clone(),
                threads: *threads,
                progress: *progress,
            },
            &mut out,
            &mut err,
        ),
    };
    ExitCode::from(exit.code())
}
