//! The `permotive` command line tool.
//!
//! Exit codes: 0 on success, 1 on schema errors, 2 on computation errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use permotive_cli::{run_session_text, OutputFormat, RunError, RunOptions};

#[derive(Parser)]
#[command(name = "permotive", version, about = "Exact period calculator for 1-motives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs every query of a session document in order.
    Run {
        /// Path to the JSON session document.
        file: PathBuf,
        /// Output format: table (human) or json (machine, byte-stable).
        #[arg(long, default_value = "table")]
        format: String,
        /// Overrides the relation-search bound of every curve.
        #[arg(long)]
        bound: Option<u64>,
        /// Default twist for `twist` queries that omit q.
        #[arg(long, default_value_t = 1)]
        twist: i64,
        /// Executes independent queries concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Parses and validates a session document without running it.
    Validate {
        /// Path to the JSON session document.
        file: PathBuf,
    },
    /// Prints the published JSON schema of the session format.
    Schema,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            format,
            bound,
            twist,
            parallel,
        } => {
            let format = match format.as_str() {
                "table" => OutputFormat::Table,
                "json" => OutputFormat::Json,
                other => {
                    eprintln!("unknown format `{other}` (expected table or json)");
                    return ExitCode::from(1);
                }
            };
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", file.display());
                    return ExitCode::from(1);
                }
            };
            let opts = RunOptions {
                format,
                bound,
                twist,
                parallel,
            };
            match run_session_text(&text, &opts) {
                Ok(output) => {
                    print!("{output}");
                    ExitCode::SUCCESS
                }
                Err(e @ RunError::Schema(_)) => {
                    eprintln!("{e}");
                    ExitCode::from(1)
                }
                Err(e @ RunError::Computation { .. }) => {
                    eprintln!("{e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Validate { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", file.display());
                    return ExitCode::from(1);
                }
            };
            match permotive_cli::parse_session(&text).map(|doc| permotive_cli::resolve(&doc)) {
                Ok(Ok(_)) => {
                    println!("ok");
                    ExitCode::SUCCESS
                }
                Ok(Err(errors)) | Err(errors) => {
                    eprintln!("schema validation failed:");
                    for e in errors {
                        eprintln!("  {e}");
                    }
                    ExitCode::from(1)
                }
            }
        }
        Command::Schema => {
            print!("{}", permotive_cli::SCHEMA_JSON);
            ExitCode::SUCCESS
        }
    }
}
