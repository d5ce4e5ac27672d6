//! `pdlsl`: extract utterance models from tracking data and check them
//! against a lexicon of sign formulas.

mod commands;
mod config;
mod diag;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Output;
use config::{CommonArgs, Settings};
use diag::CliError;

#[derive(Debug, Parser)]
#[command(name = "pdlsl", version, about = "Sign recognition with propositional dynamic logic")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Segment a tracking file and write the utterance model.
    Extract {
        tracking: PathBuf,
        /// Lexicon whose configuration labels may be valued false.
        /// Without it, the labels seen in the tracking file are used.
        #[arg(long, value_name = "PATH")]
        lexicon: Option<PathBuf>,
        /// Write here instead of standard output.
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Propose lexicon signs at each state of a model.
    Check {
        model: PathBuf,
        lexicon: PathBuf,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Evaluate one formula at one state.
    Eval {
        model: PathBuf,
        formula: String,
        #[arg(long, default_value_t = 0)]
        state: usize,
        /// Read unknown atoms as false and print a two-valued answer.
        #[arg(long)]
        closed_world: bool,
    },
    /// Parse a lexicon and warn about atoms that cannot be decided.
    Lint { lexicon: PathBuf },
}

fn run(cli: Cli) -> Result<(Output, Option<PathBuf>), CliError> {
    let settings = Settings::resolve(&cli.common)?;
    match cli.command {
        Command::Extract { tracking, lexicon, output } => {
            Ok((commands::extract_cmd(&tracking, lexicon.as_ref(), &settings)?, output))
        }
        Command::Check { model, lexicon, output } => Ok((commands::check_cmd(&model, &lexicon, &settings)?, output)),
        Command::Eval { model, formula, state, closed_world } => {
            Ok((commands::eval_cmd(&model, &formula, state, closed_world, &settings)?, None))
        }
        Command::Lint { lexicon } => Ok((commands::lint_cmd(&lexicon)?, None)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stderr = std::io::stderr();
    match run(cli) {
        Ok((out, dest)) => {
            for w in &out.warnings {
                let _ = writeln!(stderr.lock(), "{w}");
            }
            let written = match dest {
                Some(path) => std::fs::write(&path, &out.stdout).map_err(|e| CliError::io(&path, e)),
                None => {
                    std::io::stdout().write_all(out.stdout.as_bytes()).map_err(|e| CliError::io(&PathBuf::from("-"), e))
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    let _ = writeln!(stderr.lock(), "{}", e.to_line());
                    ExitCode::from(CliError::EXIT_CODE)
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr.lock(), "{}", e.to_line());
            ExitCode::from(CliError::EXIT_CODE)
        }
    }
}
