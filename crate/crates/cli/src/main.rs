use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

use commands::{CliError, Format, Outcome};

/// Voracious projections, the voracious language and its automaton for
/// Coxeter groups.
#[derive(Parser, Debug)]
#[command(author, version, about, long_about = None)]
struct Cli {
    /// Group file (`{"generators": [...], "m": [[...]]}`, 0 for infinity)
    /// or a preset: A2, B2, G2, I2(m), Dinf, A3, or (p,q,r).
    #[arg(short, long, global = true)]
    group: Option<String>,

    /// Output format: text, json or dot.
    #[arg(short, long, global = true)]
    format: Option<Format>,

    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shortlex normal form and length of a word.
    Reduce { word: String },
    /// Voracious projection chain and its blocks.
    Project { word: String },
    /// Frontier walls of the element a word represents.
    Walls { word: String },
    /// Walls not separated from the identity by any other wall.
    SmallRoots,
    /// Build the automaton recognising the voracious language.
    Automaton {
        /// Longest pivot considered.
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Run a word through an automaton file written with `--format json`.
    Accept { automaton: PathBuf, word: String },
    /// Membership of a word in the voracious language.
    Member { word: String },
    /// Run the verifier on a ball and write the JSON report.
    Verify {
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Longest word checked against the automaton.
        #[arg(long)]
        cap: Option<usize>,
        /// JSON file with verifier settings; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let group_source = cli
        .group
        .as_deref()
        .ok_or_else(|| CliError::Usage("--group is required".into()))?;
    let group = commands::load_group(group_source)?;
    let format = cli.format;
    let outcome = match cli.command {
        Command::Reduce { word } => commands::reduce(&group, &word, format)?,
        Command::Project { word } => commands::project(&group, &word, format)?,
        Command::Walls { word } => commands::walls(&group, &word, format)?,
        Command::SmallRoots => commands::small_roots(&group, format)?,
        Command::Automaton { cap } => commands::automaton(&group, cap, format)?,
        Command::Accept { automaton, word } => commands::accept(&group, &automaton, &word, format)?,
        Command::Member { word } => commands::member(&group, &word, format)?,
        Command::Verify {
            radius,
            seed,
            cap,
            config,
        } => commands::verify(&group, config.as_deref(), radius, seed, cap)?,
    };
    commands::emit(&outcome, cli.out.as_deref())?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(if outcome.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
