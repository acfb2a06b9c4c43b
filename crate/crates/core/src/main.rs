use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use semlattice::config::Settings;
use semlattice::pipeline;

#[derive(Parser)]
#[command(name = "semlattice", version, about = "Concept lattices, frequent keyword sets and association rules for microblog corpora")]
struct Cli {
    /// Flat TOML file with defaults for any of the flags below
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    settings: Settings,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the filtered frequency dictionary
    Dict,
    /// Mine frequent keyword sets
    Itemsets,
    /// Enumerate the concept lattice (and optionally its Hasse diagram)
    Lattice,
    /// Derive association rules and flag implications
    Rules,
    /// Report the order ideal and filter of the concept generated by ATTRS
    IdealFilter {
        #[arg(required = true)]
        attrs: Vec<String>,
    },
}

fn run(cli: Cli) -> semlattice::Result<String> {
    let settings = match &cli.config {
        Some(path) => cli.settings.over(Settings::load(path)?),
        None => cli.settings,
    };
    let cfg = settings.resolve()?;
    let outcome = match &cli.command {
        Command::Dict => pipeline::cmd_dict(&cfg)?,
        Command::Itemsets => pipeline::cmd_itemsets(&cfg)?,
        Command::Lattice => pipeline::cmd_lattice(&cfg)?,
        Command::Rules => pipeline::cmd_rules(&cfg)?,
        Command::IdealFilter { attrs } => pipeline::cmd_ideal_filter(&cfg, attrs)?,
    };
    Ok(outcome.summary)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
