//! Command-line surface for the `dealmix` engine.
//!
//! The parsed command line is the run configuration: it is echoed as JSON
//! in the first output line, and [`RunConfig::to_args`] rebuilds an argument
//! list that parses back to the same value.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

mod commands;
mod output;

pub use commands::run;
pub use output::{Table, TableSet};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Parser, Serialize, Deserialize)]
#[command(name = "dealmix", version, about = "Leading 1/a coefficient of dealt-hand variation distance")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Write the table to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "DEALMIX_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Deck given either as counts of an ordered deck or as explicit cards.
#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct DeckArgs {
    /// Color counts of the color-ordered deck, e.g. `26,26`.
    #[arg(long, value_delimiter = ',', conflicts_with = "deck", required_unless_present = "deck")]
    pub comp: Vec<u32>,

    /// Explicit initial deck in letters (`BRRB`) or 1-based indices (`1,2,2,1`).
    #[arg(long)]
    pub deck: Option<String>,

    #[arg(long)]
    pub players: Option<usize>,

    #[arg(long)]
    pub hand: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Exact leading coefficient for one method.
    Coeff {
        #[command(flatten)]
        deck: DeckArgs,
        /// ordered | cyclic | backforth | conjectured | seq:<symbols>
        #[arg(long)]
        method: String,
        /// Also emit the signed term of every hand.
        #[arg(long)]
        per_hand: bool,
    },
    /// Coefficients of several methods on one deck, with ratios between neighbors.
    Compare {
        #[command(flatten)]
        deck: DeckArgs,
        #[arg(long, value_delimiter = ',', default_value = "ordered,cyclic,backforth")]
        methods: Vec<String>,
    },
    /// Three-color grid over `b, r, g >= 1`, four players.
    Grid3 {
        #[arg(long, default_value_t = 52)]
        cards: u32,
        #[arg(long, default_value = "backforth")]
        method: String,
    },
    /// Two-color curve over `b = 1..cards-1`, four players.
    Curve2 {
        #[arg(long, default_value_t = 52)]
        cards: u32,
        #[arg(long, value_delimiter = ',', default_value = "backforth,conjectured")]
        methods: Vec<String>,
    },
    /// Exact variation distance by enumeration, for small decks.
    Oracle {
        #[arg(long)]
        deck: String,
        #[arg(long)]
        players: Option<usize>,
        #[arg(long)]
        method: String,
        /// Shuffle intensities.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        a: Vec<u64>,
        /// Largest deck the enumeration accepts.
        #[arg(long, default_value_t = dealmix::shuffle::DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Seeded Monte Carlo hand frequencies.
    Simulate {
        #[arg(long)]
        deck: String,
        #[arg(long)]
        players: Option<usize>,
        #[arg(long)]
        method: String,
        #[arg(long, default_value_t = 2)]
        a: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for a dealing sequence with a small coefficient or metric.
    Search {
        #[command(flatten)]
        deck: DeckArgs,
        #[arg(long, default_value = "coefficient")]
        objective: String,
        #[arg(long, default_value = "local")]
        strategy: String,
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Starting sequence; back-and-forth when omitted.
        #[arg(long)]
        start: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Coeff { .. } => "coeff",
            Command::Compare { .. } => "compare",
            Command::Grid3 { .. } => "grid3",
            Command::Curve2 { .. } => "curve2",
            Command::Oracle { .. } => "oracle",
            Command::Simulate { .. } => "simulate",
            Command::Search { .. } => "search",
        }
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn push_opt<T: ToString>(args: &mut Vec<String>, flag: &str, value: &Option<T>) {
    if let Some(v) = value {
        args.push(flag.into());
        args.push(v.to_string());
    }
}

fn push(args: &mut Vec<String>, flag: &str, value: impl ToString) {
    args.push(flag.into());
    args.push(value.to_string());
}

impl DeckArgs {
    fn push_args(&self, args: &mut Vec<String>) {
        if !self.comp.is_empty() {
            push(args, "--comp", join(&self.comp));
        }
        push_opt(args, "--deck", &self.deck);
        push_opt(args, "--players", &self.players);
        push_opt(args, "--hand", &self.hand);
    }
}

impl RunConfig {
    /// Canonical one-line text form.
    pub fn to_text(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn from_text(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Argument list (without the program name) that parses to `self`.
    /// A thread count taken from the environment is written as a flag.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![self.command.name().to_string()];
        match &self.command {
            Command::Coeff { deck, method, per_hand } => {
                deck.push_args(&mut args);
                push(&mut args, "--method", method);
                if *per_hand {
                    args.push("--per-hand".into());
                }
            }
            Command::Compare { deck, methods } => {
                deck.push_args(&mut args);
                push(&mut args, "--methods", join(methods));
            }
            Command::Grid3 { cards, method } => {
                push(&mut args, "--cards", cards);
                push(&mut args, "--method", method);
            }
            Command::Curve2 { cards, methods } => {
                push(&mut args, "--cards", cards);
                push(&mut args, "--methods", join(methods));
            }
            Command::Oracle { deck, players, method, a, cap } => {
                push(&mut args, "--deck", deck);
                push_opt(&mut args, "--players", players);
                push(&mut args, "--method", method);
                push(&mut args, "--a", join(a));
                push(&mut args, "--cap", cap);
            }
            Command::Simulate { deck, players, method, a, samples, seed } => {
                push(&mut args, "--deck", deck);
                push_opt(&mut args, "--players", players);
                push(&mut args, "--method", method);
                push(&mut args, "--a", a);
                push(&mut args, "--samples", samples);
                push(&mut args, "--seed", seed);
            }
            Command::Search { deck, objective, strategy, budget, seed, start } => {
                deck.push_args(&mut args);
                push(&mut args, "--objective", objective);
                push(&mut args, "--strategy", strategy);
                push(&mut args, "--budget", budget);
                push(&mut args, "--seed", seed);
                push_opt(&mut args, "--start", start);
            }
        }
        push_opt(&mut args, "--out", &self.out.as_ref().map(|p| p.display().to_string()));
        push(&mut args, "--format", self.format.to_possible_value().expect("named format").get_name());
        push_opt(&mut args, "--threads", &self.threads);
        args
    }
}

/// Failure of a command, mapped to a process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad or inconsistent input.
    Validation(String),
    /// The request is valid but above a configured size cap.
    ScaleExceeded(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::ScaleExceeded(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "error: {msg}"),
            CliError::ScaleExceeded(msg) => write!(f, "error: {msg}"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<dealmix::Error> for CliError {
    fn from(e: dealmix::Error) -> Self {
        match e {
            dealmix::Error::ScaleExceeded { .. } => CliError::ScaleExceeded(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
