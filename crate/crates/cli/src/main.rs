//! `mackey`: verify Mackey functor and Weyl sheaf identities from the shell.
//!
//! Exit status is 0 when every check passes, 1 when some identity fails and
//! 2 when the input cannot be parsed or validated.

mod commands;
mod source;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "mackey",
    version,
    about = "Exact checks for rational Mackey functors and Weyl sheaves"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Largest group order accepted from input files.
    #[arg(long, default_value_t = 384, global = true)]
    pub max_order: usize,
    /// Truncation depth; defaults to the deepest level of the tower.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Tower spec (`s3`, `p-adic:2:3`) or a tower JSON file.
    #[arg(long, global = true)]
    pub tower: Option<String>,
    /// Builtin Mackey functor or a Mackey JSON file.
    #[arg(long, global = true)]
    pub mackey: Option<String>,
    /// Builtin sheaf or a sheaf JSON file.
    #[arg(long, global = true)]
    pub sheaf: Option<String>,
    /// Also write the converted functor or sheaf to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of marks of a finite group.
    Marks {
        #[arg(long)]
        group: String,
    },
    /// Primitive idempotents `e_(N,J)` and their identities.
    Idempotents {
        #[arg(long)]
        group: String,
        /// Normal subgroup `N`, by index or element set; defaults to the trivial one.
        #[arg(long)]
        normal: Option<String>,
    },
    /// Check the Mackey functor axioms.
    CheckMackey { input: Option<PathBuf> },
    /// Stalks of a Mackey functor as a Weyl sheaf.
    ToSheaf { input: Option<PathBuf> },
    /// Equivariant sections of a sheaf as a Mackey functor.
    ToMackey { input: Option<PathBuf> },
    /// Round trip a Mackey functor or a Weyl sheaf through the equivalence.
    Roundtrip { input: Option<PathBuf> },
    /// Split the value at the whole group over conjugacy classes.
    Decompose { input: Option<PathBuf> },
    /// Stalk of a Mackey functor at one chain, with its stage sequence.
    Stalks {
        input: Option<PathBuf>,
        /// Subgroup of the deepest level, by index or element set.
        #[arg(long)]
        chain: String,
    },
    /// Run the full acceptance matrix.
    Suite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            // A closed pipe (`mackey ... | head`) is not an error worth reporting.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
