//! `obstruct`: homology, cohomology operations, intersection forms, Thom
//! models and defect-scenario verification from the command line.
//!
//! Exit codes: 0 success or passing verification, 1 failing verification,
//! 2 malformed input.

mod commands;
mod input;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use obstruction_core::linalg::Coefficient;

#[derive(Parser)]
#[command(name = "obstruct", version, about = "Obstruction-theory toolkit for finite simplicial complexes")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    Z,
    Z2,
}

impl Coeff {
    pub fn ring(self) -> Coefficient {
        match self {
            Coeff::Z => Coefficient::Z,
            Coeff::Z2 => Coefficient::Z2,
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Homology of a complex, or relative homology of a pair.
    Homology {
        input: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
    },
    /// Cohomology of a complex or pair.
    Cohomology {
        input: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
    },
    /// Cup product of two classes.
    Cup {
        input: String,
        /// Class spec: a name (h, a, b), g<i>, or [k:]c0,c1,..
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Degree assumed by class specs without one.
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
    },
    /// Steenrod square Sq^k of a mod-2 class.
    Sq {
        k: usize,
        input: String,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Read the class integrally and reduce it mod 2 first.
        #[arg(long)]
        mod2: bool,
        #[arg(long, value_enum, default_value_t = Coeff::Z2)]
        coeff: Coeff,
    },
    /// Degree of a map between oriented pseudomanifolds of equal dimension.
    Degree { map: String },
    /// Hopf invariant of a map S^3 -> S^2.
    Hopf { map: String },
    /// Intersection form of a closed oriented 4-manifold.
    Form { input: String },
    /// Thom-class data of a disk-bundle model.
    Thom {
        input: String,
        /// Also report <(n tau)^2, [DN]> (rank 2).
        #[arg(long)]
        n: Option<i64>,
    },
    /// Verify a defect scenario; exit 0 on pass, 1 on failure.
    Verify { scenario: String },
    /// The shipped corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
pub enum CorpusAction {
    /// List entries with their provenance.
    List,
    /// Validate every entry.
    Check {
        /// Validate one entry at a time.
        #[arg(long)]
        sequential: bool,
    },
    /// Print an entry as a JSON record.
    Show { id: String },
}

pub struct Output {
    pub text: String,
    pub structured: serde_json::Value,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut rendered = match cli.common.format {
        Format::Text => output.text,
        Format::Structured => serde_json::to_string_pretty(&output.structured).expect("reports serialize"),
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: cannot write `{path}`: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(output.code)
}
