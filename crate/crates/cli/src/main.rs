//! `stabnd`: Newton diagrams, Milnor numbers, non-degeneracy tests and
//! stable-equivalence rewriting from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stabnd::milnor::DEFAULT_TRUNCATION_CAP;

#[derive(Parser, Debug)]
#[command(
    name = "stabnd",
    version,
    about = "Newton non-degeneracy and stable equivalence of singularities"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Field characteristic: 0 for the rationals, or a prime.
    #[arg(long = "char", default_value_t = 0, global = true)]
    pub characteristic: u64,
    /// Comma-separated variable names; inferred from the input when absent.
    #[arg(long, value_delimiter = ',', global = true)]
    pub vars: Option<Vec<String>>,
    /// Seed for randomized choices.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest truncation order tried by the truncation oracle.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION_CAP, global = true)]
    pub cap: u32,
    /// Random draws for multiplicity computations.
    #[arg(long, default_value_t = 8, global = true)]
    pub trials: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Kouchnirenko,
    Weak,
    Inner,
    Bivia,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MuPipeline {
    StandardBasis,
    Oracle,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compact faces of the Newton polyhedron.
    Diagram {
        poly: String,
        /// Show the diagram cut out by these covectors instead, e.g. "1/3,1/2;1/4,1".
        #[arg(long)]
        cdiagram: Option<String>,
    },
    /// Newton number.
    Nu {
        poly: String,
        #[arg(long)]
        cdiagram: Option<String>,
    },
    /// Milnor number.
    Mu {
        poly: String,
        #[arg(long, value_enum, default_value_t = MuPipeline::StandardBasis)]
        pipeline: MuPipeline,
    },
    /// Milnor and Newton numbers with the face test verdict.
    Report { poly: String },
    /// Non-degeneracy test; exits with 1 when the germ is degenerate.
    Ndeg {
        poly: String,
        #[arg(long, value_enum, default_value_t = Mode::Kouchnirenko)]
        mode: Mode,
        /// Covector diagram for the inner test; the Newton diagram's own by default.
        #[arg(long)]
        cdiagram: Option<String>,
    },
    /// Basic trick for `poly = g + m * phi^k`.
    Stabilize {
        poly: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Write the certificate trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Stably equivalent form of degree at most three.
    CubicReduce {
        poly: String,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Replays a JSON trace; exits with 1 when a certificate fails.
    Verify { file: PathBuf },
    /// Semigroups of plane branches.
    Semigroup {
        #[command(subcommand)]
        action: SemigroupAction,
    },
    /// Named examples with executable expectations.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
    /// Membership of `poly` in the primitive ideal and in the square of an ideal.
    PrimitiveCheck {
        poly: String,
        /// Generators separated by semicolons.
        #[arg(long)]
        ideal: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Gens {
    /// Comma-separated generators, e.g. 4,6,13.
    #[arg(long)]
    pub gens: String,
}

#[derive(Subcommand, Debug)]
pub enum SemigroupAction {
    Validate(Gens),
    Puiseux(Gens),
    Equations(Gens),
    PlaneCurve(Gens),
    Stabilize {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GalleryAction {
    List,
    Run { name: String },
    RunAll,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (status, out) = commands::run(&cli);
    if !out.is_empty() {
        print!("{out}");
    }
    ExitCode::from(status.code())
}
