//! Command-line front end for the parameter calculator: argument parsing,
//! dispatch, report rendering, and the verification suites.

mod commands;
mod dsl;
mod out;
mod random;
mod suites;

pub use out::{Format, Violation};
pub use random::{generate_random_instance, Flavor, Instance, SuiteConfig};
pub use suites::{run_examples_suite, run_random_suites, SuiteOutcome};

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "arthur-calc",
    about = "Exact calculator for deformation parameters of classical groups",
    version
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized suites (falls back to ARTHUR_CALC_SEED, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Instance count for the randomized suites (default 500)
    #[arg(long, global = true)]
    count: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a parameter on a group form and print its block structure
    Classify { input: String },
    /// Component-group data and the characters realized on the given form
    Component { input: String },
    /// Normalization signs and rank data of a parameter
    Signs { input: String },
    /// Endoscopic decomposition at a semisimple centralizer element
    Endoscopy {
        input: String,
        /// Element DSL, e.g. "one[1,O]@S(1)xS(2): +1^1 -1^2"; identity if omitted
        #[arg(long)]
        element: Option<String>,
        /// Rationality hints for even orthogonal factors, e.g. "plus=qs"
        #[arg(long)]
        hints: Option<String>,
    },
    /// The correction character, by the closed form and the ordered recipe
    MwCharacter { input: String },
    /// The dual of a packet label, with its reduction chain
    Dual {
        input: String,
        /// Member character: positional "+,-" or named "key=sign,..."
        #[arg(long = "char")]
        char_spec: String,
    },
    /// The dual of the generic representation of a Langlands datum
    GenericDual { input: String },
    /// Compare the corrected transport of a label with the uncorrected one
    CompareArthur {
        input: String,
        /// Member character: positional "+,-" or named "key=sign,..."
        #[arg(long = "char")]
        char_spec: String,
    },
    /// Run a verification suite
    Verify {
        /// Which suite: "examples" or "random"
        #[arg(long)]
        suite: String,
    },
}

/// Parse the argument vector, dispatch, and render.  Returns the process
/// exit code and the rendered report: 0 on success, 1 when identity
/// violations were found, 2 on usage or input errors.
pub fn run(argv: &[&str]) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return (e.exit_code(), e.render().to_string()),
    };
    let seed = cli.seed.or_else(env_seed).unwrap_or(0);
    let count = cli.count.unwrap_or(500);
    let cfg = SuiteConfig::new(seed, count);
    let (name, result) = match &cli.command {
        Command::Classify { input } => ("classify", commands::classify(input)),
        Command::Component { input } => ("component", commands::component(input)),
        Command::Signs { input } => ("signs", commands::signs(input)),
        Command::Endoscopy {
            input,
            element,
            hints,
        } => (
            "endoscopy",
            commands::endoscopy(input, element.as_deref(), hints.as_deref()),
        ),
        Command::MwCharacter { input } => ("mw-character", commands::mw_character(input)),
        Command::Dual { input, char_spec } => ("dual", commands::dual(input, char_spec)),
        Command::GenericDual { input } => ("generic-dual", commands::generic_dual(input)),
        Command::CompareArthur { input, char_spec } => {
            ("compare-arthur", commands::compare_arthur(input, char_spec))
        }
        Command::Verify { suite } => ("verify", commands::verify(suite, &cfg)),
    };
    match result {
        Ok(out) => out::render(cli.format, name, out),
        Err(e) => (2, format!("error: {}", e)),
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("ARTHUR_CALC_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
}
