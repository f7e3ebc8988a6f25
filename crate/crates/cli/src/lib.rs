//! Batch front end for the gpcomod engine.

pub mod commands;
pub mod explain;
pub mod input;
pub mod named;
pub mod report;
pub mod selftest;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::commands::{ApcInput, HopfInput};
use crate::input::InputError;
use crate::named::Example;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "gpcomod",
    version,
    about = "Exact checks for geometric partial comodules"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for generated data.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a structure (`builtin:<name>`, a path, or inline JSON) and its dual.
    Validate { structure: String },
    /// Check GPC1 and both GPC2 routes on a datum file.
    CheckGpc { datum: String },
    /// Globalize a datum and certify the result.
    Globalize { datum: String },
    /// Induce a datum from a not-necessarily-coassociative coaction.
    Induce { coaction: String },
    /// Build the standard dilation of a partial module and crosscheck it.
    Dilate { module: String },
    /// Check a partial group representation, S = Z and its dilation.
    Parrep { representation: String },
    /// Check an algebraic partial comodule or a named fixture.
    Apc { input: String },
    /// Check a Hopf partial comodule or a fundamental pair.
    Hopf { input: String },
    /// Reproduce a worked example.
    Example {
        name: Example,
        /// Eigenspace dimensions `d₋₁,d₀,d₁` for c2-partial-module.
        #[arg(long, default_value = "1,1,1")]
        dims: String,
        /// Truncation degree for sweedler-trunc.
        #[arg(long = "N", default_value_t = 5)]
        n: usize,
    },
    /// Run the seeded invariant suites.
    Selftest {
        /// Also run a deliberately broken fixture, which must be reported.
        #[arg(long)]
        mutate: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::CheckGpc { .. } => "check-gpc",
            Command::Globalize { .. } => "globalize",
            Command::Induce { .. } => "induce",
            Command::Dilate { .. } => "dilate",
            Command::Parrep { .. } => "parrep",
            Command::Apc { .. } => "apc",
            Command::Hopf { .. } => "hopf",
            Command::Example { .. } => "example",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, InputError> {
    Ok(match &cli.command {
        Command::Validate { structure } => commands::validate(structure)?,
        Command::CheckGpc { datum } => {
            commands::check_gpc(&commands::datum_from(&input::load(datum)?)?, "check-gpc")
        }
        Command::Globalize { datum } => {
            commands::globalize_datum(&commands::datum_from(&input::load(datum)?)?, "globalize")
        }
        Command::Induce { coaction } => {
            commands::induce(&commands::nc_from(&input::load(coaction)?)?)
        }
        Command::Dilate { module } => commands::dilate(
            &commands::partial_module_from(&input::load(module)?)?,
            "dilate",
        ),
        Command::Parrep { representation } => {
            commands::parrep(&commands::partial_rep_from(&input::load(representation)?)?)
        }
        Command::Apc { input } => match commands::apc_from(&input::load(input)?)? {
            ApcInput::Sweedler(n) => {
                let mut r = named::sweedler_trunc(n);
                r.command = "apc".into();
                r
            }
            ApcInput::Explicit(a) => commands::apc(&a),
        },
        Command::Hopf { input } => match commands::hopf_from(&input::load(input)?)? {
            HopfInput::Structure(h) => commands::hopf(&h),
            HopfInput::Pair(p, b) => commands::pair(&p, &b),
        },
        Command::Example { name, dims, n } => match name {
            Example::C2PartialModule => {
                let (a, b, c) = named::parse_dims(dims)?;
                named::c2_partial_module(a, b, c)
            }
            Example::SweedlerTrunc => {
                if *n == 0 {
                    return Err(InputError::Schema("--N must be positive".into()));
                }
                named::sweedler_trunc(*n)
            }
            Example::TwoDimCoalgebra => named::two_dim_coalgebra(),
            Example::Monoid3Contrast => named::monoid3(),
            Example::C2TrivialScan => named::c2_trivial_scan(),
        },
        Command::Selftest { mutate } => selftest::selftest(cli.seed, *mutate),
    })
}

/// Run one command to a finished report.
pub fn run(cli: &Cli) -> Report {
    let start = Instant::now();
    let mut report = match dispatch(cli) {
        Ok(r) => r,
        Err(e) => Report::input_error(cli.command.name(), e.to_string()),
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    report
}

pub fn render(cli: &Cli, report: &Report) -> String {
    if cli.json {
        report.to_json()
    } else {
        report.to_text()
    }
}
