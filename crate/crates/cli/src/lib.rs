//! Command-line front end: problem files, equation rendering, analysis and
//! numerical verification reports.

pub mod commands;
pub mod expr;
pub mod format;
pub mod problem;
pub mod render;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use schwarz_core::builder::Strategy;
use schwarz_core::singular::{DegreeScale, EulerConvention};

use commands::{CliError, Output, Settings};
use problem::{parse_problem, ProblemSpec};

#[derive(Parser, Debug)]
#[command(name = "schwarz", version, about = "Differential equations for curves with a finite group of symmetries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the differential equation of a problem file.
    Construct {
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Write the JSON report to this path; `-` sends it to stdout and
        /// the text to stderr.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Singular points, exponents and curve data, from a problem file or a
    /// saved equation (`.json`).
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = EulerArg::Validated)]
        euler_convention: EulerArg,
        #[arg(long, value_enum, default_value_t = ScaleArg::GroupOrder)]
        degree_scale: ScaleArg,
        /// Degree of the quotient map.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long)]
        group_order: Option<u64>,
        /// Write the JSON report to this path; `-` sends it to stdout and
        /// the text to stderr.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Integrate the equation numerically and compare with the pullbacks.
    Verify {
        problem: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[arg(long, default_value_t = 168)]
        seed: u64,
        /// Write the JSON report to this path; `-` sends it to stdout and
        /// the text to stderr.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Show a built-in group and its invariants.
    Preset {
        name: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = StrategyArg::Frame)]
    pub strategy: StrategyArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum StrategyArg {
    Frame,
    Literal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EulerArg {
    Validated,
    Printed,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ScaleArg {
    Genus,
    GroupOrder,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Frame => Strategy::Frame,
            StrategyArg::Literal => Strategy::Literal,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ProblemSpec, CliError> {
    Ok(parse_problem(&read(path)?)?)
}

/// Text goes to `out` unless JSON is sent there with `--json -`, in which
/// case the text moves to `err`.
fn emit(out: &mut dyn Write, err: &mut dyn Write, output: &Output, json: Option<&Path>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    let doc = serde_json::to_string_pretty(&output.json).expect("serializable");
    match json {
        Some(p) if p == Path::new("-") => {
            write!(err, "{}", output.text).map_err(io)?;
            writeln!(out, "{doc}").map_err(io)
        }
        Some(p) => {
            write!(out, "{}", output.text).map_err(io)?;
            std::fs::write(p, doc + "\n").map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => write!(out, "{}", output.text).map_err(io),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let mut settings = Settings::default();
    match &cli.command {
        Command::Construct { problem, common, json } => {
            settings.strategy = common.strategy.into();
            let spec = load(problem)?;
            emit(out, err, &commands::construct(&spec, &settings)?, json.as_deref())
        }
        Command::Analyze {
            input,
            common,
            euler_convention,
            degree_scale,
            m,
            genus,
            group_order,
            json,
        } => {
            settings.strategy = common.strategy.into();
            settings.euler = match euler_convention {
                EulerArg::Validated => EulerConvention::Validated,
                EulerArg::Printed => EulerConvention::Printed,
            };
            settings.degree_scale = match degree_scale {
                ScaleArg::Genus => DegreeScale::Genus,
                ScaleArg::GroupOrder => DegreeScale::GroupOrder,
            };
            settings.m = *m;
            settings.genus = *genus;
            settings.group_order = *group_order;
            let output = if input.extension().is_some_and(|e| e == "json") {
                let doc: serde_json::Value =
                    serde_json::from_str(&read(input)?).map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?;
                commands::analyze_json(&doc, &settings)?
            } else {
                commands::analyze(&load(input)?, &settings)?
            };
            emit(out, err, &output, json.as_deref())
        }
        Command::Verify {
            problem,
            common,
            tolerance,
            seed,
            json,
        } => {
            settings.strategy = common.strategy.into();
            settings.tolerance = *tolerance;
            settings.seed = *seed;
            let spec = load(problem)?;
            let (output, verified) = commands::verify(&spec, &settings)?;
            emit(out, err, &output, json.as_deref())?;
            if verified {
                Ok(())
            } else {
                Err(CliError::NotVerified {
                    residual: output.json["residual"].as_f64().unwrap_or(f64::NAN),
                    tolerance: *tolerance,
                })
            }
        }
        Command::Preset { name, json } => emit(out, err, &commands::preset_listing(name)?, json.as_deref()),
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
