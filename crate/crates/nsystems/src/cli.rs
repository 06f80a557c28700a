//! The `nsys` command-line interface.
//!
//! Every subcommand takes its parameter point either from `--canonical N`
//! or from a JSON file via `--params FILE`, writes one JSON (or CSV)
//! document to stdout or `-o FILE`, and exits 0 when the computation ran
//! and passed, 1 when the mathematics rejected the input (invalid
//! parameters, unstable branch, failed identity or certificate), and 2 when
//! the invocation itself was unusable (bad flags, unreadable file,
//! malformed JSON, unsupported dimension).

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::certify::{certify_report, FunctionSet};
use crate::cfrac::cf_check_report;
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::exponents::{exponents_report, sample_csv, sample_neighborhood, SamplePoint};
use crate::nsystem::{build_geometry, canonical_params, export_graph, validate_params, Params};

#[derive(Parser, Debug)]
#[command(
    name = "nsys",
    version,
    about = "Exact construction and analysis of self-similar (n+1)-systems"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the parameter point comes from. Exactly one source must be given.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ParamSource {
    /// Use the built-in parameter point for this dimension
    #[arg(long, value_name = "N")]
    canonical: Option<usize>,
    /// Read parameters from a JSON file
    #[arg(long, value_name = "FILE")]
    params: Option<PathBuf>,
}

impl ParamSource {
    fn load(&self) -> Result<Params> {
        match (&self.canonical, &self.params) {
            (Some(n), None) => canonical_params(*n),
            (None, Some(path)) => Ok(serde_json::from_str(&fs::read_to_string(path)?)?),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum SetArg {
    Trajectory,
    Paper,
}

impl From<SetArg> for FunctionSet {
    fn from(s: SetArg) -> FunctionSet {
        match s {
            SetArg::Trajectory => FunctionSet::Trajectory,
            SetArg::Paper => FunctionSet::PaperTable,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the parameter inequalities and report every violation
    Validate {
        #[command(flatten)]
        source: ParamSource,
        /// Write the report here instead of stdout
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Compute the spectrum by both routes and compare them
    Exponents {
        #[command(flatten)]
        source: ParamSource,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Export the combined graph as segments and labeled division points
    Graph {
        #[command(flatten)]
        source: ParamSource,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Emit an exact algebraic-independence certificate
    Certify {
        #[command(flatten)]
        source: ParamSource,
        /// Which 2n functions to certify
        #[arg(long, value_enum, default_value_t = SetArg::Trajectory)]
        set: SetArg,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Draw seeded valid parameter points near the given center
    Sample {
        #[command(flatten)]
        source: ParamSource,
        /// Largest exact offset applied to each free coordinate
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        radius: Rat,
        /// Number of points to draw
        #[arg(long, value_name = "INT")]
        count: usize,
        /// RNG seed; the same seed always yields the same points
        #[arg(long, value_name = "INT")]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Verify the continued-fraction identity and its symbolic structure
    Cfcheck {
        #[command(flatten)]
        source: ParamSource,
        /// Keep C in the partial quotients (demonstrates the failure)
        #[arg(long = "no-specialize-c")]
        no_specialize_c: bool,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SampleOutput {
    n: usize,
    seed: u64,
    radius: Rat,
    count: usize,
    samples: Vec<SamplePoint>,
}

struct Outcome {
    text: String,
    pass: bool,
    output: Option<PathBuf>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Validate { source, output } => {
            let report = validate_params(&source.load()?)?;
            Ok(Outcome { text: to_json(&report)?, pass: report.valid, output })
        }
        Command::Exponents { source, output } => {
            let report = exponents_report(&source.load()?)?;
            Ok(Outcome { text: to_json(&report)?, pass: true, output })
        }
        Command::Graph { source, output } => {
            let graph = export_graph(&build_geometry(&source.load()?)?);
            Ok(Outcome { text: to_json(&graph)?, pass: true, output })
        }
        Command::Certify { source, set, output } => {
            let p = source.load()?;
            let report = certify_report(p.n(), &p, set.into())?;
            Ok(Outcome { text: to_json(&report)?, pass: report.pass, output })
        }
        Command::Sample { source, radius, count, seed, format, output } => {
            let center = source.load()?;
            let samples = sample_neighborhood(&center, &radius, count, seed)?;
            let text = match format {
                FormatArg::Json => to_json(&SampleOutput {
                    n: center.n(),
                    seed,
                    radius,
                    count,
                    samples,
                })?,
                FormatArg::Csv => sample_csv(seed, &samples, center.n()),
            };
            Ok(Outcome { text, pass: true, output })
        }
        Command::Cfcheck { source, no_specialize_c, output } => {
            let report = cf_check_report(&source.load()?, !no_specialize_c)?;
            Ok(Outcome { text: to_json(&report)?, pass: report.pass, output })
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::UnsupportedDimension(_) => 2,
        _ => 1,
    }
}

/// Parses arguments, runs one subcommand, and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(outcome) => {
            let written = match &outcome.output {
                Some(path) => fs::write(path, &outcome.text).map_err(Error::from),
                None => std::io::stdout()
                    .write_all(outcome.text.as_bytes())
                    .map_err(Error::from),
            };
            match written {
                Ok(()) => {
                    if outcome.pass {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn source_loading() {
        let source = ParamSource { canonical: Some(3), params: None };
        assert_eq!(source.load().unwrap(), canonical_params(3).unwrap());
        let source = ParamSource { canonical: Some(2), params: None };
        assert!(matches!(source.load(), Err(Error::UnsupportedDimension(2))));
        let source = ParamSource { canonical: None, params: Some(PathBuf::from("/no/such")) };
        assert!(matches!(source.load(), Err(Error::Io(_))));
    }

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(exit_code_for(&Error::UnsupportedDimension(2)), 2);
        assert_eq!(exit_code_for(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code_for(&Error::InvalidParams("x".into())), 1);
        assert_eq!(exit_code_for(&Error::BranchNotStable("x".into())), 1);
        assert_eq!(exit_code_for(&Error::NeighborhoodTooLarge("x".into())), 1);
        assert_eq!(exit_code_for(&Error::Geometry("x".into())), 1);
    }

    #[test]
    fn flag_parsing_round_trip() {
        let cli = Cli::try_parse_from([
            "nsys", "sample", "--canonical", "4", "--radius", "1/128", "--count", "5", "--seed",
            "9", "--format", "csv",
        ])
        .unwrap();
        match cli.command {
            Command::Sample { radius, count, seed, format, .. } => {
                assert_eq!(radius, Rat::new(1, 128).unwrap());
                assert_eq!(count, 5);
                assert_eq!(seed, 9);
                assert_eq!(format, FormatArg::Csv);
            }
            other => panic!("parsed into {other:?}"),
        }
        assert!(Cli::try_parse_from(["nsys", "validate"]).is_err());
        assert!(Cli::try_parse_from([
            "nsys", "validate", "--canonical", "3", "--params", "x.json"
        ])
        .is_err());
        assert!(Cli::try_parse_from(["nsys", "sample", "--canonical", "3", "--count", "2"])
            .is_err());
    }
}
