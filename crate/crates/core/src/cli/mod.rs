//! The `chebylift` command line: spec documents in, CSV/OBJ grids and a JSON
//! report out.
//!
//! Exit status: 0 when every check passes, 2 when a verification fails,
//! 3 for bad input or unmet preconditions, 4 for I/O failures.

pub mod commands;
pub mod export;
pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::error::Error;
use commands::{Action, LiftFlags, LiftInput, Outputs};
use export::{parse_grid_csv, Format, NodeTable, Projection};
use report::{Checker, ErrorRecord};
use spec::SpecDoc;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Overrides the tolerance of each command's headline check.
pub const TOL_ENV: &str = "CHEBYLIFT_TOL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Spec { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

/// Whether a library error is a failed verification rather than bad input.
pub fn is_verification_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::DisjointnessViolated { .. }
            | Error::NotChebyshev { .. }
            | Error::NotMinimal { .. }
            | Error::NecessaryConditionFailed { .. }
            | Error::IncompatibleData { .. }
    )
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Lib(e) if is_verification_failure(e) => EXIT_VERIFY,
            Self::Lib(_) | Self::Spec { .. } | Self::Usage(_) => EXIT_DATA,
            Self::Io { .. } => EXIT_IO,
        }
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split([' ', '(', '{']).next().unwrap_or_default().to_string()
}

#[derive(Debug, Parser)]
#[command(name = "chebylift", version, about = "Chebyshev nets, their timelike lifts and the Bjorling problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ActionArg {
    Check,
    Solve,
    Nonunique,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a Chebyshev net and write grid, angle, shape and report files.
    Net {
        spec: PathBuf,
        /// Output prefix; files are named `<prefix>_grid.csv` and so on.
        #[arg(long)]
        out: PathBuf,
    },
    /// Lift a net to R^4_1 and verify it. Takes a spec document or a grid CSV.
    Lift {
        input: PathBuf,
        #[arg(long)]
        curvature: bool,
        #[arg(long)]
        minimality: bool,
        #[arg(long)]
        isothermal: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check, solve or probe non-uniqueness of a Bjorling problem.
    Bjorling {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "check")]
        action: ActionArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convert a grid CSV to CSV or OBJ.
    Export {
        input: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
        /// drop-x0, drop-x3 or ortho:w0,w1,w2,w3 (OBJ only).
        #[arg(long, default_value = "drop-x0")]
        projection: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load_spec(path: &Path) -> Result<SpecDoc, CliError> {
    SpecDoc::parse(&read(path)?).map_err(|e| CliError::Spec { path: path.into(), message: e.to_string() })
}

fn env_tolerance() -> Result<Option<f64>, CliError> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(Some(t)),
            _ => Err(CliError::Usage(format!("{TOL_ENV} must be a positive number, got {s:?}"))),
        },
    }
}

fn output_path(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.file_name().map(OsString::from).unwrap_or_default();
    name.push(format!("_{suffix}"));
    prefix.with_file_name(name)
}

/// Runs a verifying command, then writes its outputs and report whatever the
/// outcome.
fn verified(
    command: &str,
    overrides: std::collections::BTreeMap<String, f64>,
    prefix: &Path,
    body: impl FnOnce(&mut Checker, &mut Outputs) -> crate::Result<()>,
) -> Result<i32, CliError> {
    let mut ck = Checker::new(command, overrides, env_tolerance()?);
    let mut out = Outputs::new();
    let result = body(&mut ck, &mut out);
    if let Err(e) = &result {
        ck.report.error = Some(ErrorRecord { kind: error_kind(e), message: e.to_string() });
    }
    for (suffix, _) in &out {
        let path = output_path(prefix, suffix);
        ck.report.outputs.push(path.file_name().unwrap_or_default().to_string_lossy().into_owned());
    }
    let report = ck.into_report();
    for (suffix, text) in &out {
        write(&output_path(prefix, suffix), text)?;
    }
    let report_path = output_path(prefix, "report.json");
    write(&report_path, &report.to_json())?;
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    println!("{verdict} {command}: {} checks, {failed} failed; report {}", report.checks.len(), report_path.display());
    match result {
        Err(e) => {
            let e = CliError::Lib(e);
            eprintln!("chebylift: {e}");
            Ok(e.exit_code())
        }
        Ok(()) if report.pass => Ok(EXIT_PASS),
        Ok(()) => Ok(EXIT_VERIFY),
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Net { spec, out } => {
            let doc = load_spec(&spec)?;
            verified("net", doc.tolerances.clone(), &out, |ck, o| commands::net(&doc, ck, o))
        }
        Command::Lift { input, curvature, minimality, isothermal, out } => {
            let flags = LiftFlags { curvature, minimality, isothermal };
            if input.extension().is_some_and(|e| e == "csv") {
                let grid = parse_grid_csv(&read(&input)?)?;
                verified("lift", Default::default(), &out, |ck, o| {
                    commands::lift(LiftInput::Grid(grid), flags, ck, o)
                })
            } else {
                let doc = load_spec(&input)?;
                verified("lift", doc.tolerances.clone(), &out, |ck, o| {
                    commands::lift(LiftInput::Spec(&doc), flags, ck, o)
                })
            }
        }
        Command::Bjorling { spec, action, out } => {
            let doc = load_spec(&spec)?;
            let action = match action {
                ActionArg::Check => Action::Check,
                ActionArg::Solve => Action::Solve,
                ActionArg::Nonunique => Action::Nonunique,
            };
            verified("bjorling", doc.tolerances.clone(), &out, |ck, o| commands::bjorling(&doc, action, ck, o))
        }
        Command::Export { input, format, projection, out } => {
            let format: Format = format.parse()?;
            let projection: Projection = projection.parse()?;
            let table = NodeTable::parse_csv(&read(&input)?)?;
            let text = match format {
                Format::Csv => table.to_csv(),
                Format::Obj => table.to_obj(projection),
            };
            write(&out, &text)?;
            Ok(EXIT_PASS)
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_DATA } else { EXIT_PASS };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("chebylift: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_map() {
        assert_eq!(CliError::Lib(Error::NotMinimal { sup_h: 1.0 }).exit_code(), EXIT_VERIFY);
        assert_eq!(CliError::Lib(Error::UnknownFormat("x".into())).exit_code(), EXIT_DATA);
        let io = std::io::Error::new(std::io::ErrorKind::NotFound, "gone");
        assert_eq!(CliError::Io { path: "a".into(), source: io }.exit_code(), EXIT_IO);
    }

    #[test]
    fn error_kind_is_variant_name() {
        assert_eq!(error_kind(&Error::EmptyOverlap), "EmptyOverlap");
        assert_eq!(error_kind(&Error::NotMinimal { sup_h: 1.0 }), "NotMinimal");
        assert_eq!(error_kind(&Error::BadInput("x".into())), "BadInput");
    }

    #[test]
    fn output_names() {
        assert_eq!(output_path(Path::new("out/crit"), "grid.csv"), PathBuf::from("out/crit_grid.csv"));
    }

    #[test]
    fn bad_usage_is_a_data_error() {
        assert_eq!(run(["chebylift", "frobnicate"]), EXIT_DATA);
    }
}
