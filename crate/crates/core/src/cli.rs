//! Command-line front end. Every command reads one input file (plus flags) and
//! writes one canonical JSON document to stdout.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when an internal invariant
//! fails. Errors are reported on stderr as a single JSON line.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::arrangement::{self, parse_arrangement, Arrangement};
use crate::error::{Error, Result};
use crate::oracle::{self, SupportSource};
use crate::torus::{self, FactoredTorusFunction, SupportSet, TorsionPoint};
use crate::zeta::{self, ResolutionData, SpecializationMatrix};

#[derive(Parser, Debug)]
#[command(
    name = "jumploci",
    version,
    about = "Supports of monodromy zeta data as unions of torsion-translated subtori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection lattice of an arrangement, with dense flags.
    Lattice { file: PathBuf },
    /// Dense edges of an arrangement.
    Dense { file: PathBuf },
    /// Support of an arrangement via its dense edges.
    Support { file: PathBuf },
    /// Resolution data of a line arrangement in the plane.
    AutoResolve { file: PathBuf },
    /// Local zeta functions of resolution data.
    Zeta {
        file: PathBuf,
        #[arg(long)]
        stratum: Option<String>,
    },
    /// Support of resolution data via zeta functions.
    SupportZeta { file: PathBuf },
    /// Specialize resolution data by a matrix of naturals.
    Specialize {
        file: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Membership of the torsion point Exp(alpha) in a support.
    Member {
        support: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Simplicity report for the local system Exp(alpha).
    Simple {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Compare the dense-edge and zeta supports of a line arrangement.
    Check { file: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let first_line = e.to_string().lines().next().unwrap_or_default().to_string();
            return failure(1, "usage", &first_line);
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => failure(exit_code(&e), e.kind(), &e.to_string()),
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

fn failure(code: i32, kind: &str, message: &str) -> Outcome {
    let line = json!({ "error": kind, "message": message }).to_string();
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("{line}\n"),
    }
}

fn emit<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_arrangement(path: &Path) -> Result<Arrangement> {
    parse_arrangement(&read(path)?)
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read(path)?)?)
}

enum Input {
    Arrangement(Arrangement),
    Resolution(ResolutionData),
}

/// Arrangement files carry `forms`, resolution files carry `strata`.
fn load_either(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("forms").is_some() {
        Ok(Input::Arrangement(parse_arrangement(&text)?))
    } else if value.get("strata").is_some() {
        Ok(Input::Resolution(serde_json::from_value(value)?))
    } else {
        Err(Error::InvalidInput(format!(
            "{} is neither an arrangement (\"forms\") nor resolution data (\"strata\")",
            path.display()
        )))
    }
}

fn checked_support(s: SupportSet) -> Result<SupportSet> {
    if !s.components().iter().all(|c| c.is_canonical()) {
        return Err(Error::Internal("emitted a non-canonical component".into()));
    }
    if !oracle::dual_stability_check(&s) {
        return Err(Error::Internal("support is not stable under inversion".into()));
    }
    Ok(s)
}

#[derive(Serialize)]
struct StratumZeta<'a> {
    name: &'a str,
    zeta: FactoredTorusFunction,
}

#[derive(Serialize)]
struct AllZeta<'a> {
    strata: Vec<StratumZeta<'a>>,
}

fn execute(command: Command) -> Result<String> {
    match command {
        Command::Lattice { file } => {
            let arr = load_arrangement(&file)?;
            emit(&arrangement::intersection_lattice(&arr)?.to_json())
        }
        Command::Dense { file } => {
            let arr = load_arrangement(&file)?;
            let mut lattice = arrangement::intersection_lattice(&arr)?;
            lattice.edges.retain(|e| e.dense);
            emit(&lattice.to_json())
        }
        Command::Support { file } => {
            let arr = load_arrangement(&file)?;
            emit(&checked_support(oracle::arrangement_support(&arr)?)?)
        }
        Command::AutoResolve { file } => {
            let arr = load_arrangement(&file)?;
            emit(&arrangement::line_arrangement_resolution(&arr)?)
        }
        Command::Zeta { file, stratum } => {
            let data: ResolutionData = load_json(&file)?;
            match stratum {
                Some(name) => {
                    let s = data
                        .stratum(&name)
                        .ok_or_else(|| Error::InvalidInput(format!("no stratum named {name:?}")))?;
                    emit(&zeta::local_zeta(s, data.r())?)
                }
                None => {
                    let strata = data
                        .strata()
                        .iter()
                        .map(|s| {
                            Ok(StratumZeta {
                                name: &s.name,
                                zeta: zeta::local_zeta(s, data.r())?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    emit(&AllZeta { strata })
                }
            }
        }
        Command::SupportZeta { file } => {
            let data: ResolutionData = load_json(&file)?;
            emit(&checked_support(zeta::support_from_resolution(&data)?)?)
        }
        Command::Specialize { file, matrix } => {
            let data: ResolutionData = load_json(&file)?;
            let m: SpecializationMatrix = load_json(&matrix)?;
            emit(&zeta::specialize_resolution(&data, &m)?)
        }
        Command::Member { support, alpha } => {
            let s: SupportSet = load_json(&support)?;
            let p = TorsionPoint::parse_list(&alpha)?;
            emit(&json!({ "member": torus::member(&s, &p)? }))
        }
        Command::Simple { file, alpha } => {
            let p = TorsionPoint::parse_list(&alpha)?;
            let report = match load_either(&file)? {
                Input::Arrangement(a) => oracle::simplicity_report(SupportSource::Arrangement(&a), &p)?,
                Input::Resolution(d) => oracle::simplicity_report(SupportSource::Resolution(&d), &p)?,
            };
            emit(&report)
        }
        Command::Check { file } => {
            let arr = load_arrangement(&file)?;
            emit(&oracle::support_consistency_check(&arr)?)
        }
    }
}
