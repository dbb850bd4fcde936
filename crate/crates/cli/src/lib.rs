//! Batch front end for `negdep`: scenario documents in, reports out.
//!
//! A [`Report`] embeds the scenario it answers, so feeding a report back to
//! the runner reproduces its verdicts.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub mod golden;
mod run;
pub mod scenario;
pub mod table;

pub use scenario::{Kind, Scenario};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes of the `negdep` binary.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const DOMAIN: u8 = 2;
    pub const TOO_LARGE: u8 = 3;
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Not JSON, or a malformed rational.
    Parse(String),
    /// Well-formed JSON that does not fit the scenario schema.
    Schema(String),
    Domain(negdep::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(negdep::Error::TooLarge { .. }) => exit::TOO_LARGE,
            CliError::Domain(_) => exit::DOMAIN,
            CliError::Parse(_) | CliError::Schema(_) | CliError::Io(_) => exit::INPUT,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Parse(_) => "ParseError".into(),
            CliError::Schema(_) => "SchemaError".into(),
            CliError::Io(_) => "IoError".into(),
            CliError::Domain(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string()
            }
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Parse(m) | CliError::Schema(m) | CliError::Io(m) => m.clone(),
            CliError::Domain(e) => e.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<negdep::Error> for CliError {
    fn from(e: negdep::Error) -> CliError {
        CliError::Domain(e)
    }
}

/// Enumeration caps. One override, when given, replaces every default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub na_pairs: u64,
    pub cells: u64,
    pub bases: u64,
    pub auction: u64,
}

impl Budgets {
    pub fn new(over: Option<u64>) -> Budgets {
        match over {
            Some(b) => Budgets {
                na_pairs: b,
                cells: b,
                bases: b,
                auction: b,
            },
            None => Budgets {
                na_pairs: negdep::DEFAULT_NA_BUDGET,
                cells: negdep::DEFAULT_CELL_BUDGET,
                bases: negdep::DEFAULT_NA_BUDGET,
                auction: negdep::DEFAULT_NA_BUDGET,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub scenario: Scenario,
    pub result: Option<Value>,
    pub error: Option<ErrorReport>,
    /// Wall-clock time; omitted when reports must be byte-reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Runs a parsed scenario. The error, if any, is also recorded in the
/// report.
pub fn run_scenario(
    scenario: Scenario,
    budgets: Budgets,
    timing: bool,
) -> (Report, Option<CliError>) {
    let start = Instant::now();
    let outcome = run::dispatch(&scenario, budgets);
    let elapsed = start.elapsed().as_millis() as u64;
    let (result, err) = match outcome {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e)),
    };
    let report = Report {
        version: VERSION,
        scenario,
        result,
        error: err.as_ref().map(|e| ErrorReport {
            kind: e.kind(),
            message: e.message(),
        }),
        timing_ms: timing.then_some(elapsed),
    };
    (report, err)
}

/// Parses `text` and checks it against the expected kind before running.
pub fn run_text(
    text: &str,
    expected: Option<Kind>,
    budgets: Budgets,
    timing: bool,
) -> Result<(Report, Option<CliError>), CliError> {
    let scenario = scenario::parse(text)?;
    if let Some(k) = expected {
        if scenario.kind() != k {
            return Err(CliError::Schema(format!(
                "scenario kind is {} but the subcommand is {k}",
                scenario.kind()
            )));
        }
    }
    Ok(run_scenario(scenario, budgets, timing))
}
