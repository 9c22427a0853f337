//! Command-line front end for the `t237` crate.
//!
//! [`run`] takes an argument vector and returns what the process should print
//! and its exit code, so the binary and the tests share one code path.

pub mod cli;
mod commands;
pub mod report;
pub mod schema;

use clap::Parser;
use thiserror::Error;

use crate::cli::Cli;
use crate::report::Report;

/// Default truncation order for series and tables.
pub const DEFAULT_TRUNCATION: usize = 150;
pub const TRUNCATION_VAR: &str = "T237_TRUNCATION";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// What the process prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub truncation: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

impl Settings {
    /// Reads the truncation order from a raw environment value.
    pub fn from_env_value(value: Option<&str>) -> Result<Self, CliError> {
        match value {
            None => Ok(Settings::default()),
            Some(v) => match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(Settings { truncation: n }),
                _ => Err(CliError::Usage(format!(
                    "{TRUNCATION_VAR} must be a positive integer, got {v:?}"
                ))),
            },
        }
    }
}

/// Runs with settings taken from the process environment.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var(TRUNCATION_VAR).ok();
    match Settings::from_env_value(env.as_deref()) {
        Ok(s) => run_with(argv, s),
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn run_with<I, T>(argv: I, settings: Settings) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json = cli.json;
    let (name, args) = cli.command.describe();
    match commands::execute(&cli.command, settings) {
        Ok(results) => {
            let report = Report::ok(name, args, results);
            Outcome {
                code: 0,
                stdout: report.render(json),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = e.exit_code();
            let stderr = format!("error: {e}\n");
            // Domain errors still produce a report so scripted callers see the inputs.
            let stdout = if code == 1 {
                Report::error(name, args, &e.to_string()).render(json)
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr }
        }
    }
}
