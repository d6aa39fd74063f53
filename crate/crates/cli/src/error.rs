use std::fmt;
use std::process::ExitCode;

use igfading::Error as CoreError;

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad configuration, grid, flags or input file.
    Input(String),
    /// A numerical method ran out of budget.
    NonConvergence(String),
    /// Every requested family failed to fit.
    NoFit(String),
    /// Simulation disagreed with the analytic distribution.
    Validation(String),
    /// Writing output failed.
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Output(_) => 1,
            CliError::Input(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::NoFit(_) => 4,
            CliError::Validation(_) => 5,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::NonConvergence(m) => write!(f, "numerical failure: {m}"),
            CliError::NoFit(m) => write!(f, "{m}"),
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Output(m) => write!(f, "output error: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            CoreError::AllFitsFailed(_) => CliError::NoFit(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
