//! The `nodoid` command-line tool: `check`, `profile`, `trace` and `asym`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<nodoid_core::SolveError> for CliError {
    fn from(e: nodoid_core::SolveError) -> Self {
        use nodoid_core::SolveError as S;
        match e {
            S::Infeasible { .. } | S::NotFound { .. } | S::ConstraintViolation { .. } => {
                CliError::Infeasible(e.to_string())
            }
            S::Options(msg) => CliError::Usage(msg),
            S::Steady(
                nodoid_core::Error::OutsideOmega0 { .. }
                | nodoid_core::Error::AngleOutOfRange { .. },
            ) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<nodoid_core::Error> for CliError {
    fn from(e: nodoid_core::Error) -> Self {
        nodoid_core::SolveError::Steady(e).into()
    }
}

/// What a command produced: text for the output file or stdout, notes for
/// stderr, and the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub body: String,
    pub notes: Vec<String>,
    pub code: i32,
}
