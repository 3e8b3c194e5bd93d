use std::fmt;

use s2contact::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const POLE: i32 = 3;
    pub const FIT: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
    Json(serde_json::Error),
    /// A replayed run produced different bytes.
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::Pole { .. } => exit::POLE,
                Error::NoBracket { .. }
                | Error::PoleCollision { .. }
                | Error::TooManyFailures { .. }
                | Error::BracketFailure { .. }
                | Error::NonConvergence { .. } => exit::FIT,
                Error::Domain(_)
                | Error::Overflow { .. }
                | Error::InsufficientOrder { .. }
                | Error::EmptyBasis { .. }
                | Error::SelectionRule { .. }
                | Error::Schema(_)
                | Error::VersionMismatch { .. } => exit::USAGE,
                Error::Eigensolver(_) => exit::OTHER,
            },
            CliError::Usage(_) => exit::USAGE,
            CliError::Io(_) | CliError::Json(_) | CliError::Mismatch(_) => exit::OTHER,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Json(e) => write!(f, "json error: {e}"),
            CliError::Mismatch(m) => write!(f, "replay mismatch: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}
