//! Command-line harness for the game-dynamics simulator: configuration,
//! the round loop, step-size sweeps, verification suites, and CSV/SVG
//! emission.

pub mod config;
pub mod runner;
pub mod svg;
pub mod sweep;
pub mod trace;
pub mod verify;

use std::fmt;

/// Harness-level failures, each mapped to a process exit code.
#[derive(Debug)]
pub enum HarnessError {
    /// Bad configuration or unreadable config file (exit 2).
    Config(String),
    /// Dimension mismatch between schedule and players (exit 3).
    Dimension(String),
    /// Internal solver fault (exit 4).
    Solver(String),
    /// Verification suite failure (exit 1).
    Verify(String),
    /// Filesystem trouble (exit 1).
    Io(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Dimension(_) => 3,
            HarnessError::Solver(_) => 4,
            HarnessError::Verify(_) | HarnessError::Io(_) => 1,
        }
    }
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Config(m) => write!(f, "config error: {m}"),
            HarnessError::Dimension(m) => write!(f, "dimension mismatch: {m}"),
            HarnessError::Solver(m) => write!(f, "solver fault: {m}"),
            HarnessError::Verify(m) => write!(f, "verification failed: {m}"),
            HarnessError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<regretlab_core::Error> for HarnessError {
    fn from(e: regretlab_core::Error) -> Self {
        use regretlab_core::Error;
        match e {
            Error::DimensionMismatch { .. } => HarnessError::Dimension(e.to_string()),
            Error::Solver(_) => HarnessError::Solver(e.to_string()),
            other => HarnessError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}
