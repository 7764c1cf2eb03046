use std::fmt;

/// Errors surfaced by game primitives, learners, and schedules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vector or matrix dimensions do not agree.
    DimensionMismatch { expected: usize, found: usize },
    /// An input contained NaN or an infinity.
    NonFinite,
    /// A payoff entry fell outside the unit range `[-1, 1]`.
    EntryOutOfRange { row: usize, col: usize },
    /// A weight vector is not a valid point of the probability simplex.
    BadStrategy(&'static str),
    /// A zero-dimensional object was requested.
    EmptyDimension,
    /// The LP solver failed to terminate; never expected for bounded inputs.
    Solver(&'static str),
    /// Round index outside `1..=horizon`.
    RoundOutOfRange { t: u64, horizon: u64 },
    /// Horizon too small for the requested construction.
    HorizonTooSmall { horizon: u64, min: u64 },
    /// A schedule definition is internally inconsistent.
    Schedule(&'static str),
    /// Operation called on a learner kind that does not support it.
    Unsupported(&'static str),
    /// Decide/feed called out of order within a round.
    Protocol(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonFinite => write!(f, "non-finite input"),
            Error::EntryOutOfRange { row, col } => {
                write!(f, "payoff entry ({row}, {col}) outside [-1, 1]")
            }
            Error::BadStrategy(why) => write!(f, "invalid mixed strategy: {why}"),
            Error::EmptyDimension => write!(f, "dimension must be at least 1"),
            Error::Solver(why) => write!(f, "LP solver fault: {why}"),
            Error::RoundOutOfRange { t, horizon } => {
                write!(f, "round {t} outside 1..={horizon}")
            }
            Error::HorizonTooSmall { horizon, min } => {
                write!(f, "horizon {horizon} too small, need at least {min}")
            }
            Error::Schedule(why) => write!(f, "invalid schedule: {why}"),
            Error::Unsupported(why) => write!(f, "unsupported operation: {why}"),
            Error::Protocol(why) => write!(f, "protocol violation: {why}"),
        }
    }
}

impl std::error::Error for Error {}
