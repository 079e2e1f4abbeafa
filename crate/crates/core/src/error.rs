use std::fmt;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Position inside a bundle file, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid slot pattern: {0}")]
    InvalidSlots(String),

    #[error("malformed data: {0}")]
    Shape(String),

    #[error("bilinear form is degenerate")]
    Degenerate,

    /// A constructor checked its input and the input failed.
    #[error("{what}: input failed verification")]
    Refused { what: String, report: Box<Report> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Two independent computations that must agree did not.
    #[error("internal consistency failure (this is a bug): {0}")]
    Internal(String),

    #[error("search space has {size} candidates, budget is {budget}")]
    Budget { size: u128, budget: u128 },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: Position, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn refused(what: impl Into<String>, report: Report) -> Self {
        Error::Refused { what: what.into(), report: Box::new(report) }
    }

    pub fn report(&self) -> Option<&Report> {
        match self {
            Error::Refused { report, .. } => Some(report),
            _ => None,
        }
    }
}

pub(crate) fn ensure_dim(what: &str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::dims(format!("{what}: expected {expected}, got {got}")))
    }
}
