//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A geometry description is malformed (degenerate torus basis,
    /// non-positive Klein bottle dimensions, unknown tag, ...).
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// A point does not satisfy the chart invariants of its geometry.
    #[error("invalid point for {geometry}: {reason}")]
    InvalidPoint { geometry: String, reason: String },

    /// A chart operation was asked for a point beyond the radius where
    /// the chart is injective.
    #[error("point outside injectivity radius: {0}")]
    OutsideInjectivityRadius(String),

    /// A normal-coordinate ball radius too large for the requested chart
    /// comparison.
    #[error("chart radius too large: {0}")]
    ChartRadiusTooLarge(String),

    /// Terminal count outside the supported range of an operation.
    #[error("unsupported terminal count {n}: {reason}")]
    TerminalCount { n: usize, reason: String },

    /// Quotient-space lift enumeration grew past the hard cap.
    #[error("lift assignment cap exceeded: {0}")]
    LiftCapExceeded(String),

    /// Text input could not be parsed. Positions are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
