use std::fmt;

use thiserror::Error;

/// Which of the two defining compositions an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Bottom,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Top => f.write_str("top"),
            Side::Bottom => f.write_str("bottom"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeaweedError {
    #[error("half-rank n must be positive")]
    ZeroRank,

    #[error("{side} composition has a zero part")]
    ZeroPart { side: Side },

    #[error("{side} sum {sum} > {n}")]
    CompositionOverflow { side: Side, sum: usize, n: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("ambient sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("location ({row},{col}) is outside the {size}x{size} matrix")]
    OutOfRange { row: usize, col: usize, size: usize },

    #[error("location ({row},{col}) is not admissible for this seaweed")]
    NotAdmissible { row: usize, col: usize },

    #[error("location ({row},{col}) lies below the antidiagonal (row + col > {bound})")]
    BelowAntidiagonal { row: usize, col: usize, bound: usize },

    #[error("seaweed has index {index}, not 1")]
    IndexNotOne { index: usize },

    #[error("algebra dimension {dimension} is even")]
    EvenDimension { dimension: usize },

    #[error("gcd index formula needs {0}")]
    GcdPrecondition(String),

    /// An internal invariant failed. Always a bug, never user input.
    #[error("consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = SeaweedError> = std::result::Result<T, E>;
