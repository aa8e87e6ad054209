use std::path::PathBuf;

use thiserror::Error;

use crate::fuzzy::Region;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("row {row}: {message}")]
    Row { row: usize, message: String },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{0} has zero variance")]
    ZeroVariance(&'static str),

    #[error("degenerate universe [{lo}, {hi}]")]
    DegenerateUniverse { lo: f64, hi: f64 },

    #[error("invalid triangle ({a}, {b}, {c})")]
    InvalidTriangle { a: f64, b: f64, c: f64 },

    #[error("all membership grades are zero")]
    NoMembership,

    #[error("rule base is empty")]
    EmptyRuleBase,

    #[error("duplicate rule for antecedent ({0}, {1})")]
    DuplicateRule(Region, Region),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("normal equations are singular (collinear inputs)")]
    Singular,

    #[error("model file {path}: {message}")]
    Model { path: PathBuf, message: String },

    #[error("unsupported model format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },
}
