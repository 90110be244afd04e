//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, parsing, and size guards.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid metric space: {0}")]
    InvalidSpace(String),

    #[error("triangle inequality violated at points ({i}, {j}, {k}): d[{i}][{k}] > d[{i}][{j}] + d[{j}][{k}]")]
    TriangleViolation { i: usize, j: usize, k: usize },

    #[error("invalid random variable: {0}")]
    InvalidRandomVariable(String),

    #[error("invalid law: {0}")]
    InvalidLaw(String),

    #[error("invalid coupling or chain law: {0}")]
    InvalidChain(String),

    #[error("operands live on different metric spaces")]
    SpaceMismatch,

    #[error("marginals do not match: {0}")]
    MarginalMismatch(String),

    #[error("cannot parse metric descriptor {0:?}")]
    ParseDescriptor(String),

    #[error("cannot parse gauge {0:?}")]
    ParseGauge(String),

    #[error("{what} refused for size {got} (limit {limit})")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("descriptor {0} requires float mode")]
    FloatModeRequired(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("infeasible generation profile: {0}")]
    InfeasibleProfile(String),

    #[error("instance file: {0}")]
    InstanceFormat(String),

    #[error("no {kind} named {name:?} in instance file")]
    MissingEntry { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
