use thiserror::Error;

use crate::minvar::MinVarResult;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no edges")]
    NoEdges,

    #[error("weight vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },

    #[error("all weights are zero")]
    ZeroWeights,

    #[error("matrix is not symmetric (max deviation {0:e})")]
    Asymmetric(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("spectrum is not Laplacian realizable: {0}")]
    NotRealizable(String),

    #[error("unsupported graph family: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("exhaustive support search needs {m} edges but the limit is {limit}; use the descent solver")]
    LimitExceeded { m: usize, limit: usize },

    #[error("descent did not converge in {iterations} iterations (eta = {eta:e})")]
    NotConverged {
        iterations: usize,
        eta: f64,
        best: Box<MinVarResult>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
