use thiserror::Error;

/// Errors raised by the computational routes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph parameters: n = {n}, k = {k} (need 1 <= k <= n/2)")]
    InvalidGraph { n: usize, k: usize },

    #[error("dense capacity exceeded: {requested} vertices > cap {cap}")]
    Capacity { requested: u64, cap: u64 },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypergeometric pole: (c)_m vanishes at m = {m}")]
    Pole { m: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("eigenvalue {value} could not be assigned to a unique level")]
    Grouping { value: f64 },

    #[error("correlation eigenvalue {0} outside [0, 1]")]
    SpectrumRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
