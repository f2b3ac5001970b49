//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("numerical kernel failed to converge: {0}")]
    ConvergenceFailure(&'static str),

    #[error("matrix is not complex symmetric: |S - S^T|_F = {deviation:.3e} exceeds {tol:.3e}")]
    NotSymmetric { deviation: f64, tol: f64 },

    #[error("matrix is zero, largest singular value undefined")]
    ZeroMatrix,

    #[error("two-photon state matrix is zero and cannot be normalized")]
    ZeroState,

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("{what} of size {size} exceeds the supported limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("photon numbers differ: {input} in, {output} out")]
    PhotonNumberMismatch { input: usize, output: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("need at least 2 modes, got {0}")]
    TooFewModes(usize),

    #[error("rescaling impossible: target weight on diagonal index {index} has no support in the input state")]
    SupportMismatch { index: usize },

    #[error("infeasible by the rank rule: {0}")]
    InfeasibleRank(String),

    #[error("oracle verification failed: {0}")]
    VerificationFailure(String),

    #[error("herald multiplicities sum to {got}, expected n - 2 = {expected}")]
    MultiplicityMismatch { got: usize, expected: usize },

    #[error("herald signal carries {got} photons, expected n - 2 = {expected}")]
    SignalMismatch { got: usize, expected: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
