//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type SimResult<T> = Result<T, SimError>;

#[derive(Debug, Clone, Error)]
pub enum SimError {
    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("two-qubit gate needs two distinct qubits, got {0} twice")]
    DuplicateQubit(usize),
    #[error("bitstring length {got} does not match qubit count {expected}")]
    BitstringLength { expected: usize, got: usize },
    #[error("bitstring may only contain '0' and '1', got {0:?}")]
    InvalidBitstring(char),
    #[error("operation requires an even qubit count, got {0}")]
    OddQubitCount(usize),
    #[error("qubit count must be at least {min}, got {n}")]
    TooFewQubits { n: usize, min: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("state norm {0} is not 1 within tolerance")]
    StateNotNormalized(f64),
    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),
    #[error("layer marks must be strictly increasing and within the gate list")]
    InvalidLayerMarks,
    #[error("parameter vector length {got} does not match expected {expected}")]
    ParamLength { expected: usize, got: usize },
    #[error("threshold {0} must lie strictly between 0 and 1")]
    InvalidThreshold(f64),
    #[error("{what} supports at most {limit} qubits, got {n}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("search cap exceeded while {0}")]
    SearchCapExceeded(&'static str),
    #[error("no convergence: {0}")]
    NoConvergence(&'static str),
    #[error("integrator self-check failed: halving the step still changes the result")]
    IntegratorSelfCheck,
    #[error("circuit still contains entangler gates; decompose it first")]
    NotDecomposed,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("incompatible sizes for recursive initialization: {0}")]
    IncompatibleRecursion(String),
}
