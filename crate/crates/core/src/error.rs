use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the quantum primitives, channels and protocol layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported qubit count {0} (only 1 and 2 qubits are modeled)")]
    UnsupportedQubitCount(usize),
    #[error("expected {expected} qubit(s), got {actual}")]
    QubitCount { expected: usize, actual: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid qubit index {0} (expected 1 or 2)")]
    InvalidQubit(usize),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),
    #[error("operator is not unitary: max |UU† - I| = {0:e}")]
    NotUnitary(f64),
    #[error("matrix is not Hermitian: max |M - M†| = {0:e}")]
    NotHermitian(f64),
    #[error("trace {0} is not 1")]
    BadTrace(f64),
    #[error("matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("cannot take the tensor product of a state and an operator")]
    MixedOperands,
    #[error("input is not a computational basis state")]
    NotBasisState,
    #[error("pair is not the singlet (fidelity {0})")]
    NotSinglet(f64),
    #[error("ensemble probabilities sum to {0}, not 1")]
    BadDistribution(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
