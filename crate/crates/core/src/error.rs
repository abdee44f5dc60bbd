use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot combine a {left} scalar with a {right} scalar")]
    BackendMismatch {
        left: &'static str,
        right: &'static str,
    },
    #[error("tolerance must be nonnegative, got {0}")]
    NegativeTolerance(f64),
    #[error("the exact backend only accepts tolerance 0, got {0}")]
    ToleranceOnExact(f64),
    #[error("expected {expected} amplitudes for {m} qubits, got {actual}")]
    LengthMismatch {
        m: usize,
        expected: usize,
        actual: usize,
    },
    #[error("a state needs at least one qubit")]
    NoQubits,
    #[error("{m} qubits exceeds the configured limit of {limit}")]
    TooManyQubits { m: usize, limit: usize },
    #[error("qubit factor {index} is the zero vector")]
    ZeroFactor { index: usize },
    #[error("slot {s} is outside 1..={m}")]
    SlotOutOfRange { s: usize, m: usize },
    #[error("operation needs at least 2 qubits, state has {0}")]
    TooFewQubits(usize),
    #[error("the all-zero vector is not a projective point")]
    ZeroState,
    #[error("operation needs exactly {expected} qubits, state has {actual}")]
    WrongQubitCount { expected: usize, actual: usize },
    #[error("column pair ({i}, {j}) is invalid for width {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: String },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
