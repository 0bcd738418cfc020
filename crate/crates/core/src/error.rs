use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),

    #[error("invalid cube: {0}")]
    InvalidCube(String),

    #[error("cube {0} is not a minterm")]
    NotAMinterm(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid pivot {pivot} for R gate on {cube}")]
    InvalidPivot { cube: String, pivot: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("gate `{0}` cannot be simulated on this path")]
    NonClassicalGate(String),

    #[error("state vector needs {0} qubits, limit is {1}")]
    QubitBudget(usize, usize),

    #[error("control register not restored for input {0}")]
    ControlNotRestored(String),

    #[error("circuit is not diagonal on input {0}")]
    NotDiagonal(String),

    #[error("circuit kind or arity mismatch")]
    CircuitMismatch,

    #[error("unknown qubit `{0}`")]
    UnknownQubit(String),

    #[error("invalid hardware model: {0}")]
    InvalidHardware(String),

    #[error("coupling graph is disconnected")]
    Disconnected,

    #[error("cover does not compute the requested function")]
    InvalidCover,

    #[error("no candidate covers")]
    NoCandidates,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
