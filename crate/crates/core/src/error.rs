use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("qubit count must be at least {min}, got {got}")]
    TooFewQubits { min: usize, got: usize },

    #[error("the identity is not a valid rotation axis")]
    IdentityAxis,

    #[error("cannot parse Pauli string {0:?}")]
    PauliParse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("rejection sampling gave up after {tries} draws")]
    CapExhausted { tries: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("cx control and target are both qubit {0}")]
    DuplicateOperand(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unsupported gate `{name}`")]
    UnsupportedGate { line: usize, name: String },

    #[error("MCR check failed: {0}")]
    McrViolation(String),

    #[error("dense simulation limited to {cap} qubits, got {n}")]
    TooLarge { n: usize, cap: usize },

    #[error("malformed PBC document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_qubits(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::QubitMismatch { left, right })
    }
}
