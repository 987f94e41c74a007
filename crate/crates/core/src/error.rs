use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown gate `{name}` at line {line}")]
    UnknownGate { name: String, line: usize },
    #[error("qubit index {index} out of range for width {width}")]
    QubitOutOfRange { index: usize, width: usize },
    #[error("gate {gate} uses qubit {qubit} twice")]
    DuplicateQubit { gate: String, qubit: usize },
    #[error("circuit width {width} exceeds the simulation limit of {limit} qubits")]
    WidthLimit { width: usize, limit: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("chunk size nc={nc} is infeasible: {reason}")]
    InfeasibleBlocking { nc: usize, reason: String },
    #[error("invalid chunk layout: {0}")]
    InvalidLayout(String),
    #[error("no cut plan within {max_cuts} cuts satisfies width <= {max_width} and <= {max_subcircuits} subcircuits")]
    InfeasibleCut {
        max_width: usize,
        max_subcircuits: usize,
        max_cuts: usize,
    },
    #[error("cut search gave up after exploring {explored} partial plans at {cuts} cuts")]
    CutSearchLimit { explored: u64, cuts: usize },
    #[error("invalid cuts: {0}")]
    InvalidCuts(String),
    #[error("missing variant result for {0}")]
    MissingVariant(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("simulation of {key} failed: {source}")]
    Evaluation {
        key: String,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
