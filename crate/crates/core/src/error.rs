use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("operator is not Hermitian (phase i^{0})")]
    NonHermitian(u8),

    #[error("invalid lattice parameters: {0}")]
    InvalidParameters(String),

    #[error("lattice is not bipartite: odd cycle through vertex {vertex}")]
    NotBipartite { vertex: usize },

    #[error("malformed cell complex: {0}")]
    MalformedComplex(String),

    #[error("edge {edge} borders an odd number ({count}) of chains; add vertical chains along the odd loops")]
    OddEdgeParity { edge: usize, count: usize },

    #[error("odd edges do not form closed loops (vertex {vertex} has odd degree {degree})")]
    OpenOddEdges { vertex: usize, degree: usize },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("lattice is not locally cubic: {0}")]
    NotLocallyCubic(String),

    #[error("unknown schedule `{0}`")]
    UnknownSchedule(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("round {round} out of range (trace has {available} rounds)")]
    RoundOutOfRange { round: usize, available: usize },

    #[error("qubit {qubit} out of range ({n_qubits} qubits)")]
    InvalidQubit { qubit: usize, n_qubits: usize },

    #[error("stabilizers do not commute (rows {0} and {1})")]
    NonCommuting(usize, usize),

    #[error("coupling group on edge {0} is disconnected")]
    DisconnectedEdgeGroup(usize),

    #[error("syndrome matches no single-qubit error")]
    AmbiguousSyndrome,

    #[error("detection window too short: element {element} referred {references} time(s)")]
    WindowTooShort { element: usize, references: usize },

    #[error("logical operator precondition failed: {0}")]
    LogicalPrecondition(String),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("data checksum mismatch for {name}: expected {expected}, found {found}")]
    Checksum { name: String, expected: String, found: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
