use thiserror::Error;

/// Errors raised anywhere in the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected} qubits, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("cannot parse Pauli string: {0}")]
    Parse(String),

    #[error("unknown plaquette id {0}")]
    UnknownPlaquette(usize),

    #[error("plaquette {id} has the wrong kind for this operation ({reason})")]
    PlaquetteKind { id: usize, reason: &'static str },

    #[error("no string path connects plaquette {from} to plaquette {to}")]
    NoPath { from: usize, to: usize },

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("{n} qubits exceeds the dense-simulation limit of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("operator is not Hermitian: {0}")]
    NonHermitian(String),

    #[error("invalid stabilizer generators: {0}")]
    InvalidGenerators(String),

    #[error("projection annihilates the state")]
    ZeroProjection,

    #[error("post-selection has zero overlap with the one-photon-per-mode subspace")]
    EmptyPostSelection,

    #[error("unknown optical mode: {0}")]
    UnknownMode(String),

    #[error("output mode {0} is already occupied")]
    OccupiedOutput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rank-deficient design: {0}")]
    RankDeficient(String),

    #[error("count record is empty")]
    EmptyRecord,

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error("backend capability mismatch: {0}")]
    Capability(String),

    #[error("unknown format: {0}")]
    UnknownFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
