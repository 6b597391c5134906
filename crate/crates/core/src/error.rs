use thiserror::Error;

/// Errors produced while validating inputs, solving, or synthesizing circuits.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not connected (vertex {unreached} unreachable from 0)")]
    NotConnected { unreached: usize },
    #[error("graph is not a cactus: edge ({u},{v}) lies on two cycles")]
    NotACactus { u: usize, v: usize },
    #[error("graph too large for exhaustive search: n = {n}, limit = {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("path does not cover vertex {vertex}")]
    PathNotCovering { vertex: usize },
    #[error("no good parameter set found after {trials} trials")]
    SearchExhausted { trials: usize },
    #[error("cascade {cascade}: no exclusion vertex keeps the remaining qubits connected")]
    DisconnectedRemainder { cascade: usize },
    #[error("{n} qubits exceeds the dense simulation cap of {cap}")]
    TooManyQubits { n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("two-qubit gate on non-adjacent physical qubits ({a},{b})")]
    NotAdjacent { a: usize, b: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
