use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid parameters (n={n}, k={k}, delta={delta}): violates {violated}")]
    InvalidParams {
        n: usize,
        k: usize,
        delta: usize,
        violated: &'static str,
    },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {gap:e}")]
    Asymmetric { row: usize, col: usize, gap: f64 },

    #[error("order {order} exceeds the cap of {cap} for {what}")]
    OrderCap {
        order: usize,
        cap: usize,
        what: &'static str,
    },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid rewire spec: {0}")]
    InvalidRewire(String),

    #[error("isomorphism search exceeded its budget of {0} nodes")]
    IsomorphismBudget(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
