use thiserror::Error;

use crate::graph::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("point {point} lies outside the required support")]
    SupportViolation { point: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid factorization type: {0}")]
    InvalidType(String),

    #[error("formula used outside its hypothesis: {0}")]
    FormulaHypothesis(String),

    #[error("degree {d} exceeds the brute-force cap {cap}; raise the cap explicitly to proceed")]
    CapExceeded { d: usize, cap: usize },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("tuple is not a factorization of the given cycle")]
    NotAFactorization,

    #[error("not a factorization graph: {0}")]
    Characterization(Violation),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("invalid rooted tree: {0}")]
    InvalidTree(String),

    #[error("codec undefined on the trivial tree")]
    TrivialTree,

    #[error("invalid Prüfer data: {0}")]
    InvalidPrufer(String),

    #[error("column {column}: beta {beta} exceeds the node count {bound} of its parent vertex")]
    BetaOutOfRange {
        column: usize,
        beta: usize,
        bound: usize,
    },

    #[error("invalid vertex data: {0}")]
    InvalidVertexData(String),

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    /// A structural identity that must hold for valid inputs did not.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
