use std::path::PathBuf;

use thiserror::Error;

use crate::hypergraph::NodeId;

pub type Result<T, E = HyperError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HyperError {
    #[error("hypergraph must contain at least one node")]
    NoNodes,
    #[error("node id {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("hyperedge {index} is empty")]
    EmptyHyperedge { index: usize },
    #[error("seed budget K={k} must lie in 1..={node_count}")]
    InvalidBudget { k: usize, node_count: usize },
    #[error("seed set must not be empty")]
    EmptySeedSet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("hypergraph has no adjacent node pair")]
    NoAdjacentPair,
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("cannot fill hyperedge {edge} of size {size}: {attempts} draws without completing it")]
    GenerationStalled {
        edge: usize,
        size: usize,
        attempts: usize,
    },
    #[error("dense export limited to {limit} nodes, hypergraph has {node_count}")]
    TooLargeForDenseExport { node_count: usize, limit: usize },
    #[error("report has no rows")]
    EmptyReport,
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HyperError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HyperError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn param(message: impl Into<String>) -> Self {
        HyperError::InvalidParameter(message.into())
    }
}
