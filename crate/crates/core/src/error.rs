use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} does not exist")]
    MissingVertex(VertexId),

    #[error("edge {0} does not exist")]
    MissingEdge(EdgeId),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),

    #[error("invalid subgraph mapping: {0}")]
    InvalidMapping(String),

    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("enumeration refused: {count} items exceeds budget {budget}")]
    BudgetRefused { count: u128, budget: u128 },

    #[error("search budget of {budget} nodes exhausted; genus lies in [{lo}, {hi}]")]
    SearchBudget { budget: u64, lo: usize, hi: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("scaffold construction: {0}")]
    Scaffold(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
