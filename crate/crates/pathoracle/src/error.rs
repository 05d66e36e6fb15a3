use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("graph is disconnected: no route from vertex {vertex}")]
    Disconnected { vertex: VertexId },

    #[error("pair ({u}, {v}) is not stored in the oracle")]
    PairNotStored { u: VertexId, v: VertexId },

    #[error("no path from {u} to {v}")]
    NoPath { u: VertexId, v: VertexId },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
