use thiserror::Error;

use crate::network::{LinkId, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("segment {segment} out of range for a network with {segments} segments")]
    SegmentOutOfRange { segment: usize, segments: usize },

    #[error("node {node} out of range for a network of {num_nodes} nodes")]
    NodeOutOfRange { node: NodeId, num_nodes: usize },

    #[error("invalid Schmidt coefficients ({lambda1}, {lambda2}): {reason}")]
    InvalidSchmidt {
        lambda1: f64,
        lambda2: f64,
        reason: &'static str,
    },

    #[error("no live link with id {0}")]
    MissingLink(LinkId),

    #[error("link {0} passed as both swap operands")]
    Aliasing(LinkId),

    #[error("swap topology error: {0}")]
    SwapTopology(String),

    #[error("ideal swap requires maximally entangled inputs, got lambda2 = {0}")]
    NotMaximallyEntangled(f64),

    #[error("degenerate link between node {0} and itself")]
    DegenerateLink(NodeId),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("plan corruption: {0}")]
    PlanCorruption(String),
}

impl Error {
    /// True for errors caused by bad caller-supplied parameters rather than
    /// by a failure while running.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidTopology(_)
                | Error::InvalidSchmidt { .. }
                | Error::Domain(_)
                | Error::Range(_)
                | Error::DegenerateLink(_)
        )
    }
}
