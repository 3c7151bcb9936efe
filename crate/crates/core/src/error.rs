use std::time::Duration;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which resource cap a bounded search ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetLimit {
    /// The search space (or the states visited) exceeded the owner-vector cap.
    OwnerVectors(u64),
    /// The wall-clock cap elapsed before the search finished.
    Elapsed(Duration),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("agent index {agent} out of range (n = {n_agents})")]
    AgentOutOfRange { agent: usize, n_agents: usize },

    #[error("resource index {resource} out of range (m = {m_resources})")]
    ResourceOutOfRange { resource: usize, m_resources: usize },

    #[error("{operation} requires {expected} utilities")]
    WrongUtilityClass {
        operation: &'static str,
        expected: &'static str,
    },

    #[error("{0}: allocation is not envy-free")]
    NotEnvyFree(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0}")]
    UnsupportedAlgorithm(String),

    #[error("search budget exceeded ({limit:?}); answer unknown")]
    BudgetExceeded {
        limit: BudgetLimit,
        nodes_explored: u64,
    },
}

impl Error {
    /// True for every variant that reports a caller mistake rather than an exhausted budget.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::BudgetExceeded { .. })
    }
}
