use std::fmt;
use std::time::Duration;

use crate::allocation::{Allocation, Measure};
use crate::instance::Instance;

/// Is there an envy-free allocation whose `measure` reaches `threshold`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub instance: Instance,
    pub measure: Measure,
    pub threshold: u64,
}

impl Query {
    pub fn new(instance: Instance, measure: Measure, threshold: u64) -> Self {
        Query {
            instance,
            measure,
            threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStats {
    pub algorithm_used: String,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Outcome of a decision procedure. A `Yes` always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverResult {
    pub answer: Answer,
    pub witness: Option<Allocation>,
    pub stats: SolveStats,
}

impl SolverResult {
    pub(crate) fn yes(witness: Allocation, algorithm: impl Into<String>, nodes: u64) -> Self {
        SolverResult {
            answer: Answer::Yes,
            witness: Some(witness),
            stats: SolveStats {
                algorithm_used: algorithm.into(),
                nodes_explored: nodes,
                elapsed: Duration::ZERO,
            },
        }
    }

    pub(crate) fn no(algorithm: impl Into<String>, nodes: u64) -> Self {
        SolverResult {
            answer: Answer::No,
            witness: None,
            stats: SolveStats {
                algorithm_used: algorithm.into(),
                nodes_explored: nodes,
                elapsed: Duration::ZERO,
            },
        }
    }

    pub(crate) fn timed(mut self, elapsed: Duration) -> Self {
        self.stats.elapsed = elapsed;
        self
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}
