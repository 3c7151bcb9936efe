//! Library side of the `efpa` tool: documents, gadget arguments and the
//! benchmark runner, shared by the binary and its tests.

pub mod bench;
pub mod document;
pub mod gadget;

use std::fmt;
use std::time::Duration;

use efpa_core::{Error, Instance, Measure, OracleBudget, SolverResult, Violation};
use serde::Serialize;

/// Why a command could not produce an answer.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget {
        nodes_explored: u64,
        message: String,
    },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget { .. } => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) | Failure::Budget { message: msg, .. } => f.write_str(msg),
        }
    }
}

impl std::error::Error for Failure {}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { nodes_explored, .. } => Failure::Budget {
                nodes_explored,
                message: e.to_string(),
            },
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub fn budget(max_owner_vectors: u64, timeout_secs: f64) -> Result<OracleBudget, Failure> {
    if !(timeout_secs.is_finite() && timeout_secs > 0.0) {
        return Err(Failure::Usage(format!(
            "timeout must be positive, got {timeout_secs}"
        )));
    }
    Ok(OracleBudget::new(
        max_owner_vectors,
        Duration::from_secs_f64(timeout_secs),
    )?)
}

/// The `--json` result object of `efpa solve`.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub answer: String,
    pub algorithm_used: String,
    pub nodes_explored: u64,
    pub elapsed_ms: f64,
}

impl SolveReport {
    pub fn from_result(result: &SolverResult) -> Self {
        SolveReport {
            answer: result.answer.to_string(),
            algorithm_used: result.stats.algorithm_used.clone(),
            nodes_explored: result.stats.nodes_explored,
            elapsed_ms: result.stats.elapsed.as_secs_f64() * 1e3,
        }
    }
}

/// The check behind `efpa verify`, on document texts.
pub fn verify_documents(
    instance_json: &str,
    allocation_json: &str,
    measure: Measure,
    threshold: u64,
) -> Result<Option<Violation>, Failure> {
    let instance = document::parse_instance(instance_json)?;
    verify_allocation_json(&instance, allocation_json, measure, threshold)
}

pub fn verify_allocation_json(
    instance: &Instance,
    allocation_json: &str,
    measure: Measure,
    threshold: u64,
) -> Result<Option<Violation>, Failure> {
    let allocation = document::parse_allocation(allocation_json, instance)?;
    Ok(efpa_core::verify(
        instance,
        &allocation,
        measure,
        threshold,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_reports_the_first_envy() {
        let inst = r#"{"utilities": [[1, 1, 1], [1, 1, 1]]}"#;
        let violation =
            verify_documents(inst, r#"{"owner": [0, 0, 1]}"#, Measure::Size, 3).unwrap();
        assert_eq!(violation.unwrap().to_string(), "agent 1 envies agent 0");
        let fine = verify_documents(inst, r#"{"owner": [0, null, 1]}"#, Measure::Size, 2).unwrap();
        assert!(fine.is_none());
        assert!(matches!(
            verify_documents(inst, r#"{"owner": [0]}"#, Measure::Size, 1),
            Err(Failure::Usage(_))
        ));
    }

    #[test]
    fn budget_errors_map_to_exit_three() {
        let e = Error::BudgetExceeded {
            limit: efpa_core::BudgetLimit::OwnerVectors(5),
            nodes_explored: 0,
        };
        assert_eq!(Failure::from(e).exit_code(), 3);
        assert_eq!(
            Failure::from(Error::InvalidParameter("x".into())).exit_code(),
            2
        );
        assert!(budget(10, 0.0).is_err());
        assert!(budget(0, 1.0).is_err());
    }
}
