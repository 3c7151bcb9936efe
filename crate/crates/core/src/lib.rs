//! Envy-free partial allocations of indivisible resources: instances,
//! verification, matching structure of binary instances, decision procedures
//! for the four welfare measures, an exhaustive oracle, and hardness gadgets.

pub mod allocation;
pub mod error;
pub mod generators;
pub mod instance;
pub mod matching;
pub mod oracle;
pub mod query;
mod search;
pub mod solvers;

pub use allocation::{
    first_envy, is_envy_free, measure_value, verify, Allocation, Measure, Violation,
};
pub use error::{BudgetLimit, Error, Result};
pub use instance::{classify_utilities, Instance, UtilityClass, ValueClass, MAX_UTILITY};
pub use oracle::{oracle_solve, OracleBudget};
pub use query::{Answer, Query, SolveStats, SolverResult};
pub use solvers::{solve, solve_with_budget, AlgorithmChoice};
