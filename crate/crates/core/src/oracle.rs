//! Exhaustive ground truth and the normalizations used to reason about
//! envy-free allocations under binary utilities.

use std::time::{Duration, Instant};

use crate::allocation::{is_envy_free, Allocation};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::EfmPartition;
use crate::query::{Query, SolverResult};
use crate::search::OwnerSearch;

/// Default cap on the number of owner vectors an exhaustive search may face.
pub const DEFAULT_MAX_OWNER_VECTORS: u64 = 10_000_000;

/// Resource caps for exhaustive search. `u64::MAX` vectors means "no cap".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_owner_vectors: u64,
    pub max_elapsed: Duration,
}

impl OracleBudget {
    pub fn new(max_owner_vectors: u64, max_elapsed: Duration) -> Result<Self> {
        if max_owner_vectors == 0 || max_elapsed.is_zero() {
            return Err(Error::InvalidParameter(
                "oracle budget caps must be positive".into(),
            ));
        }
        Ok(OracleBudget {
            max_owner_vectors,
            max_elapsed,
        })
    }

    /// Only the wall clock limits the search.
    pub fn time_only(max_elapsed: Duration) -> Result<Self> {
        Self::new(u64::MAX, max_elapsed)
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_owner_vectors: DEFAULT_MAX_OWNER_VECTORS,
            max_elapsed: Duration::from_secs(600),
        }
    }
}

/// Tries every owner vector in lexicographic order (unallocated first, then
/// agents by index) and returns the first envy-free one meeting the threshold.
pub fn oracle_solve(query: &Query, budget: &OracleBudget) -> Result<SolverResult> {
    let started = Instant::now();
    let inst = &query.instance;
    let resources: Vec<usize> = (0..inst.m_resources()).collect();
    let candidates: Vec<Option<usize>> = std::iter::once(None)
        .chain((0..inst.n_agents()).map(Some))
        .collect();
    let outcome = OwnerSearch::new(
        inst,
        &resources,
        &candidates,
        query.measure,
        query.threshold,
    )
    .run(budget)?;
    let result = match outcome.witness {
        Some(w) => SolverResult::yes(w, "oracle", outcome.vectors_covered),
        None => SolverResult::no("oracle", outcome.vectors_covered),
    };
    Ok(result.timed(started.elapsed()))
}

/// Shrinks an envy-free allocation under binary utilities: an agent with a
/// positive bundle keeps only its lowest-index liked resource, every other
/// agent keeps nothing. The result is envy-free and induces an envy-free
/// matching of the like-graph.
pub fn normalize_ef_allocation(instance: &Instance, allocation: &Allocation) -> Result<Allocation> {
    if !instance.is_binary() {
        return Err(Error::WrongUtilityClass {
            operation: "normalize_ef_allocation",
            expected: "binary",
        });
    }
    if !is_envy_free(instance, allocation)? {
        return Err(Error::NotEnvyFree("normalize_ef_allocation"));
    }
    let mut out = Allocation::empty(instance.m_resources());
    let mut kept = vec![false; instance.n_agents()];
    for (r, owner) in allocation.owners().iter().enumerate() {
        if let Some(a) = *owner {
            if !kept[a] && instance.utility(a, r) == 1 {
                kept[a] = true;
                out.assign(r, Some(a));
            }
        }
    }
    Ok(out)
}

/// Every agent of `X_S` has a zero-value bundle and every allocated resource
/// lies in `Y_L`.
pub fn check_ef_property(
    instance: &Instance,
    allocation: &Allocation,
    partition: &EfmPartition,
) -> Result<bool> {
    allocation.check(instance)?;
    for (r, owner) in allocation.owners().iter().enumerate() {
        if let Some(a) = *owner {
            if !partition.in_y_l(r) {
                return Ok(false);
            }
            if !partition.in_x_l(a) && instance.utility(a, r) > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
