//! Decision procedures for 0/1 utilities.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::allocation::{Allocation, Measure};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::{
    build_like_graph, efm_decomposition, maximum_matching, EfmPartition, LikeGraph, Matching,
};
use crate::oracle::{oracle_solve, OracleBudget};
use crate::query::{Query, SolverResult};

use super::buckets::BucketSearch;

fn require_binary(instance: &Instance, operation: &'static str) -> Result<()> {
    if instance.is_binary() {
        Ok(())
    } else {
        Err(Error::WrongUtilityClass {
            operation,
            expected: "binary",
        })
    }
}

pub(crate) fn trivial(instance: &Instance) -> SolverResult {
    SolverResult::yes(Allocation::empty(instance.m_resources()), "trivial", 0)
}

fn matching_allocation(m_resources: usize, matching: &Matching) -> Allocation {
    let mut alloc = Allocation::empty(m_resources);
    for (x, y) in matching.pairs() {
        alloc.assign(y, Some(x));
    }
    alloc
}

/// Envy-free matching allocation, then every `X_S` agent in index order takes
/// the lowest free `Y_L` resource while any remain. `X_S` agents like nothing
/// in `Y_L`, so the result stays envy-free.
pub(crate) fn fill_small_agents(
    m_resources: usize,
    partition: &EfmPartition,
    envy_free: &Matching,
) -> Allocation {
    let mut alloc = matching_allocation(m_resources, envy_free);
    let mut free = partition
        .y_l
        .iter()
        .copied()
        .filter(|&y| envy_free.pair_of_right[y].is_none());
    for &x in &partition.x_s {
        match free.next() {
            Some(y) => alloc.assign(y, Some(x)),
            None => break,
        }
    }
    alloc
}

/// Groups resources by the sorted set of `agents` that like them.
fn bucket_by_liked_set(
    instance: &Instance,
    agents: &[usize],
    resources: &[usize],
) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &r in resources {
        let key = agents
            .iter()
            .copied()
            .filter(|&a| instance.utility(a, r) == 1)
            .collect();
        buckets.entry(key).or_default().push(r);
    }
    buckets
}

/// Every agent in `agents` receives `per_agent` consecutive resources of `pool`.
fn equal_shares(
    m_resources: usize,
    agents: &[usize],
    pool: &[usize],
    per_agent: usize,
) -> Allocation {
    let mut alloc = Allocation::empty(m_resources);
    for (i, &a) in agents.iter().enumerate() {
        for &r in &pool[i * per_agent..(i + 1) * per_agent] {
            alloc.assign(r, Some(a));
        }
    }
    alloc
}

fn enumerate(
    instance: &Instance,
    agents: &[usize],
    buckets: BTreeMap<Vec<usize>, Vec<usize>>,
    measure: Measure,
    t: u64,
    budget: &OracleBudget,
    label: &str,
) -> Result<SolverResult> {
    let mut search = BucketSearch::new(
        instance,
        agents,
        buckets.into_values().collect(),
        measure,
        t,
        budget,
    );
    Ok(match search.run(instance.m_resources())? {
        Some(w) => SolverResult::yes(w, label, search.nodes()),
        None => SolverResult::no(label, search.nodes()),
    })
}

fn as_count(t: u64) -> usize {
    usize::try_from(t).unwrap_or(usize::MAX)
}

/// ESW under binary utilities: `t` copies of every agent must be matched to
/// distinct liked resources.
pub fn solve_binary_esw(instance: &Instance, t: u64) -> Result<SolverResult> {
    let started = Instant::now();
    require_binary(instance, "solve_binary_esw")?;
    if t == 0 {
        return Ok(trivial(instance).timed(started.elapsed()));
    }
    let n = instance.n_agents();
    let m = instance.m_resources();
    if u128::from(t) * n as u128 > m as u128 {
        return Ok(SolverResult::no("binary-esw:counting", 0).timed(started.elapsed()));
    }
    let copies = as_count(t);
    let like = build_like_graph(instance)?;
    let adjacency = (0..n * copies)
        .map(|c| like.neighbors(c / copies).to_vec())
        .collect();
    let graph = LikeGraph::from_adjacency(n * copies, m, adjacency)?;
    let matching = maximum_matching(&graph);
    let result = if matching.len() == n * copies {
        let mut alloc = Allocation::empty(m);
        for (c, y) in matching.pairs() {
            alloc.assign(y, Some(c / copies));
        }
        SolverResult::yes(alloc, "binary-esw:matching", 0)
    } else {
        SolverResult::no("binary-esw:matching", 0)
    };
    Ok(result.timed(started.elapsed()))
}

/// USW under binary utilities, fixed-parameter tractable in `t`.
pub fn solve_binary_usw(
    instance: &Instance,
    t: u64,
    budget: &OracleBudget,
) -> Result<SolverResult> {
    let started = Instant::now();
    require_binary(instance, "solve_binary_usw")?;
    if t == 0 {
        return Ok(trivial(instance).timed(started.elapsed()));
    }
    let graph = build_like_graph(instance)?;
    let (partition, envy_free) = efm_decomposition(&graph);
    let m = instance.m_resources();
    let x_l = &partition.x_l;

    let result = if x_l.is_empty() {
        SolverResult::no("binary-usw:empty-x_l", 0)
    } else if x_l.len() as u64 >= t {
        SolverResult::yes(matching_allocation(m, &envy_free), "binary-usw:matching", 0)
    } else {
        // Only Y_L resources liked by someone matter; X_S agents like none of them.
        let mut buckets = bucket_by_liked_set(instance, x_l, &partition.y_l);
        buckets.remove(&Vec::new());
        let per_agent = as_count(t);
        let big = buckets
            .values()
            .find(|pool| pool.len() as u128 > u128::from(t) * u128::from(t));
        match big {
            Some(pool) => SolverResult::yes(
                equal_shares(m, x_l, pool, per_agent),
                "binary-usw:bucket",
                0,
            ),
            None => enumerate(
                instance,
                x_l,
                buckets,
                Measure::Usw,
                t,
                budget,
                "binary-usw:enumeration",
            )?,
        }
    };
    Ok(result.timed(started.elapsed()))
}

/// SIZE under binary utilities, fixed-parameter tractable in `t`.
pub fn solve_binary_size(
    instance: &Instance,
    t: u64,
    budget: &OracleBudget,
) -> Result<SolverResult> {
    let started = Instant::now();
    require_binary(instance, "solve_binary_size")?;
    if t == 0 {
        return Ok(trivial(instance).timed(started.elapsed()));
    }
    let graph = build_like_graph(instance)?;
    let (partition, envy_free) = efm_decomposition(&graph);
    let n = instance.n_agents();
    let m = instance.m_resources();

    let result = if (partition.y_l.len() as u64) < t {
        SolverResult::no("binary-size:few-y_l", 0)
    } else if n as u64 > t {
        SolverResult::yes(
            fill_small_agents(m, &partition, &envy_free),
            "binary-size:matching",
            0,
        )
    } else {
        // here n <= t <= |Y_L|, so t * n cannot overflow
        let per_agent = as_count(t);
        let cap = per_agent * n;
        let agents: Vec<usize> = (0..n).collect();
        let buckets = bucket_by_liked_set(instance, &agents, &partition.y_l);
        match buckets.values().find(|pool| pool.len() >= cap) {
            Some(pool) => SolverResult::yes(
                equal_shares(m, &agents, pool, per_agent),
                "binary-size:bucket",
                0,
            ),
            None => enumerate(
                instance,
                &agents,
                buckets,
                Measure::Size,
                t,
                budget,
                "binary-size:enumeration",
            )?,
        }
    };
    Ok(result.timed(started.elapsed()))
}

/// MCAR under binary utilities. `t = 1` compares `|X|` with `|Y_L|`; larger
/// thresholds go to the exhaustive oracle.
pub fn solve_binary_mcar(
    instance: &Instance,
    t: u64,
    budget: &OracleBudget,
) -> Result<SolverResult> {
    let started = Instant::now();
    require_binary(instance, "solve_binary_mcar")?;
    let result = match t {
        0 => trivial(instance),
        1 => {
            let graph = build_like_graph(instance)?;
            let (partition, envy_free) = efm_decomposition(&graph);
            if instance.n_agents() <= partition.y_l.len() {
                let alloc = fill_small_agents(instance.m_resources(), &partition, &envy_free);
                SolverResult::yes(alloc, "binary-mcar:one-each", 0)
            } else {
                SolverResult::no("binary-mcar:one-each", 0)
            }
        }
        _ => {
            let query = Query::new(instance.clone(), Measure::Mcar, t);
            return oracle_solve(&query, budget);
        }
    };
    Ok(result.timed(started.elapsed()))
}
