//! Threshold 1 with utilities in {1, 2}.
//!
//! With every value positive, the four measures agree at threshold 1: an
//! envy-free allocation reaches it iff every agent gets something. Such an
//! allocation exists iff one gives every agent exactly one resource, or one
//! gives some agents a single resource worth 2 and the rest exactly two
//! resources. The first shape reduces to the binary one-each test on `u - 1`;
//! the second is searched exhaustively.

use std::time::Instant;

use crate::allocation::Allocation;
use crate::error::{BudgetLimit, Error, Result};
use crate::instance::Instance;
use crate::matching::{build_like_graph, efm_decomposition};
use crate::oracle::OracleBudget;
use crate::query::SolverResult;

use super::binary::fill_small_agents;

fn is_bivalued(instance: &Instance) -> bool {
    instance.rows().flatten().all(|&v| v == 1 || v == 2)
}

pub fn solve_bivalued_t1(instance: &Instance, budget: &OracleBudget) -> Result<SolverResult> {
    let started = Instant::now();
    if !is_bivalued(instance) {
        return Err(Error::WrongUtilityClass {
            operation: "solve_bivalued_t1",
            expected: "{1, 2}-valued",
        });
    }
    let n = instance.n_agents();
    let m = instance.m_resources();

    let shifted = Instance::from_rows(
        instance
            .rows()
            .map(|row| row.iter().map(|&v| u64::from(v) - 1).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )?;
    let graph = build_like_graph(&shifted)?;
    let (partition, envy_free) = efm_decomposition(&graph);
    if n <= partition.y_l.len() {
        let alloc = fill_small_agents(m, &partition, &envy_free);
        return Ok(SolverResult::yes(alloc, "bivalued-t1:one-each", 0).timed(started.elapsed()));
    }

    let mut search = ShapeSearch {
        instance,
        budget,
        started,
        bundles: Vec::with_capacity(n),
        used: vec![false; m],
        nodes: 0,
    };
    let found = search.assign(0)?;
    let result = if found {
        let mut alloc = Allocation::empty(m);
        for (a, &bundle) in search.bundles.iter().enumerate() {
            for r in bundle.resources() {
                alloc.assign(r, Some(a));
            }
        }
        SolverResult::yes(alloc, "bivalued-t1:one-or-two", search.nodes)
    } else {
        SolverResult::no("bivalued-t1:one-or-two", search.nodes)
    };
    Ok(result.timed(started.elapsed()))
}

#[derive(Clone, Copy)]
enum Bundle {
    One(usize),
    Two(usize, usize),
}

impl Bundle {
    fn resources(self) -> impl Iterator<Item = usize> {
        let pair = match self {
            Bundle::One(r) => [Some(r), None],
            Bundle::Two(r, s) => [Some(r), Some(s)],
        };
        pair.into_iter().flatten()
    }
}

struct ShapeSearch<'a> {
    instance: &'a Instance,
    budget: &'a OracleBudget,
    started: Instant,
    bundles: Vec<Bundle>,
    used: Vec<bool>,
    nodes: u64,
}

impl ShapeSearch<'_> {
    fn value(&self, agent: usize, bundle: Bundle) -> u64 {
        match bundle {
            Bundle::One(r) => self.instance.utility(agent, r),
            Bundle::Two(r, s) => self.instance.utility(agent, r) + self.instance.utility(agent, s),
        }
    }

    /// Bundle of `agent` is compatible with every bundle fixed so far.
    fn compatible(&self, agent: usize, bundle: Bundle) -> bool {
        let own = self.value(agent, bundle);
        self.bundles.iter().enumerate().all(|(b, &other)| {
            self.value(agent, other) <= own && self.value(b, bundle) <= self.value(b, other)
        })
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_owner_vectors {
            return Err(Error::BudgetExceeded {
                limit: BudgetLimit::OwnerVectors(self.budget.max_owner_vectors),
                nodes_explored: self.nodes,
            });
        }
        if self.nodes & 0xfff == 0 && self.started.elapsed() > self.budget.max_elapsed {
            return Err(Error::BudgetExceeded {
                limit: BudgetLimit::Elapsed(self.budget.max_elapsed),
                nodes_explored: self.nodes,
            });
        }
        Ok(())
    }

    fn try_bundle(&mut self, agent: usize, bundle: Bundle) -> Result<bool> {
        self.tick()?;
        if !self.compatible(agent, bundle) {
            return Ok(false);
        }
        bundle.resources().for_each(|r| self.used[r] = true);
        self.bundles.push(bundle);
        if self.assign(agent + 1)? {
            return Ok(true);
        }
        self.bundles.pop();
        bundle.resources().for_each(|r| self.used[r] = false);
        Ok(false)
    }

    /// Agents are served in index order: single liked resources first, then pairs.
    fn assign(&mut self, agent: usize) -> Result<bool> {
        let n = self.instance.n_agents();
        if agent == n {
            return Ok(true);
        }
        let m = self.instance.m_resources();
        let free = self.used.iter().filter(|u| !**u).count();
        if free < n - agent {
            return Ok(false);
        }
        for r in 0..m {
            if !self.used[r]
                && self.instance.utility(agent, r) == 2
                && self.try_bundle(agent, Bundle::One(r))?
            {
                return Ok(true);
            }
        }
        for r in 0..m {
            if self.used[r] {
                continue;
            }
            for s in r + 1..m {
                if !self.used[s] && self.try_bundle(agent, Bundle::Two(r, s))? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::{is_envy_free, measure_value, Measure};
    use crate::query::Answer;

    fn solve(rows: Vec<Vec<u64>>) -> (Instance, SolverResult) {
        let inst = Instance::from_rows(rows).unwrap();
        let res = solve_bivalued_t1(&inst, &OracleBudget::default()).unwrap();
        (inst, res)
    }

    #[test]
    fn examples() {
        let (_, res) = solve(vec![vec![2, 2], vec![2, 2]]);
        assert_eq!(res.stats.algorithm_used, "bivalued-t1:one-each");
        assert_eq!(res.witness.unwrap().size(), 2);

        let (_, res) = solve(vec![vec![2], vec![2]]);
        assert_eq!(res.answer, Answer::No);

        let (_, res) = solve(vec![vec![1]]);
        assert_eq!(res.answer, Answer::Yes);
    }

    #[test]
    fn second_shape_needs_pairs() {
        let (inst, res) = solve(vec![vec![2, 2, 1, 1]; 3]);
        assert_eq!(res.stats.algorithm_used, "bivalued-t1:one-or-two");
        let w = res
            .witness
            .expect("one agent takes the two 1-valued resources");
        assert!(is_envy_free(&inst, &w).unwrap());
        assert_eq!(measure_value(&inst, &w, Measure::Mcar).unwrap(), 1);
        assert_eq!(w.bundles(3)[2], vec![2, 3]);
    }

    #[test]
    fn rejects_zero_values() {
        let inst = Instance::from_rows([vec![0, 2]]).unwrap();
        assert!(solve_bivalued_t1(&inst, &OracleBudget::default()).is_err());
    }
}
