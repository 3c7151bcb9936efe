//! Depth-first enumeration of owner vectors with incremental envy bookkeeping.
//!
//! Shared by the exhaustive oracle and the bounded enumeration steps of the
//! binary-utility solvers. Leaves are visited in lexicographic order of the
//! candidate list, so the first accepted leaf is deterministic. Subtrees are
//! cut only by measure bounds; envy is checked at complete vectors because a
//! later resource can always repair it.

use std::time::Instant;

use crate::allocation::{Allocation, Measure};
use crate::error::{BudgetLimit, Error, Result};
use crate::instance::Instance;
use crate::oracle::OracleBudget;

pub(crate) struct SearchOutcome {
    pub witness: Option<Allocation>,
    /// Owner vectors accounted for, either checked at a leaf or discarded with
    /// their whole subtree by a bound.
    pub vectors_covered: u64,
}

pub(crate) struct OwnerSearch<'a> {
    instance: &'a Instance,
    resources: &'a [usize],
    candidates: &'a [Option<usize>],
    measure: Measure,
    threshold: u64,
}

impl<'a> OwnerSearch<'a> {
    pub fn new(
        instance: &'a Instance,
        resources: &'a [usize],
        candidates: &'a [Option<usize>],
        measure: Measure,
        threshold: u64,
    ) -> Self {
        OwnerSearch {
            instance,
            resources,
            candidates,
            measure,
            threshold,
        }
    }

    /// `candidates.len() ^ resources.len()`, saturating.
    pub fn space_size(&self) -> u64 {
        let k = self.candidates.len() as u64;
        let mut total: u64 = 1;
        for _ in 0..self.resources.len() {
            total = total.saturating_mul(k);
        }
        total
    }

    pub fn run(&self, budget: &OracleBudget) -> Result<SearchOutcome> {
        let space = self.space_size();
        if budget.max_owner_vectors != u64::MAX && space > budget.max_owner_vectors {
            return Err(Error::BudgetExceeded {
                limit: BudgetLimit::OwnerVectors(budget.max_owner_vectors),
                nodes_explored: 0,
            });
        }

        let n = self.instance.n_agents();
        let depth = self.resources.len();
        let mut is_candidate = vec![false; n];
        for a in self.candidates.iter().flatten() {
            is_candidate[*a] = true;
        }

        // suffix[d][a] = utility of agent a for resources[d..]
        let mut suffix = vec![vec![0u64; n]; depth + 1];
        // best[d] = largest own-utility the remaining resources can add to USW
        let mut best = vec![0u64; depth + 1];
        for d in (0..depth).rev() {
            let r = self.resources[d];
            let mut top = 0;
            for a in 0..n {
                let u = self.instance.utility(a, r);
                suffix[d][a] = suffix[d + 1][a] + u;
                if is_candidate[a] {
                    top = top.max(u);
                }
            }
            best[d] = best[d + 1] + top;
        }

        let mut state = State {
            owner: Allocation::empty(self.instance.m_resources()),
            values: vec![0u64; n * n],
            count: vec![0u64; n],
            size: 0,
            usw: 0,
            covered: 0,
            visited: 0,
            started: Instant::now(),
            subtree: (0..=depth)
                .map(|d| {
                    let mut s: u64 = 1;
                    for _ in d..depth {
                        s = s.saturating_mul(self.candidates.len() as u64);
                    }
                    s
                })
                .collect(),
        };
        let ctx = Ctx {
            search: self,
            is_candidate,
            suffix,
            best,
            budget,
        };
        let found = ctx.descend(&mut state, 0)?;
        Ok(SearchOutcome {
            witness: found.then(|| state.owner.clone()),
            vectors_covered: state.covered,
        })
    }
}

struct State {
    owner: Allocation,
    values: Vec<u64>,
    count: Vec<u64>,
    size: u64,
    usw: u64,
    covered: u64,
    visited: u64,
    started: Instant,
    subtree: Vec<u64>,
}

struct Ctx<'s, 'a> {
    search: &'s OwnerSearch<'a>,
    is_candidate: Vec<bool>,
    suffix: Vec<Vec<u64>>,
    best: Vec<u64>,
    budget: &'s OracleBudget,
}

impl Ctx<'_, '_> {
    fn descend(&self, st: &mut State, d: usize) -> Result<bool> {
        st.visited += 1;
        if st.visited & 0xfff == 0 && st.started.elapsed() > self.budget.max_elapsed {
            return Err(Error::BudgetExceeded {
                limit: BudgetLimit::Elapsed(self.budget.max_elapsed),
                nodes_explored: st.covered,
            });
        }
        if !self.reachable(st, d) {
            st.covered = st.covered.saturating_add(st.subtree[d]);
            return Ok(false);
        }
        let search = self.search;
        if d == search.resources.len() {
            st.covered = st.covered.saturating_add(1);
            return Ok(self.accepts(st));
        }

        let inst = search.instance;
        let n = inst.n_agents();
        let r = search.resources[d];
        for &cand in search.candidates {
            st.owner.assign(r, cand);
            if let Some(b) = cand {
                for a in 0..n {
                    st.values[a * n + b] += inst.utility(a, r);
                }
                st.count[b] += 1;
                st.size += 1;
                st.usw += inst.utility(b, r);
            }
            if self.descend(st, d + 1)? {
                return Ok(true);
            }
            if let Some(b) = cand {
                for a in 0..n {
                    st.values[a * n + b] -= inst.utility(a, r);
                }
                st.count[b] -= 1;
                st.size -= 1;
                st.usw -= inst.utility(b, r);
            }
        }
        st.owner.assign(r, None);
        Ok(false)
    }

    /// Sound upper bound check: can any completion of the current prefix reach
    /// the threshold?
    fn reachable(&self, st: &State, d: usize) -> bool {
        let search = self.search;
        let t = search.threshold;
        if t == 0 {
            return true;
        }
        let n = search.instance.n_agents();
        let remaining = (search.resources.len() - d) as u64;
        match search.measure {
            Measure::Size => st.size + remaining >= t,
            Measure::Usw => st.usw + self.best[d] >= t,
            Measure::Esw => (0..n).all(|a| {
                let own = st.values[a * n + a];
                self.is_candidate[a] && own + self.suffix[d][a] >= t
            }),
            Measure::Mcar => {
                let mut deficit = 0u64;
                for a in 0..n {
                    if st.count[a] < t {
                        if !self.is_candidate[a] {
                            return false;
                        }
                        deficit += t - st.count[a];
                    }
                }
                deficit <= remaining
            }
        }
    }

    fn accepts(&self, st: &State) -> bool {
        let search = self.search;
        let n = search.instance.n_agents();
        let value = match search.measure {
            Measure::Size => st.size,
            Measure::Usw => st.usw,
            Measure::Esw => (0..n).map(|a| st.values[a * n + a]).min().unwrap_or(0),
            Measure::Mcar => st.count.iter().copied().min().unwrap_or(0),
        };
        if value < search.threshold {
            return false;
        }
        (0..n).all(|a| {
            let row = &st.values[a * n..(a + 1) * n];
            row.iter().all(|&v| v <= row[a])
        })
    }
}
