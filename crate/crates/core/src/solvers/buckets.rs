//! Bounded search for the binary USW and SIZE procedures.
//!
//! Resources sharing a liked-set are interchangeable for every agent taking
//! part, so an allocation is determined (up to relabelling inside a bucket) by
//! how many resources of each bucket each agent receives. The search runs over
//! those counts instead of owner vectors.

use std::time::Instant;

use crate::allocation::{Allocation, Measure};
use crate::error::{BudgetLimit, Error, Result};
use crate::instance::Instance;
use crate::oracle::OracleBudget;

pub(crate) struct BucketSearch<'a> {
    agents: &'a [usize],
    pools: Vec<Vec<usize>>,
    /// `liked[i][j]`: agent `agents[j]` likes the resources of bucket `i`.
    liked: Vec<Vec<bool>>,
    measure: Measure,
    threshold: u64,
    budget: &'a OracleBudget,
    started: Instant,
    counts: Vec<Vec<usize>>,
    /// `values[j * k + l]`: what agent `j` thinks of the bundle of agent `l`.
    values: Vec<u64>,
    score: u64,
    nodes: u64,
}

impl<'a> BucketSearch<'a> {
    /// `pools` maps each bucket to its resources; every agent outside `agents`
    /// must value all of them at zero.
    pub fn new(
        instance: &Instance,
        agents: &'a [usize],
        pools: Vec<Vec<usize>>,
        measure: Measure,
        threshold: u64,
        budget: &'a OracleBudget,
    ) -> Self {
        debug_assert!(matches!(measure, Measure::Usw | Measure::Size));
        let k = agents.len();
        let liked = pools
            .iter()
            .map(|pool| {
                agents
                    .iter()
                    .map(|&a| instance.utility(a, pool[0]) == 1)
                    .collect()
            })
            .collect();
        BucketSearch {
            agents,
            counts: vec![vec![0; k]; pools.len()],
            pools,
            liked,
            measure,
            threshold,
            budget,
            started: Instant::now(),
            values: vec![0; k * k],
            score: 0,
            nodes: 0,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn run(&mut self, m_resources: usize) -> Result<Option<Allocation>> {
        if !self.descend(0, 0, 0)? {
            return Ok(None);
        }
        let mut alloc = Allocation::empty(m_resources);
        for (pool, counts) in self.pools.iter().zip(&self.counts) {
            let mut next = pool.iter();
            for (&agent, &c) in self.agents.iter().zip(counts) {
                next.by_ref()
                    .take(c)
                    .for_each(|&r| alloc.assign(r, Some(agent)));
            }
        }
        Ok(Some(alloc))
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        let limit = if self.nodes > self.budget.max_owner_vectors {
            BudgetLimit::OwnerVectors(self.budget.max_owner_vectors)
        } else if self.nodes & 0xfff == 0 && self.started.elapsed() > self.budget.max_elapsed {
            BudgetLimit::Elapsed(self.budget.max_elapsed)
        } else {
            return Ok(());
        };
        Err(Error::BudgetExceeded {
            limit,
            nodes_explored: self.nodes,
        })
    }

    fn envy_free(&self) -> bool {
        let k = self.agents.len();
        (0..k).all(|j| (0..k).all(|l| self.values[j * k + l] <= self.values[j * k + j]))
    }

    /// Every resource not yet placed could still count towards the score.
    fn reachable(&self, bucket: usize, left_in_bucket: usize) -> bool {
        let later: usize = self.pools[bucket + 1..].iter().map(Vec::len).sum();
        self.score + (left_in_bucket + later) as u64 >= self.threshold
    }

    fn set(&mut self, bucket: usize, agent: usize, count: usize, sign: bool) {
        let k = self.agents.len();
        let c = count as u64;
        for j in 0..k {
            if self.liked[bucket][j] {
                let cell = &mut self.values[j * k + agent];
                *cell = if sign { *cell + c } else { *cell - c };
            }
        }
        let gain = match self.measure {
            Measure::Usw if self.liked[bucket][agent] => c,
            Measure::Size => c,
            _ => 0,
        };
        self.score = if sign {
            self.score + gain
        } else {
            self.score - gain
        };
        self.counts[bucket][agent] = if sign { count } else { 0 };
    }

    fn descend(&mut self, bucket: usize, agent: usize, used: usize) -> Result<bool> {
        self.tick()?;
        if bucket == self.pools.len() {
            return Ok(self.score >= self.threshold && self.envy_free());
        }
        if agent == self.agents.len() {
            return self.descend(bucket + 1, 0, 0);
        }
        let left = self.pools[bucket].len() - used;
        if !self.reachable(bucket, left) {
            return Ok(false);
        }
        for count in (0..=left).rev() {
            self.set(bucket, agent, count, true);
            let found = self.descend(bucket, agent + 1, used + count)?;
            if found {
                return Ok(true);
            }
            self.set(bucket, agent, count, false);
        }
        Ok(false)
    }
}
