//! Agents, resources and their additive utilities.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Largest utility value accepted for a single agent/resource pair.
pub const MAX_UTILITY: u64 = (1 << 31) - 1;

/// An allocation problem: `n_agents` agents, `m_resources` resources and a
/// non-negative integer utility for every agent/resource pair.
///
/// Agents are identified by `0..n_agents` and resources by `0..m_resources`;
/// labels are display names only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n_agents: usize,
    m_resources: usize,
    // row-major, agent by resource
    utilities: Vec<u32>,
    agent_labels: Option<Vec<String>>,
    resource_labels: Option<Vec<String>>,
}

impl Instance {
    /// Builds an instance from one utility row per agent.
    pub fn from_rows<R, T>(rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = T>,
        T: AsRef<[u64]>,
    {
        let mut n_agents = 0;
        let mut m_resources = None;
        let mut utilities = Vec::new();
        for row in rows {
            let row = row.as_ref();
            match m_resources {
                None => m_resources = Some(row.len()),
                Some(m) if m != row.len() => {
                    return Err(Error::InvalidInstance(format!(
                        "row {} has {} entries, expected {}",
                        n_agents,
                        row.len(),
                        m
                    )))
                }
                Some(_) => {}
            }
            for (r, &value) in row.iter().enumerate() {
                if value > MAX_UTILITY {
                    return Err(Error::InvalidInstance(format!(
                        "utility of agent {n_agents} for resource {r} is {value}, above the cap {MAX_UTILITY}"
                    )));
                }
                utilities.push(value as u32);
            }
            n_agents += 1;
        }
        if n_agents == 0 {
            return Err(Error::InvalidInstance(
                "at least one agent is required".into(),
            ));
        }
        Ok(Instance {
            n_agents,
            m_resources: m_resources.unwrap_or(0),
            utilities,
            agent_labels: None,
            resource_labels: None,
        })
    }

    /// `n_agents` agents with an empty resource set.
    pub fn without_resources(n_agents: usize) -> Result<Self> {
        Self::from_rows(vec![Vec::<u64>::new(); n_agents])
    }

    pub fn with_agent_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_labels("agent", &labels, self.n_agents)?;
        self.agent_labels = Some(labels);
        Ok(self)
    }

    pub fn with_resource_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_labels("resource", &labels, self.m_resources)?;
        self.resource_labels = Some(labels);
        Ok(self)
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn m_resources(&self) -> usize {
        self.m_resources
    }

    #[inline]
    pub fn utility(&self, agent: usize, resource: usize) -> u64 {
        debug_assert!(agent < self.n_agents && resource < self.m_resources);
        u64::from(self.utilities[agent * self.m_resources + resource])
    }

    #[inline]
    pub fn row(&self, agent: usize) -> &[u32] {
        let start = agent * self.m_resources;
        &self.utilities[start..start + self.m_resources]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.n_agents).map(move |a| self.row(a))
    }

    /// Utility rows widened to `u64`, the shape accepted by [`Instance::from_rows`].
    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.rows()
            .map(|row| row.iter().map(|&v| u64::from(v)).collect())
            .collect()
    }

    pub fn agent_labels(&self) -> Option<&[String]> {
        self.agent_labels.as_deref()
    }

    pub fn resource_labels(&self) -> Option<&[String]> {
        self.resource_labels.as_deref()
    }

    pub fn agent_name(&self, agent: usize) -> String {
        match &self.agent_labels {
            Some(labels) => labels[agent].clone(),
            None => agent.to_string(),
        }
    }

    pub(crate) fn check_agent(&self, agent: usize) -> Result<()> {
        if agent < self.n_agents {
            Ok(())
        } else {
            Err(Error::AgentOutOfRange {
                agent,
                n_agents: self.n_agents,
            })
        }
    }

    /// Sorted set of all values appearing in the matrix.
    pub fn value_set(&self) -> BTreeSet<u64> {
        self.utilities.iter().map(|&v| u64::from(v)).collect()
    }

    pub fn is_binary(&self) -> bool {
        self.utilities.iter().all(|&v| v <= 1)
    }

    pub fn is_identical(&self) -> bool {
        self.rows().all(|row| row == self.row(0))
    }

    /// Applies `perm` to resource indices: resource `r` of `self` becomes
    /// resource `perm[r]` of the result.
    pub fn permute_resources(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.m_resources)?;
        let rows = self.rows().map(|row| {
            let mut out = vec![0u64; row.len()];
            for (r, &v) in row.iter().enumerate() {
                out[perm[r]] = u64::from(v);
            }
            out
        });
        Self::from_rows(rows.collect::<Vec<_>>())
    }

    /// Applies `perm` to agent indices: agent `a` of `self` becomes agent `perm[a]`.
    pub fn permute_agents(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n_agents)?;
        let mut rows = vec![Vec::new(); self.n_agents];
        for (a, row) in self.to_rows().into_iter().enumerate() {
            rows[perm[a]] = row;
        }
        Self::from_rows(rows)
    }
}

fn check_labels(axis: &str, labels: &[String], expected: usize) -> Result<()> {
    if labels.len() != expected {
        return Err(Error::InvalidInstance(format!(
            "{} {axis} labels given for {expected} {axis}s",
            labels.len()
        )));
    }
    let mut seen = HashSet::new();
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::InvalidInstance(format!(
                "duplicate {axis} label {label:?}"
            )));
        }
    }
    Ok(())
}

pub(crate) fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::InvalidParameter(format!(
            "permutation of length {} for {len} items",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
    }
    Ok(())
}

/// The value set a utility matrix draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueClass {
    /// Every value is 0 or 1.
    Binary,
    /// Every value is 1 or 2.
    Bivalued,
    /// Values come from `{0, low, high}` with `0 < low < high`, and both
    /// positive values occur.
    Ternary {
        low: u64,
        high: u64,
    },
    General,
}

impl fmt::Display for ValueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueClass::Binary => write!(f, "binary"),
            ValueClass::Bivalued => write!(f, "bivalued"),
            ValueClass::Ternary { low, high } => write!(f, "ternary({low},{high})"),
            ValueClass::General => write!(f, "general"),
        }
    }
}

/// Value-set tag plus the orthogonal "all agents share one utility row" flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UtilityClass {
    pub values: ValueClass,
    pub identical: bool,
}

impl UtilityClass {
    pub const fn new(values: ValueClass) -> Self {
        UtilityClass {
            values,
            identical: false,
        }
    }

    pub const fn identical(values: ValueClass) -> Self {
        UtilityClass {
            values,
            identical: true,
        }
    }
}

/// Most specific class the matrix belongs to. Precedence is
/// binary, then bivalued, then ternary, then general.
pub fn classify_utilities(instance: &Instance) -> UtilityClass {
    let values = instance.value_set();
    let class = if values.iter().all(|&v| v <= 1) {
        ValueClass::Binary
    } else if values.iter().all(|&v| v == 1 || v == 2) {
        ValueClass::Bivalued
    } else {
        let positive: Vec<u64> = values.iter().copied().filter(|&v| v > 0).collect();
        match positive[..] {
            [low, high] => ValueClass::Ternary { low, high },
            _ => ValueClass::General,
        }
    };
    UtilityClass {
        values: class,
        identical: instance.is_identical(),
    }
}
