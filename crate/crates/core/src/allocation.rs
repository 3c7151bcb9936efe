//! Partial allocations, envy and the four efficiency measures.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// Owner of each resource, `None` for unallocated.
///
/// Bundles are derived views, so two agents can never share a resource.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    owner: Vec<Option<usize>>,
}

impl Allocation {
    pub fn new(owner: Vec<Option<usize>>) -> Self {
        Allocation { owner }
    }

    /// Allocation of `m_resources` resources where nobody gets anything.
    pub fn empty(m_resources: usize) -> Self {
        Allocation {
            owner: vec![None; m_resources],
        }
    }

    /// Checked constructor: the owner vector must fit `instance`.
    pub fn for_instance(instance: &Instance, owner: Vec<Option<usize>>) -> Result<Self> {
        let alloc = Allocation { owner };
        alloc.check(instance)?;
        Ok(alloc)
    }

    pub fn check(&self, instance: &Instance) -> Result<()> {
        if self.owner.len() != instance.m_resources() {
            return Err(Error::InvalidAllocation(format!(
                "owner vector has {} entries for {} resources",
                self.owner.len(),
                instance.m_resources()
            )));
        }
        for owner in self.owner.iter().flatten() {
            instance.check_agent(*owner)?;
        }
        Ok(())
    }

    pub fn owners(&self) -> &[Option<usize>] {
        &self.owner
    }

    pub fn owner_of(&self, resource: usize) -> Option<usize> {
        self.owner[resource]
    }

    pub fn assign(&mut self, resource: usize, agent: Option<usize>) {
        self.owner[resource] = agent;
    }

    pub fn m_resources(&self) -> usize {
        self.owner.len()
    }

    /// Resources owned by `agent`, in index order.
    pub fn bundle(&self, agent: usize) -> impl Iterator<Item = usize> + '_ {
        self.owner
            .iter()
            .enumerate()
            .filter(move |(_, o)| **o == Some(agent))
            .map(|(r, _)| r)
    }

    pub fn bundles(&self, n_agents: usize) -> Vec<Vec<usize>> {
        let mut bundles = vec![Vec::new(); n_agents];
        for (r, owner) in self.owner.iter().enumerate() {
            if let Some(a) = owner {
                bundles[*a].push(r);
            }
        }
        bundles
    }

    /// Number of allocated resources.
    pub fn size(&self) -> usize {
        self.owner.iter().filter(|o| o.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.owner.iter().all(Option::is_some)
    }

    /// Relabels resources: resource `r` becomes `perm[r]`.
    pub fn permute_resources(&self, perm: &[usize]) -> Self {
        let mut owner = vec![None; self.owner.len()];
        for (r, o) in self.owner.iter().enumerate() {
            owner[perm[r]] = *o;
        }
        Allocation { owner }
    }

    /// Relabels agents: agent `a` becomes `perm[a]`.
    pub fn permute_agents(&self, perm: &[usize]) -> Self {
        Allocation {
            owner: self.owner.iter().map(|o| o.map(|a| perm[a])).collect(),
        }
    }
}

/// Efficiency measure of an allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    /// Utilitarian welfare: sum of own-bundle utilities.
    Usw,
    /// Egalitarian welfare: minimum own-bundle utility.
    Esw,
    /// Number of allocated resources.
    Size,
    /// Smallest bundle cardinality.
    Mcar,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Usw, Measure::Esw, Measure::Size, Measure::Mcar];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Usw => "usw",
            Measure::Esw => "esw",
            Measure::Size => "size",
            Measure::Mcar => "mcar",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "usw" => Ok(Measure::Usw),
            "esw" => Ok(Measure::Esw),
            "size" => Ok(Measure::Size),
            "mcar" => Ok(Measure::Mcar),
            other => Err(Error::InvalidParameter(format!(
                "unknown measure {other:?}"
            ))),
        }
    }
}

/// Utility `agent` derives from the bundle of `target`.
pub fn bundle_utility(
    instance: &Instance,
    agent: usize,
    allocation: &Allocation,
    target: usize,
) -> Result<u64> {
    instance.check_agent(agent)?;
    instance.check_agent(target)?;
    allocation.check(instance)?;
    Ok(allocation
        .bundle(target)
        .map(|r| instance.utility(agent, r))
        .sum())
}

/// `values[a][b]` is the utility agent `a` assigns to the bundle of agent `b`.
pub(crate) fn valuation_matrix(instance: &Instance, allocation: &Allocation) -> Vec<Vec<u64>> {
    let n = instance.n_agents();
    let mut values = vec![vec![0u64; n]; n];
    for (r, owner) in allocation.owners().iter().enumerate() {
        if let Some(b) = *owner {
            for (a, row) in values.iter_mut().enumerate() {
                row[b] += instance.utility(a, r);
            }
        }
    }
    values
}

/// First envious pair `(a, b)` in lexicographic order, i.e. agent `a`
/// strictly prefers the bundle of `b` to its own.
pub fn first_envy(instance: &Instance, allocation: &Allocation) -> Result<Option<(usize, usize)>> {
    allocation.check(instance)?;
    let values = valuation_matrix(instance, allocation);
    for (a, row) in values.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v > row[a] {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

pub fn is_envy_free(instance: &Instance, allocation: &Allocation) -> Result<bool> {
    Ok(first_envy(instance, allocation)?.is_none())
}

pub fn measure_value(
    instance: &Instance,
    allocation: &Allocation,
    measure: Measure,
) -> Result<u64> {
    allocation.check(instance)?;
    let n = instance.n_agents();
    let value = match measure {
        Measure::Usw | Measure::Esw => {
            let mut own = vec![0u64; n];
            for (r, owner) in allocation.owners().iter().enumerate() {
                if let Some(a) = *owner {
                    own[a] += instance.utility(a, r);
                }
            }
            if measure == Measure::Usw {
                own.iter().sum()
            } else {
                own.into_iter().min().unwrap_or(0)
            }
        }
        Measure::Size => allocation.size() as u64,
        Measure::Mcar => {
            let mut count = vec![0u64; n];
            for a in allocation.owners().iter().flatten() {
                count[*a] += 1;
            }
            count.into_iter().min().unwrap_or(0)
        }
    };
    Ok(value)
}

/// Why an allocation fails a query, in the order they are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Envy {
        envious: usize,
        envied: usize,
    },
    Shortfall {
        measure: Measure,
        value: u64,
        threshold: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Envy { envious, envied } => {
                write!(f, "agent {envious} envies agent {envied}")
            }
            Violation::Shortfall {
                measure,
                value,
                threshold,
            } => write!(f, "{measure} is {value}, below threshold {threshold}"),
        }
    }
}

/// Checks envy-freeness and then the threshold; returns the first violation.
pub fn verify(
    instance: &Instance,
    allocation: &Allocation,
    measure: Measure,
    threshold: u64,
) -> Result<Option<Violation>> {
    if let Some((envious, envied)) = first_envy(instance, allocation)? {
        return Ok(Some(Violation::Envy { envious, envied }));
    }
    let value = measure_value(instance, allocation, measure)?;
    if value < threshold {
        return Ok(Some(Violation::Shortfall {
            measure,
            value,
            threshold,
        }));
    }
    Ok(None)
}
