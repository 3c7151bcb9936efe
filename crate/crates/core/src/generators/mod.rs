//! Instance generators: stock families and reduction gadgets whose answer
//! mirrors the answer of the source problem.

mod x3c;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, UtilityClass, ValueClass, MAX_UTILITY};

pub use x3c::{
    gen_x3c_2v, gen_x3c_kv, gen_x3c_kvc, x3c_2v_observer_count, x3c_2v_witness, x3c_kv_witness,
    x3c_kvc_witness, KvcShape, X3cInput,
};

/// Largest value drawn for [`ValueClass::General`] random instances.
pub const GENERAL_MAX_VALUE: u64 = 9;

/// Rows and labels collected while laying out a gadget.
pub(crate) struct Layout {
    resources: Vec<String>,
    agents: Vec<String>,
    rows: Vec<Vec<u64>>,
}

impl Layout {
    pub fn new() -> Self {
        Layout {
            resources: Vec::new(),
            agents: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Adds `count` resources labelled `prefix1..prefix{count}`; returns the first index.
    /// All resources must be added before the first agent.
    pub fn resources(&mut self, prefix: &str, count: usize) -> usize {
        debug_assert!(self.agents.is_empty());
        let start = self.resources.len();
        self.resources
            .extend((1..=count).map(|i| format!("{prefix}{i}")));
        start
    }

    pub fn resource(&mut self, label: impl Into<String>) -> usize {
        debug_assert!(self.agents.is_empty());
        self.resources.push(label.into());
        self.resources.len() - 1
    }

    pub fn agent(&mut self, label: impl Into<String>) -> usize {
        self.agents.push(label.into());
        self.rows.push(vec![0; self.resources.len()]);
        self.agents.len() - 1
    }

    pub fn set(&mut self, agent: usize, resource: usize, value: u64) {
        self.rows[agent][resource] = value;
    }

    pub fn set_range(&mut self, agent: usize, start: usize, count: usize, value: u64) {
        self.rows[agent][start..start + count].fill(value);
    }

    pub fn build(self) -> Result<Instance> {
        Instance::from_rows(self.rows)?
            .with_agent_labels(self.agents)?
            .with_resource_labels(self.resources)
    }
}

/// `n` agents who all like each of `n + 1` resources: no complete allocation is
/// envy-free, but giving one resource to each agent is.
pub fn gen_folklore(n: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "folklore needs at least one agent".into(),
        ));
    }
    Instance::from_rows(vec![vec![1u64; n + 1]; n])
}

/// Input of 3-Partition: `3n` positive numbers to be split into `n` triples of
/// equal sum `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionInput {
    numbers: Vec<u64>,
}

impl ThreePartitionInput {
    pub fn new(numbers: Vec<u64>) -> Result<Self> {
        if numbers.is_empty() || !numbers.len().is_multiple_of(3) {
            return Err(Error::InvalidParameter(format!(
                "3-partition needs a positive multiple of three numbers, got {}",
                numbers.len()
            )));
        }
        if numbers.contains(&0) {
            return Err(Error::InvalidParameter(
                "3-partition numbers must be positive".into(),
            ));
        }
        let n = (numbers.len() / 3) as u64;
        let sum: u64 = numbers.iter().sum();
        if !sum.is_multiple_of(n) {
            return Err(Error::InvalidParameter(format!(
                "sum {sum} is not divisible by n = {n}"
            )));
        }
        let b = sum / n;
        if let Some(e) = numbers.iter().find(|&&e| e >= b) {
            return Err(Error::InvalidParameter(format!(
                "number {e} is not below b = {b}"
            )));
        }
        Ok(ThreePartitionInput { numbers })
    }

    pub fn numbers(&self) -> &[u64] {
        &self.numbers
    }

    pub fn n(&self) -> usize {
        self.numbers.len() / 3
    }

    pub fn b(&self) -> u64 {
        self.numbers.iter().sum::<u64>() / self.n() as u64
    }

    /// Numbers violating the customary `e > b/4` bound. Not an error.
    pub fn warnings(&self) -> Vec<String> {
        let b = self.b();
        self.numbers
            .iter()
            .filter(|&&e| 4 * e <= b)
            .map(|e| format!("number {e} is not above b/4 = {}/4", b))
            .collect()
    }

    /// Brute force: can the numbers be split into triples summing to `b`?
    pub fn has_partition(&self) -> bool {
        fn go(rest: &mut Vec<u64>, b: u64) -> bool {
            let Some(first) = rest.pop() else {
                return true;
            };
            for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    if first + rest[i] + rest[j] == b {
                        let mut next: Vec<u64> = rest
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| *k != i && *k != j)
                            .map(|(_, &e)| e)
                            .collect();
                        if go(&mut next, b) {
                            return true;
                        }
                    }
                }
            }
            rest.push(first);
            false
        }
        go(&mut self.numbers.clone(), self.b())
    }
}

/// Identical-utility gadget: `3n + 1` agents, one normal resource worth
/// `e_i + b` per number and `2n + 1` special resources worth `4b`. Every agent
/// can reach `4b` without envy iff the numbers split into triples of sum `b`.
pub fn gen_identical_3partition(input: &ThreePartitionInput) -> Result<Instance> {
    let n = input.n();
    let b = input.b();
    let special = b
        .checked_mul(4)
        .filter(|&v| v <= MAX_UTILITY)
        .ok_or_else(|| Error::InvalidParameter(format!("4b = 4*{b} exceeds the utility cap")))?;
    let mut layout = Layout::new();
    let normal = layout.resources("normal", 3 * n);
    let specials = layout.resources("special", 2 * n + 1);
    for i in 0..=3 * n {
        let a = layout.agent(format!("agent{i}"));
        for (k, &e) in input.numbers().iter().enumerate() {
            layout.set(a, normal + k, e + b);
        }
        layout.set_range(a, specials, 2 * n + 1, special);
    }
    layout.build()
}

/// Adds two shadow agents and two shadow resources per resource so that, at
/// threshold 1, USW, SIZE and MCAR on the result all answer like ESW on the
/// input. Values must lie in `{0, v, u}` with `0 < v < u`.
pub fn gen_shadow_extension(instance: &Instance, v: u64, u: u64) -> Result<Instance> {
    if !(0 < v && v < u && u <= MAX_UTILITY) {
        return Err(Error::InvalidParameter(format!(
            "shadow extension needs 0 < v < u, got v = {v}, u = {u}"
        )));
    }
    if instance
        .value_set()
        .into_iter()
        .any(|x| x != 0 && x != v && x != u)
    {
        return Err(Error::WrongUtilityClass {
            operation: "gen_shadow_extension",
            expected: "ternary {0, v, u}",
        });
    }
    let n = instance.n_agents();
    let m = instance.m_resources();
    let total = 3 * m;
    let mut rows = Vec::with_capacity(n + 2 * m);
    for row in instance.rows() {
        let mut out: Vec<u64> = row.iter().map(|&x| u64::from(x)).collect();
        out.resize(total, v);
        rows.push(out);
    }
    for r in 0..m {
        for _ in 0..2 {
            let mut out = vec![0u64; total];
            out[r] = v;
            out[m..].fill(u);
            rows.push(out);
        }
    }
    let extended = Instance::from_rows(rows)?;
    match (instance.agent_labels(), instance.resource_labels()) {
        (Some(agents), Some(resources)) => {
            let mut agent_labels = agents.to_vec();
            let mut resource_labels = resources.to_vec();
            for label in resources {
                agent_labels.push(format!("{label}-shadow-agent'"));
                agent_labels.push(format!("{label}-shadow-agent''"));
            }
            for label in resources {
                resource_labels.push(format!("{label}'"));
                resource_labels.push(format!("{label}''"));
            }
            extended
                .with_agent_labels(agent_labels)?
                .with_resource_labels(resource_labels)
        }
        _ => Ok(extended),
    }
}

/// Reproducible random instance drawing every entry uniformly from the value
/// set of `class`. With `class.identical` one row is drawn and shared.
pub fn gen_random(n: usize, m: usize, class: UtilityClass, seed: u64) -> Result<Instance> {
    let values: Vec<u64> = match class.values {
        ValueClass::Binary => vec![0, 1],
        ValueClass::Bivalued => vec![1, 2],
        ValueClass::Ternary { low, high } => {
            if !(0 < low && low < high && high <= MAX_UTILITY) {
                return Err(Error::InvalidParameter(format!(
                    "ternary values need 0 < v < u, got ({low}, {high})"
                )));
            }
            vec![0, low, high]
        }
        ValueClass::General => (0..=GENERAL_MAX_VALUE).collect(),
    };
    if n == 0 {
        return Err(Error::InvalidParameter(
            "at least one agent is required".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw_row = |rng: &mut ChaCha8Rng| -> Vec<u64> {
        (0..m)
            .map(|_| values[rng.gen_range(0..values.len())])
            .collect()
    };
    let rows = if class.identical {
        vec![draw_row(&mut rng); n]
    } else {
        (0..n).map(|_| draw_row(&mut rng)).collect()
    };
    Instance::from_rows(rows)
}
