//! Gadgets reducing Exact Cover by 3-Sets to ESW at threshold 1 under ternary
//! utilities `{0, v, u}`, one per relation between `u` and `v`.

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::{Instance, MAX_UTILITY};

use super::Layout;

/// Ground set `{0, .., 3n - 1}` and a list of 3-element subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3cInput {
    ground_set_size: usize,
    sets: Vec<[usize; 3]>,
}

impl X3cInput {
    pub fn new(ground_set_size: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if ground_set_size == 0 || !ground_set_size.is_multiple_of(3) {
            return Err(Error::InvalidParameter(format!(
                "ground set size must be a positive multiple of three, got {ground_set_size}"
            )));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for mut set in sets {
            set.sort_unstable();
            if set[0] == set[1] || set[1] == set[2] {
                return Err(Error::InvalidParameter(format!(
                    "set {set:?} repeats an element"
                )));
            }
            if set[2] >= ground_set_size {
                return Err(Error::InvalidParameter(format!(
                    "set {set:?} leaves the ground set of size {ground_set_size}"
                )));
            }
            sorted.push(set);
        }
        Ok(X3cInput {
            ground_set_size,
            sets: sorted,
        })
    }

    pub fn ground_set_size(&self) -> usize {
        self.ground_set_size
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    pub fn n(&self) -> usize {
        self.ground_set_size / 3
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// Appends copies of the first set until there are more sets than `n`.
    /// Copies never help a cover, so the answer is unchanged.
    pub fn padded(&self) -> Result<X3cInput> {
        let first = *self
            .sets
            .first()
            .ok_or_else(|| Error::InvalidParameter("X3C input has no sets".into()))?;
        let mut sets = self.sets.clone();
        while sets.len() <= self.n() {
            sets.push(first);
        }
        Ok(X3cInput {
            ground_set_size: self.ground_set_size,
            sets,
        })
    }

    /// Brute-force search for `n` pairwise disjoint sets; returns their indices.
    pub fn exact_cover(&self) -> Option<Vec<usize>> {
        fn go(sets: &[[usize; 3]], covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
            let Some(x) = covered.iter().position(|c| !c) else {
                return true;
            };
            for (j, set) in sets.iter().enumerate() {
                if set.contains(&x) && set.iter().all(|&e| !covered[e]) {
                    set.iter().for_each(|&e| covered[e] = true);
                    chosen.push(j);
                    if go(sets, covered, chosen) {
                        return true;
                    }
                    chosen.pop();
                    set.iter().for_each(|&e| covered[e] = false);
                }
            }
            false
        }
        let mut covered = vec![false; self.ground_set_size];
        let mut chosen = Vec::new();
        go(&self.sets, &mut covered, &mut chosen).then(|| {
            chosen.sort_unstable();
            chosen
        })
    }

    fn check_cover(&self, cover: &[usize]) -> Result<Vec<bool>> {
        let mut covered = vec![false; self.ground_set_size];
        let mut in_cover = vec![false; self.m()];
        for &j in cover {
            let set = self
                .sets
                .get(j)
                .ok_or_else(|| Error::InvalidParameter(format!("set index {j} out of range")))?;
            for &e in set {
                if std::mem::replace(&mut covered[e], true) {
                    return Err(Error::InvalidParameter(format!(
                        "element {e} is covered twice"
                    )));
                }
            }
            in_cover[j] = true;
        }
        if covered.contains(&false) {
            return Err(Error::InvalidParameter("cover misses an element".into()));
        }
        Ok(in_cover)
    }
}

fn checked_value(factor: u64, v: u64) -> Result<u64> {
    factor
        .checked_mul(v)
        .filter(|&x| x <= MAX_UTILITY)
        .ok_or_else(|| Error::InvalidParameter(format!("{factor} * {v} exceeds the utility cap")))
}

/// Gadget for `u = kv`: cover agents, a special agent, and normal, small,
/// dummy and special resources.
pub fn gen_x3c_kv(input: &X3cInput, v: u64, k: u64) -> Result<Instance> {
    if v == 0 || k < 3 {
        return Err(Error::InvalidParameter(format!(
            "x3c-kv needs v >= 1 and k >= 3, got v = {v}, k = {k}"
        )));
    }
    let u = checked_value(k, v)?;
    let input = input.padded()?;
    let (n, m) = (input.n(), input.m());
    let small_count = (k as usize - 3) * n;

    let mut layout = Layout::new();
    let normal = layout.resources("r", 3 * n);
    let small = layout.resources("s", small_count);
    let dummy = layout.resources("d", m - n);
    let special = layout.resource("s*");
    for (j, set) in input.sets().iter().enumerate() {
        let a = layout.agent(format!("a{}", j + 1));
        for &e in set {
            layout.set(a, normal + e, v);
        }
        layout.set_range(a, small, small_count, v);
        layout.set_range(a, dummy, m - n, u);
        layout.set(a, special, u);
    }
    let star = layout.agent("a*");
    layout.set(star, special, u);
    layout.build()
}

/// Allocation of the `x3c-kv` gadget built from an exact cover (indices into
/// the unpadded sets).
pub fn x3c_kv_witness(input: &X3cInput, k: u64, cover: &[usize]) -> Result<Allocation> {
    let in_cover = input.check_cover(cover)?;
    let padded = input.padded()?;
    let (n, m) = (padded.n(), padded.m());
    let per_agent = k as usize - 3;
    let (small, dummy, special) = (
        3 * n,
        3 * n + per_agent * n,
        3 * n + per_agent * n + (m - n),
    );

    let mut alloc = Allocation::empty(special + 1);
    let (mut next_small, mut next_dummy) = (small, dummy);
    for (j, set) in padded.sets().iter().enumerate() {
        if in_cover.get(j).copied().unwrap_or(false) {
            set.iter().for_each(|&e| alloc.assign(e, Some(j)));
            for r in next_small..next_small + per_agent {
                alloc.assign(r, Some(j));
            }
            next_small += per_agent;
        } else {
            alloc.assign(next_dummy, Some(j));
            next_dummy += 1;
        }
    }
    alloc.assign(special, Some(m));
    Ok(alloc)
}

/// Number of observers in the `x3c-2v` gadget: one per (normal pair, dummy),
/// one per (normal, dummy, small), plus one watching all small and dummy
/// resources.
pub fn x3c_2v_observer_count(n: usize, m: usize) -> usize {
    let dummies = 2 * (m - n);
    3 * n * (3 * n).saturating_sub(1) / 2 * dummies + 3 * n * dummies * n + 1
}

enum Observer {
    /// Two normal resources and a dummy.
    Pair(usize, usize, usize),
    /// A normal, a dummy and a small resource.
    Mixed(usize, usize, usize),
}

fn observer_list(n: usize, m: usize) -> Vec<Observer> {
    let dummies = 2 * (m - n);
    let mut out = Vec::with_capacity(x3c_2v_observer_count(n, m));
    for i in 0..3 * n {
        for j in i + 1..3 * n {
            out.extend((0..dummies).map(|d| Observer::Pair(i, j, d)));
        }
    }
    for i in 0..3 * n {
        for d in 0..dummies {
            out.extend((0..n).map(|s| Observer::Mixed(i, d, s)));
        }
    }
    out
}

/// Gadget for `u = 2v`: cover agents, standard agents `b, c, d`, observers,
/// and normal, small, dummy, blank and special resources.
pub fn gen_x3c_2v(input: &X3cInput, v: u64) -> Result<Instance> {
    if v == 0 {
        return Err(Error::InvalidParameter("x3c-2v needs v >= 1".into()));
    }
    let u = checked_value(2, v)?;
    let input = input.padded()?;
    let (n, m) = (input.n(), input.m());
    let dummies = 2 * (m - n);
    let observers = x3c_2v_observer_count(n, m);

    let mut layout = Layout::new();
    let normal = layout.resources("r", 3 * n);
    let small = layout.resources("s", n);
    let dummy = layout.resources("d", dummies);
    let blank = layout.resources("blank", 2 * observers);
    let special = layout.resources("r*", 4);

    for (j, set) in input.sets().iter().enumerate() {
        let a = layout.agent(format!("a{}", j + 1));
        for &e in set {
            layout.set(a, normal + e, v);
        }
        layout.set_range(a, small, n, v);
        layout.set_range(a, dummy, dummies, u);
        layout.set_range(a, special, 4, u);
    }
    let table = [
        ("b", [u, 0, u, 0]),
        ("c", [u, v, u, v]),
        ("d", [0, 0, u, 0]),
    ];
    for (label, values) in table {
        let a = layout.agent(label);
        for (i, value) in values.into_iter().enumerate() {
            layout.set(a, special + i, value);
        }
    }

    let watch = |layout: &mut Layout, label: String| {
        let w = layout.agent(label);
        layout.set_range(w, blank, 2 * observers, u);
        layout.set_range(w, special, 4, u);
        w
    };
    for observer in observer_list(n, m) {
        match observer {
            Observer::Pair(i, j, d) => {
                let w = watch(&mut layout, format!("w(r{},r{};d{})", i + 1, j + 1, d + 1));
                layout.set(w, normal + i, u);
                layout.set(w, normal + j, u);
                layout.set(w, dummy + d, u);
            }
            Observer::Mixed(i, d, k) => {
                let w = watch(&mut layout, format!("w'(r{};d{};s{})", i + 1, d + 1, k + 1));
                layout.set(w, normal + i, u);
                layout.set(w, dummy + d, u);
                layout.set(w, small + k, u);
            }
        }
    }
    let w_star = watch(&mut layout, "w*".to_string());
    layout.set_range(w_star, small, n, u);
    layout.set_range(w_star, dummy, dummies, u);
    layout.build()
}

/// Allocation of the `x3c-2v` gadget built from an exact cover.
pub fn x3c_2v_witness(input: &X3cInput, cover: &[usize]) -> Result<Allocation> {
    let in_cover = input.check_cover(cover)?;
    let padded = input.padded()?;
    let (n, m) = (padded.n(), padded.m());
    let dummies = 2 * (m - n);
    let observers = x3c_2v_observer_count(n, m);
    let (small, dummy, blank) = (3 * n, 4 * n, 4 * n + dummies);
    let special = blank + 2 * observers;

    let mut alloc = Allocation::empty(special + 4);
    let (mut next_small, mut next_dummy) = (small, dummy);
    for (j, set) in padded.sets().iter().enumerate() {
        if in_cover.get(j).copied().unwrap_or(false) {
            set.iter().for_each(|&e| alloc.assign(e, Some(j)));
            alloc.assign(next_small, Some(j));
            next_small += 1;
        } else {
            alloc.assign(next_dummy, Some(j));
            alloc.assign(next_dummy + 1, Some(j));
            next_dummy += 2;
        }
    }
    let (b, c, d) = (m, m + 1, m + 2);
    alloc.assign(special, Some(b));
    alloc.assign(special + 1, Some(c));
    alloc.assign(special + 3, Some(c));
    alloc.assign(special + 2, Some(d));
    for w in 0..observers {
        alloc.assign(blank + 2 * w, Some(m + 3 + w));
        alloc.assign(blank + 2 * w + 1, Some(m + 3 + w));
    }
    Ok(alloc)
}

/// Derived quantities of the `x3c-kvc` gadget: `u = kv + c`, `k1 = k + 1` and
/// `k2`, the least integer with `k2 * v > 2u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KvcShape {
    pub v: u64,
    pub u: u64,
    pub k1: usize,
    pub k2: usize,
}

impl KvcShape {
    pub fn new(v: u64, k: u64, c: u64) -> Result<Self> {
        if k == 0 || c == 0 || c >= v {
            return Err(Error::InvalidParameter(format!(
                "x3c-kvc needs k >= 1 and 0 < c < v, got v = {v}, k = {k}, c = {c}"
            )));
        }
        let u = checked_value(k, v)?
            .checked_add(c)
            .filter(|&x| x <= MAX_UTILITY)
            .ok_or_else(|| Error::InvalidParameter("kv + c exceeds the utility cap".into()))?;
        Ok(KvcShape {
            v,
            u,
            k1: k as usize + 1,
            k2: (2 * u / v) as usize + 1,
        })
    }
}

struct KvcLayout {
    n: usize,
    m: usize,
    rrd: Vec<(usize, usize, usize)>,
    rdd: Vec<(usize, usize, usize)>,
}

impl KvcLayout {
    fn new(n: usize, m: usize) -> Self {
        let dummies = 3 * (m - n);
        let mut rrd = Vec::new();
        for r in 0..3 * n {
            for r2 in r + 1..3 * n {
                for d in 0..dummies {
                    rrd.push((r, r2, d));
                }
            }
        }
        let mut rdd = Vec::new();
        for r in 0..3 * n {
            for d in 0..dummies {
                for d2 in d + 1..dummies {
                    rdd.push((r, d, d2));
                }
            }
        }
        KvcLayout { n, m, rrd, rdd }
    }

    fn dummy(&self) -> usize {
        3 * self.n
    }

    fn b1(&self) -> usize {
        3 * self.m
    }
}

/// Gadget for `u = kv + c` with `0 < c < v`: cover agents, three booster
/// agents and two families of guards, each guard forbidding one mixed bundle
/// of element and dummy resources.
pub fn gen_x3c_kvc(input: &X3cInput, v: u64, k: u64, c: u64) -> Result<Instance> {
    let shape = KvcShape::new(v, k, c)?;
    let u = shape.u;
    let input = input.padded()?;
    let (n, m) = (input.n(), input.m());
    let plan = KvcLayout::new(n, m);

    let mut layout = Layout::new();
    let element = layout.resources("r", 3 * n);
    let dummy = layout.resources("d", 3 * (m - n));
    let s_b1 = layout.resource("s^b1");
    let s_b2 = layout.resources("s^b2_", shape.k1);
    let s_b3 = layout.resources("s^b3_", shape.k2);
    let pool_rrd = layout.resources("s^rrd_", shape.k2 * plan.rrd.len());
    let pool_rdd = layout.resources("s^rdd_", shape.k2 * plan.rdd.len());

    for (j, set) in input.sets().iter().enumerate() {
        let a = layout.agent(format!("a{}", j + 1));
        for &e in set {
            layout.set(a, element + e, u);
        }
        layout.set_range(a, dummy, 3 * (m - n), u);
        layout.set_range(a, s_b3, 3, u);
    }
    let b1 = layout.agent("b1");
    layout.set(b1, s_b1, u);
    let b2 = layout.agent("b2");
    layout.set(b2, s_b1, u);
    layout.set_range(b2, s_b2, shape.k1, v);
    let b3 = layout.agent("b3");
    layout.set_range(b3, s_b2, 2, u);
    layout.set_range(b3, s_b3, shape.k2, v);

    for &(r, r2, d) in &plan.rrd {
        let g = layout.agent(format!("g^rrd(r{},r{},d{})", r + 1, r2 + 1, d + 1));
        layout.set(g, element + r, u);
        layout.set(g, element + r2, u);
        layout.set(g, dummy + d, u);
        layout.set_range(g, pool_rrd, shape.k2 * plan.rrd.len(), v);
        layout.set_range(g, s_b3, 2, u);
    }
    for &(r, d, d2) in &plan.rdd {
        let g = layout.agent(format!("g^rdd(r{},d{},d{})", r + 1, d + 1, d2 + 1));
        layout.set(g, element + r, u);
        layout.set(g, dummy + d, u);
        layout.set(g, dummy + d2, u);
        layout.set_range(g, pool_rdd, shape.k2 * plan.rdd.len(), v);
        layout.set_range(g, s_b3, 2, u);
    }
    layout.build()
}

/// Allocation of the `x3c-kvc` gadget built from an exact cover.
pub fn x3c_kvc_witness(
    input: &X3cInput,
    v: u64,
    k: u64,
    c: u64,
    cover: &[usize],
) -> Result<Allocation> {
    let shape = KvcShape::new(v, k, c)?;
    let in_cover = input.check_cover(cover)?;
    let padded = input.padded()?;
    let (n, m) = (padded.n(), padded.m());
    let plan = KvcLayout::new(n, m);
    let s_b1 = plan.b1();
    let s_b2 = s_b1 + 1;
    let s_b3 = s_b2 + shape.k1;
    let pool_rrd = s_b3 + shape.k2;
    let pool_rdd = pool_rrd + shape.k2 * plan.rrd.len();
    let total = pool_rdd + shape.k2 * plan.rdd.len();

    let mut alloc = Allocation::empty(total);
    let mut next_dummy = plan.dummy();
    for (j, set) in padded.sets().iter().enumerate() {
        if in_cover.get(j).copied().unwrap_or(false) {
            set.iter().for_each(|&e| alloc.assign(e, Some(j)));
        } else {
            for r in next_dummy..next_dummy + 3 {
                alloc.assign(r, Some(j));
            }
            next_dummy += 3;
        }
    }
    alloc.assign(s_b1, Some(m));
    (s_b2..s_b3).for_each(|r| alloc.assign(r, Some(m + 1)));
    (s_b3..pool_rrd).for_each(|r| alloc.assign(r, Some(m + 2)));
    let guards = plan.rrd.len() + plan.rdd.len();
    for g in 0..guards {
        let start = pool_rrd + g * shape.k2;
        (start..start + shape.k2).for_each(|r| alloc.assign(r, Some(m + 3 + g)));
    }
    Ok(alloc)
}
