//! Like-graphs of binary instances, maximum matchings and the EFM partition.
//!
//! The like-graph has agents on the left, resources on the right and an edge
//! wherever an agent values a resource at 1. An *envy-free matching* leaves no
//! unmatched agent adjacent to a matched resource. Every bipartite graph splits
//! uniquely into `X = X_S + X_L` and `Y = Y_S + Y_L` such that all envy-free
//! matchings live inside `G[X_L; Y_L]` and an `X_L`-saturating one exists
//! there. The split is found from any maximum matching by an alternating
//! breadth-first search started at the unmatched agents.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LikeGraph {
    n_left: usize,
    m_right: usize,
    adjacency: Vec<Vec<usize>>,
}

impl LikeGraph {
    /// Builds a graph from per-left-vertex neighbor lists. Lists are sorted and
    /// deduplicated.
    pub fn from_adjacency(
        n_left: usize,
        m_right: usize,
        mut adjacency: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if adjacency.len() != n_left {
            return Err(Error::InvalidParameter(format!(
                "{} adjacency lists for {n_left} left vertices",
                adjacency.len()
            )));
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            if let Some(&y) = list.last() {
                if y >= m_right {
                    return Err(Error::ResourceOutOfRange {
                        resource: y,
                        m_resources: m_right,
                    });
                }
            }
        }
        Ok(LikeGraph {
            n_left,
            m_right,
            adjacency,
        })
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn m_right(&self) -> usize {
        self.m_right
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adjacency[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adjacency[x].binary_search(&y).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

/// Like-graph of a binary instance: edge `(a, r)` iff `u_a(r) = 1`.
pub fn build_like_graph(instance: &Instance) -> Result<LikeGraph> {
    if !instance.is_binary() {
        return Err(Error::WrongUtilityClass {
            operation: "build_like_graph",
            expected: "binary",
        });
    }
    let adjacency = instance
        .rows()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v == 1)
                .map(|(r, _)| r)
                .collect()
        })
        .collect();
    Ok(LikeGraph {
        n_left: instance.n_agents(),
        m_right: instance.m_resources(),
        adjacency,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pair_of_left: Vec<Option<usize>>,
    pub pair_of_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n_left: usize, m_right: usize) -> Self {
        Matching {
            pair_of_left: vec![None; n_left],
            pair_of_right: vec![None; m_right],
        }
    }

    /// Matching from explicit `(left, right)` pairs; fails if a vertex is used twice
    /// or a pair is not an edge of `graph`.
    pub fn from_pairs(graph: &LikeGraph, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matching::empty(graph.n_left(), graph.m_right());
        for &(x, y) in pairs {
            if x >= graph.n_left() || y >= graph.m_right() || !graph.has_edge(x, y) {
                return Err(Error::InvalidParameter(format!(
                    "({x}, {y}) is not an edge"
                )));
            }
            if m.pair_of_left[x].is_some() || m.pair_of_right[y].is_some() {
                return Err(Error::InvalidParameter(format!(
                    "({x}, {y}) reuses a matched vertex"
                )));
            }
            m.pair_of_left[x] = Some(y);
            m.pair_of_right[y] = Some(x);
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.pair_of_left.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Matched pairs ordered by left vertex.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pair_of_left
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .collect()
    }

    /// The two pair vectors agree and every pair is an edge of `graph`.
    pub fn is_valid_for(&self, graph: &LikeGraph) -> bool {
        if self.pair_of_left.len() != graph.n_left() || self.pair_of_right.len() != graph.m_right()
        {
            return false;
        }
        let left_ok = self.pair_of_left.iter().enumerate().all(|(x, y)| match y {
            Some(y) => {
                *y < graph.m_right() && self.pair_of_right[*y] == Some(x) && graph.has_edge(x, *y)
            }
            None => true,
        });
        let right_ok = self.pair_of_right.iter().enumerate().all(|(y, x)| match x {
            Some(x) => *x < graph.n_left() && self.pair_of_left[*x] == Some(y),
            None => true,
        });
        left_ok && right_ok
    }
}

const UNREACHED: usize = usize::MAX;

/// Maximum-cardinality matching by Hopcroft–Karp layered augmentation.
///
/// Free left vertices are processed in index order and neighbors are scanned in
/// index order, so the result depends only on the graph.
pub fn maximum_matching(graph: &LikeGraph) -> Matching {
    let n = graph.n_left();
    let mut m = Matching::empty(n, graph.m_right());
    let mut dist = vec![UNREACHED; n];
    let mut cursor = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut stack = Vec::new();
    let mut via = Vec::new();

    loop {
        // Layer the graph from every free left vertex.
        queue.clear();
        for (x, d) in dist.iter_mut().enumerate().take(n) {
            if m.pair_of_left[x].is_none() {
                *d = 0;
                queue.push_back(x);
            } else {
                *d = UNREACHED;
            }
        }
        let mut limit = UNREACHED;
        while let Some(x) = queue.pop_front() {
            if dist[x] > limit {
                continue;
            }
            for &y in graph.neighbors(x) {
                match m.pair_of_right[y] {
                    None => {
                        if limit == UNREACHED {
                            limit = dist[x];
                        }
                    }
                    Some(x2) if dist[x2] == UNREACHED => {
                        dist[x2] = dist[x] + 1;
                        queue.push_back(x2);
                    }
                    Some(_) => {}
                }
            }
        }
        if limit == UNREACHED {
            break;
        }

        // Vertex-disjoint shortest augmenting paths, found depth-first.
        cursor.iter_mut().for_each(|c| *c = 0);
        for root in 0..n {
            if m.pair_of_left[root].is_some() || dist[root] != 0 {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root);
            while let Some(&x) = stack.last() {
                let adj = graph.neighbors(x);
                if cursor[x] == adj.len() {
                    dist[x] = UNREACHED;
                    stack.pop();
                    via.pop();
                    continue;
                }
                let y = adj[cursor[x]];
                cursor[x] += 1;
                match m.pair_of_right[y] {
                    None if dist[x] == limit => {
                        via.push(y);
                        for (&sx, &sy) in stack.iter().zip(via.iter()) {
                            m.pair_of_left[sx] = Some(sy);
                            m.pair_of_right[sy] = Some(sx);
                        }
                        break;
                    }
                    Some(x2) if dist[x] < limit && dist[x2] == dist[x] + 1 => {
                        via.push(y);
                        stack.push(x2);
                    }
                    _ => {}
                }
            }
        }
    }
    m
}

/// The unique split of agents and resources induced by envy-free matchings.
/// All four vectors are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfmPartition {
    pub x_s: Vec<usize>,
    pub x_l: Vec<usize>,
    pub y_s: Vec<usize>,
    pub y_l: Vec<usize>,
}

impl EfmPartition {
    pub fn in_x_l(&self, agent: usize) -> bool {
        self.x_l.binary_search(&agent).is_ok()
    }

    pub fn in_y_l(&self, resource: usize) -> bool {
        self.y_l.binary_search(&resource).is_ok()
    }
}

/// EFM partition together with the maximum envy-free matching it certifies.
pub fn efm_decomposition(graph: &LikeGraph) -> (EfmPartition, Matching) {
    let max = maximum_matching(graph);
    let mut reached_left = vec![false; graph.n_left()];
    let mut reached_right = vec![false; graph.m_right()];
    let mut queue = VecDeque::new();
    for (x, reached) in reached_left.iter_mut().enumerate() {
        if max.pair_of_left[x].is_none() {
            *reached = true;
            queue.push_back(x);
        }
    }
    // Left to right along non-matching edges, right to left along matching edges.
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors(x) {
            if reached_right[y] || max.pair_of_left[x] == Some(y) {
                continue;
            }
            reached_right[y] = true;
            let x2 = max.pair_of_right[y]
                .expect("free resource next to a free agent contradicts maximality");
            if !reached_left[x2] {
                reached_left[x2] = true;
                queue.push_back(x2);
            }
        }
    }

    let split = |mask: &[bool]| {
        let (mut small, mut large) = (Vec::new(), Vec::new());
        for (i, &hit) in mask.iter().enumerate() {
            if hit {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        (small, large)
    };
    let (x_s, x_l) = split(&reached_left);
    let (y_s, y_l) = split(&reached_right);

    let mut envy_free = Matching::empty(graph.n_left(), graph.m_right());
    for &x in &x_l {
        let y = max.pair_of_left[x].expect("every agent outside X_S is matched");
        debug_assert!(!reached_right[y]);
        envy_free.pair_of_left[x] = Some(y);
        envy_free.pair_of_right[y] = Some(x);
    }
    (EfmPartition { x_s, x_l, y_s, y_l }, envy_free)
}

pub fn efm_partition(graph: &LikeGraph) -> EfmPartition {
    efm_decomposition(graph).0
}

/// An `X_L`-saturating matching inside `G[X_L; Y_L]`; it has maximum size among
/// all envy-free matchings.
pub fn max_envy_free_matching(graph: &LikeGraph) -> Matching {
    efm_decomposition(graph).1
}

/// No unmatched left vertex is adjacent to a matched right vertex.
pub fn is_envy_free_matching(graph: &LikeGraph, matching: &Matching) -> bool {
    (0..graph.n_left())
        .filter(|&x| matching.pair_of_left[x].is_none())
        .all(|x| {
            graph
                .neighbors(x)
                .iter()
                .all(|&y| matching.pair_of_right[y].is_none())
        })
}
