//! Test-only brute force, written without the library's search or
//! evaluation code so it can serve as an independent reference.

#![allow(dead_code)]

use efpa_core::matching::LikeGraph;
use efpa_core::{Instance, Measure};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every owner vector over `n` agents and `m` resources, `None` meaning unallocated.
pub fn owner_vectors(n: usize, m: usize) -> impl Iterator<Item = Vec<Option<usize>>> {
    let total = (n + 1).pow(m as u32);
    (0..total).map(move |mut code| {
        (0..m)
            .map(|_| {
                let digit = code % (n + 1);
                code /= n + 1;
                digit.checked_sub(1)
            })
            .collect()
    })
}

/// `values[a][b]` is what agent `a` thinks of the bundle of agent `b`.
pub fn values(rows: &[Vec<u64>], owner: &[Option<usize>]) -> Vec<Vec<u64>> {
    let n = rows.len();
    let mut out = vec![vec![0; n]; n];
    for (r, o) in owner.iter().enumerate() {
        if let Some(b) = *o {
            for a in 0..n {
                out[a][b] += rows[a][r];
            }
        }
    }
    out
}

pub fn envy_free(rows: &[Vec<u64>], owner: &[Option<usize>]) -> bool {
    let vals = values(rows, owner);
    (0..rows.len()).all(|a| (0..rows.len()).all(|b| vals[a][b] <= vals[a][a]))
}

pub fn score(rows: &[Vec<u64>], owner: &[Option<usize>], measure: Measure) -> u64 {
    let n = rows.len();
    let vals = values(rows, owner);
    let own: Vec<u64> = (0..n).map(|a| vals[a][a]).collect();
    let counts: Vec<u64> = (0..n)
        .map(|a| owner.iter().filter(|o| **o == Some(a)).count() as u64)
        .collect();
    match measure {
        Measure::Usw => own.iter().sum(),
        Measure::Esw => *own.iter().min().unwrap(),
        Measure::Size => counts.iter().sum(),
        Measure::Mcar => *counts.iter().min().unwrap(),
    }
}

/// Best measure value over all envy-free allocations.
pub fn best(rows: &[Vec<u64>], measure: Measure) -> u64 {
    let m = rows.first().map_or(0, Vec::len);
    owner_vectors(rows.len(), m)
        .filter(|o| envy_free(rows, o))
        .map(|o| score(rows, &o, measure))
        .max()
        .unwrap()
}

pub fn naive_exists(rows: &[Vec<u64>], measure: Measure, t: u64) -> bool {
    best(rows, measure) >= t
}

/// All `n x m` matrices with entries from `alphabet`.
pub fn matrices(n: usize, m: usize, alphabet: &[u64]) -> impl Iterator<Item = Vec<Vec<u64>>> + '_ {
    let k = alphabet.len();
    let total = k.pow((n * m) as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        let v = alphabet[code % k];
                        code /= k;
                        v
                    })
                    .collect()
            })
            .collect()
    })
}

pub fn instance(rows: &[Vec<u64>]) -> Instance {
    if rows[0].is_empty() {
        Instance::without_resources(rows.len()).unwrap()
    } else {
        Instance::from_rows(rows.to_vec()).unwrap()
    }
}

pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize, density: f64) -> LikeGraph {
    let adjacency = (0..n)
        .map(|_| (0..m).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    LikeGraph::from_adjacency(n, m, adjacency).unwrap()
}

pub fn permutation(rng: &mut impl Rng, len: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..len).collect();
    p.shuffle(rng);
    p
}

/// Every matching of the graph as a list of `(left, right)` pairs.
pub fn all_matchings(graph: &LikeGraph) -> Vec<Vec<(usize, usize)>> {
    fn go(
        g: &LikeGraph,
        x: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if x == g.n_left() {
            out.push(cur.clone());
            return;
        }
        go(g, x + 1, used, cur, out);
        for &y in g.neighbors(x) {
            if !used[y] {
                used[y] = true;
                cur.push((x, y));
                go(g, x + 1, used, cur, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        graph,
        0,
        &mut vec![false; graph.m_right()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// No unmatched left vertex likes a matched right vertex.
pub fn pairs_envy_free(graph: &LikeGraph, pairs: &[(usize, usize)]) -> bool {
    let matched_left: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let matched_right: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    (0..graph.n_left())
        .filter(|x| !matched_left.contains(x))
        .all(|x| {
            graph
                .neighbors(x)
                .iter()
                .all(|y| !matched_right.contains(y))
        })
}
