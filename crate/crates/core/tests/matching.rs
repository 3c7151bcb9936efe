mod common;

use common::{all_matchings, pairs_envy_free, permutation, random_graph};
use efpa_core::matching::{
    efm_decomposition, efm_partition, is_envy_free_matching, max_envy_free_matching,
    maximum_matching, EfmPartition, LikeGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn relabel(graph: &LikeGraph, pa: &[usize], pr: &[usize]) -> LikeGraph {
    let mut adjacency = vec![Vec::new(); graph.n_left()];
    for (x, y) in graph.edges() {
        adjacency[pa[x]].push(pr[y]);
    }
    LikeGraph::from_adjacency(graph.n_left(), graph.m_right(), adjacency).unwrap()
}

fn pull_back(part: &EfmPartition, pa: &[usize], pr: &[usize]) -> EfmPartition {
    let back = |side: &[usize], perm: &[usize]| {
        let mut out: Vec<usize> = (0..perm.len())
            .filter(|&i| side.contains(&perm[i]))
            .collect();
        out.sort_unstable();
        out
    };
    EfmPartition {
        x_s: back(&part.x_s, pa),
        x_l: back(&part.x_l, pa),
        y_s: back(&part.y_s, pr),
        y_l: back(&part.y_l, pr),
    }
}

fn check_conditions(graph: &LikeGraph) {
    let (part, ef) = efm_decomposition(graph);
    let mut left: Vec<usize> = part.x_s.iter().chain(&part.x_l).copied().collect();
    left.sort_unstable();
    assert_eq!(left, (0..graph.n_left()).collect::<Vec<_>>());
    let mut right: Vec<usize> = part.y_s.iter().chain(&part.y_l).copied().collect();
    right.sort_unstable();
    assert_eq!(right, (0..graph.m_right()).collect::<Vec<_>>());

    // X_L is saturated inside G[X_L; Y_L] and the matching is envy-free
    assert!(ef.is_valid_for(graph));
    assert_eq!(ef.len(), part.x_l.len());
    for (x, y) in ef.pairs() {
        assert!(part.in_x_l(x) && part.in_y_l(y));
    }
    assert!(is_envy_free_matching(graph, &ef));
    // no edges between X_S and Y_L
    for &x in &part.x_s {
        assert!(graph.neighbors(x).iter().all(|&y| !part.in_y_l(y)));
    }
    // every Y_S vertex has a neighbour in X_S
    for &y in &part.y_s {
        assert!(part.x_s.iter().any(|&x| graph.has_edge(x, y)));
    }
}

#[test]
fn partition_conditions_and_uniqueness_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xefa);
    for _ in 0..1500 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=8);
        let density = rng.gen_range(0.05..0.8);
        let graph = random_graph(&mut rng, n, m, density);
        check_conditions(&graph);

        let part = efm_partition(&graph);
        for _ in 0..2 {
            let pa = permutation(&mut rng, n);
            let pr = permutation(&mut rng, m);
            let moved = efm_partition(&relabel(&graph, &pa, &pr));
            assert_eq!(pull_back(&moved, &pa, &pr), part);
        }
    }
}

#[test]
fn maximality_and_containment_by_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..600 {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(0..=5);
        let density = rng.gen_range(0.1..0.9);
        let graph = random_graph(&mut rng, n, m, density);
        let part = efm_partition(&graph);
        let all = all_matchings(&graph);

        let max_size = all.iter().map(Vec::len).max().unwrap();
        assert_eq!(maximum_matching(&graph).len(), max_size);

        let mut best_ef = 0;
        for pairs in all.iter().filter(|p| pairs_envy_free(&graph, p)) {
            best_ef = best_ef.max(pairs.len());
            for &(x, y) in pairs {
                assert!(
                    part.in_x_l(x) && part.in_y_l(y),
                    "{pairs:?} leaves G[X_L; Y_L]"
                );
            }
        }
        assert_eq!(max_envy_free_matching(&graph).len(), best_ef);

        // every X_L-saturating matching inside G[X_L; Y_L] is envy-free
        for pairs in &all {
            let inside = pairs.iter().all(|&(x, y)| part.in_x_l(x) && part.in_y_l(y));
            if inside && pairs.len() == part.x_l.len() {
                assert!(pairs_envy_free(&graph, pairs));
            }
        }
    }
}

#[test]
fn every_small_graph_obeys_the_conditions() {
    for n in 1..=3 {
        for m in 0..=3 {
            for code in 0u32..1 << (n * m) {
                let adjacency = (0..n)
                    .map(|x| (0..m).filter(|y| code >> (x * m + y) & 1 == 1).collect())
                    .collect();
                check_conditions(&LikeGraph::from_adjacency(n, m, adjacency).unwrap());
            }
        }
    }
}
