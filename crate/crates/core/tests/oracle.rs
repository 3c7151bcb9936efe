mod common;

use common::{envy_free, instance, matrices, naive_exists, owner_vectors, score};
use efpa_core::matching::{build_like_graph, efm_partition, is_envy_free_matching, Matching};
use efpa_core::oracle::{check_ef_property, normalize_ef_allocation, oracle_solve};
use efpa_core::{Allocation, Instance, Measure, OracleBudget, Query};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn induced_matching(inst: &Instance, alloc: &Allocation) -> Matching {
    let graph = build_like_graph(inst).unwrap();
    let pairs: Vec<(usize, usize)> = alloc
        .owners()
        .iter()
        .enumerate()
        .filter_map(|(r, o)| o.map(|a| (a, r)))
        .collect();
    Matching::from_pairs(&graph, &pairs).unwrap()
}

#[test]
fn every_envy_free_allocation_lives_in_the_large_parts() {
    for n in 1..=3 {
        for m in 1..=4 {
            for rows in matrices(n, m, &[0, 1]) {
                let inst = instance(&rows);
                let part = efm_partition(&build_like_graph(&inst).unwrap());
                for owner in owner_vectors(n, m).filter(|o| envy_free(&rows, o)) {
                    let alloc = Allocation::new(owner);
                    assert!(
                        check_ef_property(&inst, &alloc, &part).unwrap(),
                        "{rows:?} {alloc:?}"
                    );
                    let normal = normalize_ef_allocation(&inst, &alloc).unwrap();
                    assert!(efpa_core::is_envy_free(&inst, &normal).unwrap());
                    let graph = build_like_graph(&inst).unwrap();
                    assert!(is_envy_free_matching(
                        &graph,
                        &induced_matching(&inst, &normal)
                    ));
                }
            }
        }
    }
}

#[test]
fn one_resource_each_is_equivalent_to_enough_large_resources() {
    for n in 1..=3 {
        for m in 0..=4 {
            for rows in matrices(n, m, &[0, 1]) {
                let some_mcar = naive_exists(&rows, Measure::Mcar, 1);
                let one_each = owner_vectors(n, m).any(|o| {
                    envy_free(&rows, &o)
                        && (0..n).all(|a| o.iter().filter(|x| **x == Some(a)).count() == 1)
                });
                let inst = instance(&rows);
                let y_l = efm_partition(&build_like_graph(&inst).unwrap()).y_l.len();
                assert_eq!(some_mcar, one_each, "{rows:?}");
                assert_eq!(some_mcar, n <= y_l, "{rows:?}");
            }
        }
    }
}

#[test]
fn oracle_agrees_with_naive_enumeration_on_general_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..400 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=5);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(0..=4)).collect())
            .collect();
        let inst = instance(&rows);
        for measure in Measure::ALL {
            let t = rng.gen_range(0..=6);
            let res = oracle_solve(
                &Query::new(inst.clone(), measure, t),
                &OracleBudget::default(),
            )
            .unwrap();
            assert_eq!(
                res.is_yes(),
                naive_exists(&rows, measure, t),
                "{rows:?} {measure} t={t}"
            );
            if let Some(w) = res.witness {
                assert!(envy_free(&rows, w.owners()));
                assert!(score(&rows, w.owners(), measure) >= t);
            }
        }
    }
}

#[test]
fn oracle_returns_the_first_vector_in_enumeration_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=4);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        let measure = Measure::ALL[rng.gen_range(0..4)];
        let t = rng.gen_range(1..=4);
        // resource 0 is the most significant position; None sorts before agents
        let mut vectors: Vec<Vec<Option<usize>>> = owner_vectors(n, m).collect();
        vectors.sort();
        let first = vectors
            .into_iter()
            .find(|o| envy_free(&rows, o) && score(&rows, o, measure) >= t);
        let res = oracle_solve(
            &Query::new(instance(&rows), measure, t),
            &OracleBudget::default(),
        )
        .unwrap();
        assert_eq!(
            res.witness.map(|w| w.owners().to_vec()),
            first,
            "{rows:?} {measure} t={t}"
        );
    }
}

#[test]
fn threshold_one_answers_coincide_for_one_two_utilities() {
    for n in 1..=3 {
        for m in 0..=4 {
            for rows in matrices(n, m, &[1, 2]) {
                let inst = instance(&rows);
                let answers: Vec<bool> = Measure::ALL
                    .iter()
                    .map(|&measure| {
                        oracle_solve(
                            &Query::new(inst.clone(), measure, 1),
                            &OracleBudget::default(),
                        )
                        .unwrap()
                        .is_yes()
                    })
                    .collect();
                assert!(
                    answers.iter().all(|&a| a == answers[0]),
                    "{rows:?}: {answers:?}"
                );
            }
        }
    }
}
