mod common;

use common::{instance, matrices, naive_exists};
use efpa_core::matching::{build_like_graph, efm_partition};
use efpa_core::oracle::oracle_solve;
use efpa_core::solvers::{
    solve_binary_esw, solve_binary_mcar, solve_binary_size, solve_binary_usw, solve_bivalued_t1,
};
use efpa_core::{
    is_envy_free, measure_value, solve, AlgorithmChoice, Answer, Instance, Measure, OracleBudget,
    Query, SolverResult,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fast(inst: &Instance, measure: Measure, t: u64) -> SolverResult {
    let budget = OracleBudget::default();
    match measure {
        Measure::Esw => solve_binary_esw(inst, t),
        Measure::Usw => solve_binary_usw(inst, t, &budget),
        Measure::Size => solve_binary_size(inst, t, &budget),
        Measure::Mcar => solve_binary_mcar(inst, t, &budget),
    }
    .unwrap()
}

fn assert_sound(inst: &Instance, measure: Measure, t: u64, res: &SolverResult) {
    if let Some(w) = &res.witness {
        assert!(
            is_envy_free(inst, w).unwrap(),
            "{} gave an envious witness",
            res.stats.algorithm_used
        );
        assert!(measure_value(inst, w, measure).unwrap() >= t);
    }
    assert_eq!(res.witness.is_some(), res.answer == Answer::Yes);
}

#[test]
fn fast_paths_match_brute_force_on_all_small_binary_instances() {
    for n in 1..=3 {
        for m in 0..=4 {
            for rows in matrices(n, m, &[0, 1]) {
                let inst = instance(&rows);
                for measure in Measure::ALL {
                    let mut previous = true;
                    for t in 0..=(m as u64 + 1) {
                        let res = fast(&inst, measure, t);
                        assert_sound(&inst, measure, t, &res);
                        let expected = naive_exists(&rows, measure, t);
                        assert_eq!(
                            res.is_yes(),
                            expected,
                            "{rows:?} {measure} t={t} via {}",
                            res.stats.algorithm_used
                        );
                        // YES at t implies YES below t
                        assert!(previous || !res.is_yes());
                        previous = res.is_yes();
                    }
                }
            }
        }
    }
}

#[test]
fn dispatcher_matches_oracle_on_random_binary_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.9);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..m).map(|_| u64::from(rng.gen_bool(p))).collect())
            .collect();
        let inst = instance(&rows);
        for measure in Measure::ALL {
            let t = rng.gen_range(1..=4);
            let q = Query::new(inst.clone(), measure, t);
            let auto = solve(&q, AlgorithmChoice::Auto).unwrap();
            let oracle = oracle_solve(&q, &OracleBudget::default()).unwrap();
            assert_sound(&inst, measure, t, &auto);
            assert_eq!(auto.answer, oracle.answer, "{rows:?} {measure} t={t}");
        }
    }
}

#[test]
fn usw_bucket_witness_is_envy_free_by_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fired = 0;
    for _ in 0..400 {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(10..=40);
        let t = rng.gen_range(2..=3u64);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..m).map(|_| u64::from(rng.gen_bool(0.6))).collect())
            .collect();
        let inst = instance(&rows);
        let res = solve_binary_usw(&inst, t, &OracleBudget::default()).unwrap();
        assert_sound(&inst, Measure::Usw, t, &res);
        if res.stats.algorithm_used != "binary-usw:bucket" {
            continue;
        }
        fired += 1;
        let part = efm_partition(&build_like_graph(&inst).unwrap());
        let w = res.witness.unwrap();
        let bundles = w.bundles(n);
        let allocated: Vec<usize> = bundles.iter().flatten().copied().collect();
        let holders: Vec<usize> = (0..n).filter(|&a| !bundles[a].is_empty()).collect();
        assert_eq!(holders, part.x_l);
        for &a in &holders {
            assert_eq!(bundles[a].len() as u64, t);
        }
        for a in 0..n {
            let likes: Vec<bool> = allocated.iter().map(|&r| inst.utility(a, r) == 1).collect();
            // every allocated resource sits in one bucket: an agent likes all of them or none
            assert!(
                likes.iter().all(|&l| l) || likes.iter().all(|&l| !l),
                "agent {a} splits the bucket"
            );
            if !part.in_x_l(a) {
                assert!(likes.iter().all(|&l| !l));
            }
        }
    }
    assert!(fired > 20, "bucket rule fired only {fired} times");
}

#[test]
fn size_enumeration_and_matching_routes_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut routes = std::collections::BTreeSet::new();
    for _ in 0..400 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=8);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..m).map(|_| u64::from(rng.gen_bool(0.5))).collect())
            .collect();
        let inst = instance(&rows);
        let t = rng.gen_range(1..=6);
        let res = solve_binary_size(&inst, t, &OracleBudget::default()).unwrap();
        let oracle = oracle_solve(
            &Query::new(inst.clone(), Measure::Size, t),
            &OracleBudget::default(),
        )
        .unwrap();
        assert_eq!(res.answer, oracle.answer, "{rows:?} t={t}");
        routes.insert(res.stats.algorithm_used);
    }
    for route in [
        "binary-size:few-y_l",
        "binary-size:matching",
        "binary-size:enumeration",
    ] {
        assert!(
            routes.contains(route),
            "route {route} never taken: {routes:?}"
        );
    }
}

#[test]
fn bivalued_solver_matches_brute_force() {
    for n in 1..=3 {
        for m in 0..=4 {
            for rows in matrices(n, m, &[1, 2]) {
                let inst = instance(&rows);
                let res = solve_bivalued_t1(&inst, &OracleBudget::default()).unwrap();
                assert_sound(&inst, Measure::Esw, 1, &res);
                assert_eq!(
                    res.is_yes(),
                    naive_exists(&rows, Measure::Esw, 1),
                    "{rows:?}"
                );
            }
        }
    }
}

#[test]
fn non_binary_inputs_are_rejected_by_binary_procedures() {
    let inst = Instance::from_rows([vec![0, 2]]).unwrap();
    assert!(solve_binary_esw(&inst, 1).is_err());
    assert!(solve_binary_usw(&inst, 1, &OracleBudget::default()).is_err());
    assert!(solve_binary_size(&inst, 1, &OracleBudget::default()).is_err());
    assert!(solve_binary_mcar(&inst, 1, &OracleBudget::default()).is_err());
}
