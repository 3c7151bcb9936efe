//! Per-measure decision procedures and the dispatcher choosing among them.
//!
//! | utilities | measure | threshold | route                              |
//! |-----------|---------|-----------|------------------------------------|
//! | any       | any     | 0         | empty allocation                   |
//! | binary    | ESW     | any       | copy-matching (polynomial)         |
//! | binary    | USW     | any       | EFM partition + bounded search     |
//! | binary    | SIZE    | any       | EFM partition + bounded search     |
//! | binary    | MCAR    | 1         | `|X| <= |Y_L|` (polynomial)        |
//! | {1, 2}    | any     | 1         | one-each test, then shape search   |
//! | otherwise |         |           | exhaustive oracle                  |

mod binary;
mod bivalued;
mod buckets;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub use binary::{solve_binary_esw, solve_binary_mcar, solve_binary_size, solve_binary_usw};
pub use bivalued::solve_bivalued_t1;

use crate::allocation::Measure;
use crate::error::{Error, Result};
use crate::instance::{classify_utilities, ValueClass};
use crate::oracle::{oracle_solve, OracleBudget};
use crate::query::{Query, SolverResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AlgorithmChoice {
    #[default]
    Auto,
    /// Polynomial-time binary procedures only.
    PolyBinary,
    /// Binary procedures including the parameterized searches.
    FptBinary,
    Oracle,
}

impl fmt::Display for AlgorithmChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgorithmChoice::Auto => "auto",
            AlgorithmChoice::PolyBinary => "poly",
            AlgorithmChoice::FptBinary => "fpt",
            AlgorithmChoice::Oracle => "oracle",
        })
    }
}

impl FromStr for AlgorithmChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(AlgorithmChoice::Auto),
            "poly" => Ok(AlgorithmChoice::PolyBinary),
            "fpt" => Ok(AlgorithmChoice::FptBinary),
            "oracle" => Ok(AlgorithmChoice::Oracle),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm {other:?}"
            ))),
        }
    }
}

pub fn solve(query: &Query, choice: AlgorithmChoice) -> Result<SolverResult> {
    solve_with_budget(query, choice, &OracleBudget::default())
}

pub fn solve_with_budget(
    query: &Query,
    choice: AlgorithmChoice,
    budget: &OracleBudget,
) -> Result<SolverResult> {
    let started = Instant::now();
    let instance = &query.instance;
    let t = query.threshold;
    let result = match choice {
        AlgorithmChoice::Auto => {
            if t == 0 {
                binary::trivial(instance)
            } else {
                match classify_utilities(instance).values {
                    ValueClass::Binary => binary_route(query, budget, true)?,
                    ValueClass::Bivalued if t == 1 => solve_bivalued_t1(instance, budget)?,
                    _ => oracle_solve(query, budget)?,
                }
            }
        }
        AlgorithmChoice::PolyBinary => {
            require_binary(query)?;
            match (query.measure, t) {
                (Measure::Esw, _) | (_, 0) | (_, 1) => binary_route(query, budget, false)?,
                (measure, _) => {
                    return Err(Error::UnsupportedAlgorithm(format!(
                        "no polynomial-time procedure for binary {measure} with threshold {t}"
                    )))
                }
            }
        }
        AlgorithmChoice::FptBinary => {
            require_binary(query)?;
            if query.measure == Measure::Mcar && t > 1 {
                return Err(Error::UnsupportedAlgorithm(format!(
                    "no parameterized procedure for binary mcar with threshold {t}"
                )));
            }
            binary_route(query, budget, false)?
        }
        AlgorithmChoice::Oracle => oracle_solve(query, budget)?,
    };
    debug_assert!(
        witness_holds(query, &result),
        "unsound witness from {}",
        result.stats.algorithm_used
    );
    Ok(result.timed(started.elapsed()))
}

fn require_binary(query: &Query) -> Result<()> {
    if query.instance.is_binary() {
        Ok(())
    } else {
        Err(Error::WrongUtilityClass {
            operation: "binary procedures",
            expected: "binary",
        })
    }
}

fn binary_route(query: &Query, budget: &OracleBudget, allow_oracle: bool) -> Result<SolverResult> {
    let (inst, t) = (&query.instance, query.threshold);
    match query.measure {
        Measure::Esw => solve_binary_esw(inst, t),
        Measure::Usw => solve_binary_usw(inst, t, budget),
        Measure::Size => solve_binary_size(inst, t, budget),
        Measure::Mcar if t <= 1 || allow_oracle => solve_binary_mcar(inst, t, budget),
        Measure::Mcar => Err(Error::UnsupportedAlgorithm(format!(
            "no fast procedure for binary mcar with threshold {t}"
        ))),
    }
}

fn witness_holds(query: &Query, result: &SolverResult) -> bool {
    match (&result.witness, result.is_yes()) {
        (Some(w), true) => matches!(
            crate::allocation::verify(&query.instance, w, query.measure, query.threshold),
            Ok(None)
        ),
        (None, false) => true,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::Allocation;
    use crate::instance::Instance;
    use crate::query::Answer;

    fn folklore(n: usize) -> Instance {
        Instance::from_rows(vec![vec![1u64; n + 1]; n]).unwrap()
    }

    #[test]
    fn folklore_size() {
        let no = solve(
            &Query::new(folklore(2), Measure::Size, 3),
            AlgorithmChoice::Auto,
        )
        .unwrap();
        assert_eq!(no.answer, Answer::No);
        let yes = solve(
            &Query::new(folklore(2), Measure::Size, 2),
            AlgorithmChoice::Auto,
        )
        .unwrap();
        let w = yes.witness.unwrap();
        assert_eq!(
            w.bundles(2).iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 1]
        );
    }

    #[test]
    fn zero_threshold_is_trivially_yes() {
        let inst = Instance::from_rows([vec![3, 0, 7], vec![1, 1, 1]]).unwrap();
        for m in Measure::ALL {
            let res = solve(&Query::new(inst.clone(), m, 0), AlgorithmChoice::Auto).unwrap();
            assert_eq!(res.witness, Some(Allocation::empty(3)));
            assert_eq!(res.stats.algorithm_used, "trivial");
        }
    }

    #[test]
    fn dispatch_routes() {
        let route = |rows: Vec<Vec<u64>>, m, t| {
            let q = Query::new(Instance::from_rows(rows).unwrap(), m, t);
            solve(&q, AlgorithmChoice::Auto)
                .unwrap()
                .stats
                .algorithm_used
        };
        assert!(route(vec![vec![1, 0], vec![0, 1]], Measure::Esw, 1).starts_with("binary-esw"));
        assert!(route(vec![vec![1, 0], vec![0, 1]], Measure::Usw, 2).starts_with("binary-usw"));
        assert!(route(vec![vec![1, 0], vec![0, 1]], Measure::Size, 2).starts_with("binary-size"));
        assert!(route(vec![vec![1, 0], vec![0, 1]], Measure::Mcar, 1).starts_with("binary-mcar"));
        assert_eq!(
            route(vec![vec![1, 0], vec![0, 1]], Measure::Mcar, 2),
            "oracle"
        );
        assert!(route(vec![vec![1, 2], vec![2, 1]], Measure::Usw, 1).starts_with("bivalued-t1"));
        assert_eq!(
            route(vec![vec![1, 2], vec![2, 1]], Measure::Usw, 2),
            "oracle"
        );
        assert_eq!(route(vec![vec![0, 2, 5]], Measure::Esw, 1), "oracle");
    }

    #[test]
    fn explicit_choices_check_preconditions() {
        let bin = Instance::from_rows([vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let q = |m, t| Query::new(bin.clone(), m, t);
        assert!(matches!(
            solve(&q(Measure::Usw, 2), AlgorithmChoice::PolyBinary),
            Err(Error::UnsupportedAlgorithm(_))
        ));
        assert!(solve(&q(Measure::Esw, 2), AlgorithmChoice::PolyBinary).is_ok());
        assert!(solve(&q(Measure::Usw, 2), AlgorithmChoice::FptBinary).is_ok());
        assert!(solve(&q(Measure::Mcar, 2), AlgorithmChoice::FptBinary).is_err());
        assert_eq!(
            solve(&q(Measure::Mcar, 2), AlgorithmChoice::Oracle)
                .unwrap()
                .stats
                .algorithm_used,
            "oracle"
        );
        let general = Query::new(Instance::from_rows([vec![3]]).unwrap(), Measure::Usw, 1);
        assert!(matches!(
            solve(&general, AlgorithmChoice::FptBinary),
            Err(Error::WrongUtilityClass { .. })
        ));
    }

    #[test]
    fn algorithm_choice_parses() {
        for c in [
            AlgorithmChoice::Auto,
            AlgorithmChoice::PolyBinary,
            AlgorithmChoice::FptBinary,
            AlgorithmChoice::Oracle,
        ] {
            assert_eq!(c.to_string().parse::<AlgorithmChoice>().unwrap(), c);
        }
    }
}
