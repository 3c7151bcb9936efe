//! `efpa bench`: solve a family of instances at several sizes and record one
//! CSV row per run.

use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use efpa_core::generators::{gen_folklore, gen_random};
use efpa_core::{
    solve_with_budget, AlgorithmChoice, Error, Instance, Measure, OracleBudget, Query,
    UtilityClass, ValueClass,
};
use serde::Serialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Folklore,
    RandomBinary,
    RandomBivalued,
    RandomTernary,
    RandomGeneral,
}

impl Family {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }

    fn instance(self, size: Size, seed: u64) -> Result<Instance, Failure> {
        let random = |values| gen_random(size.n, size.m, UtilityClass::new(values), seed);
        Ok(match self {
            Family::Folklore => gen_folklore(size.n)?,
            Family::RandomBinary => random(ValueClass::Binary)?,
            Family::RandomBivalued => random(ValueClass::Bivalued)?,
            Family::RandomTernary => random(ValueClass::Ternary { low: 1, high: 2 })?,
            Family::RandomGeneral => random(ValueClass::General)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Size {
    pub n: usize,
    pub m: usize,
}

/// Comma-separated items, each `N`, `NxM` or an inclusive range `A..B`.
/// A bare `N` means `n = m = N`, except for folklore where `m = N + 1`.
pub fn parse_sizes(text: &str, family: Family) -> Result<Vec<Size>, Failure> {
    let number = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("bad size {s:?}")))
    };
    let square = |n: usize| Size {
        n,
        m: if family == Family::Folklore { n + 1 } else { n },
    };
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            out.extend((number(a)?..=number(b)?).map(square));
        } else if let Some((n, m)) = item.split_once('x') {
            if family == Family::Folklore {
                return Err(Failure::Usage("folklore sizes are agent counts".into()));
            }
            out.push(Size {
                n: number(n)?,
                m: number(m)?,
            });
        } else {
            out.push(square(number(item)?));
        }
    }
    if out.is_empty() {
        return Err(Failure::Usage("no sizes given".into()));
    }
    Ok(out)
}

/// A fixed threshold, or the number of agents or resources of each instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Fixed(u64),
    Agents,
    Resources,
}

impl Threshold {
    fn resolve(self, size: Size) -> u64 {
        match self {
            Threshold::Fixed(t) => t,
            Threshold::Agents => size.n as u64,
            Threshold::Resources => size.m as u64,
        }
    }
}

impl FromStr for Threshold {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "n" => Ok(Threshold::Agents),
            "m" => Ok(Threshold::Resources),
            _ => s
                .parse()
                .map(Threshold::Fixed)
                .map_err(|_| format!("threshold must be an integer, n or m, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<Size>,
    pub measure: Measure,
    pub threshold: Threshold,
    pub algorithm: AlgorithmChoice,
    pub timeout: Duration,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub t: u64,
    pub measure: String,
    pub algorithm: String,
    pub answer: String,
    pub elapsed_ms: f64,
    pub nodes: u64,
}

fn trial_seed(seed: u64, size: Size, trial: usize) -> u64 {
    let mix = (size.n as u64) << 42 ^ (size.m as u64) << 21 ^ trial as u64;
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ mix
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>, Failure> {
    let budget = OracleBudget::time_only(config.timeout)?;
    let mut rows = Vec::new();
    for &size in &config.sizes {
        for trial in 0..config.trials {
            let instance = config
                .family
                .instance(size, trial_seed(config.seed, size, trial))?;
            let t = config.threshold.resolve(size);
            let query = Query::new(instance, config.measure, t);
            let started = Instant::now();
            let (algorithm, answer, nodes) =
                match solve_with_budget(&query, config.algorithm, &budget) {
                    Ok(res) => (
                        res.stats.algorithm_used.clone(),
                        res.answer.to_string(),
                        res.stats.nodes_explored,
                    ),
                    Err(Error::BudgetExceeded { nodes_explored, .. }) => (
                        config.algorithm.to_string(),
                        "timeout".to_string(),
                        nodes_explored,
                    ),
                    Err(e) => return Err(e.into()),
                };
            rows.push(BenchRow {
                family: config.family.name(),
                n: size.n,
                m: size.m,
                t,
                measure: config.measure.to_string(),
                algorithm,
                answer,
                elapsed_ms: (started.elapsed().as_secs_f64() * 1e6).round() / 1e3,
                nodes,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> Result<(), Failure> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Failure::Usage(format!("cannot write CSV: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| Failure::Usage(format!("cannot write CSV: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_lists() {
        assert_eq!(
            parse_sizes("2..4", Family::Folklore).unwrap(),
            vec![
                Size { n: 2, m: 3 },
                Size { n: 3, m: 4 },
                Size { n: 4, m: 5 }
            ]
        );
        assert_eq!(
            parse_sizes("3x12, 5", Family::RandomGeneral).unwrap(),
            vec![Size { n: 3, m: 12 }, Size { n: 5, m: 5 }]
        );
        assert!(parse_sizes("3x4", Family::Folklore).is_err());
        assert!(parse_sizes("", Family::RandomBinary).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!("n".parse::<Threshold>().unwrap(), Threshold::Agents);
        assert_eq!("7".parse::<Threshold>().unwrap(), Threshold::Fixed(7));
        assert!("-1".parse::<Threshold>().is_err());
    }

    #[test]
    fn folklore_rows_are_all_yes_at_t_equal_n() {
        let config = BenchConfig {
            family: Family::Folklore,
            sizes: parse_sizes("2..5", Family::Folklore).unwrap(),
            measure: Measure::Size,
            threshold: Threshold::Agents,
            algorithm: AlgorithmChoice::Auto,
            timeout: Duration::from_secs(10),
            trials: 1,
            seed: 0,
        };
        let rows = run_bench(&config).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.answer == "yes" && r.t == r.n as u64));
        let mut out = Vec::new();
        write_csv(&rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("family,n,m,t,measure,algorithm,answer,elapsed_ms,nodes\n"));
        assert!(text.contains("folklore,2,3,2,size,"));
    }
}
