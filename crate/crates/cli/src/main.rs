use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use efpa_cli::bench::{parse_sizes, run_bench, write_csv, BenchConfig, Family, Threshold};
use efpa_cli::document::{
    read_allocation, read_instance, write_text, AllocationDocument, InstanceDocument,
};
use efpa_cli::gadget::{generate, ClassName, Gadget, GadgetParams};
use efpa_cli::{budget, Failure, SolveReport};
use efpa_core::oracle::DEFAULT_MAX_OWNER_VECTORS;
use efpa_core::{solve_with_budget, AlgorithmChoice, Answer, Measure, Query};

#[derive(Parser)]
#[command(name = "efpa", version, about = "Envy-free partial allocation queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an envy-free allocation reaches the threshold.
    /// Exit status: 0 yes, 1 no, 2 usage error, 3 budget exceeded.
    Solve(SolveArgs),
    /// Check an allocation: exit 0 if it is envy-free and meets the threshold, 1 otherwise.
    Verify(VerifyArgs),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Solve a family of instances and write one CSV row per run.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    measure: Measure,
    #[arg(long)]
    threshold: u64,
    #[arg(long, default_value_t = AlgorithmChoice::Auto)]
    algorithm: AlgorithmChoice,
    /// Where to write the allocation when the answer is yes.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Cap on the owner vectors an exhaustive search may face.
    #[arg(long, env = "EFPA_BUDGET", default_value_t = DEFAULT_MAX_OWNER_VECTORS)]
    budget: u64,
    /// Wall-clock cap in seconds.
    #[arg(long, default_value_t = 600.0)]
    timeout: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    allocation: PathBuf,
    #[arg(long)]
    measure: Measure,
    #[arg(long)]
    threshold: u64,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    gadget: Gadget,
    /// Agents (folklore, random) or ground set size / 3 (X3C gadgets).
    #[arg(long)]
    n: Option<usize>,
    /// Resources of a random instance; defaults to n.
    #[arg(long)]
    m: Option<usize>,
    /// 3-Partition numbers, comma separated.
    #[arg(long)]
    numbers: Option<String>,
    /// X3C sets: triples separated by semicolons, e.g. "0,1,2;1,3,4".
    #[arg(long)]
    sets: Option<String>,
    #[arg(long)]
    v: Option<u64>,
    #[arg(long)]
    u: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    c: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance to extend with shadows.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Value class of a random instance.
    #[arg(long)]
    class: Option<ClassName>,
    /// Give every agent of a random instance the same row.
    #[arg(long)]
    identical: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    family: Family,
    /// Comma-separated sizes: N, NxM or A..B.
    #[arg(long)]
    sizes: String,
    #[arg(long)]
    measure: Measure,
    /// An integer, or n / m for the size of each instance.
    #[arg(long)]
    threshold: Threshold,
    /// Seconds allowed per run.
    #[arg(long)]
    timeout: f64,
    #[arg(long, default_value_t = AlgorithmChoice::Auto)]
    algorithm: AlgorithmChoice,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn solve(args: SolveArgs) -> Result<ExitCode, Failure> {
    let instance = read_instance(&args.input)?;
    let budget = budget(args.budget, args.timeout)?;
    let query = Query::new(instance, args.measure, args.threshold);
    let started = Instant::now();
    let result = match solve_with_budget(&query, args.algorithm, &budget) {
        Ok(result) => result,
        Err(e) => {
            let failure = Failure::from(e);
            if let (true, Failure::Budget { nodes_explored, .. }) = (args.json, &failure) {
                let report = SolveReport {
                    answer: "unknown".into(),
                    algorithm_used: args.algorithm.to_string(),
                    nodes_explored: *nodes_explored,
                    elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
                };
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("plain data serializes")
                );
            }
            return Err(failure);
        }
    };
    if let (Some(path), Some(witness)) = (&args.witness, &result.witness) {
        write_text(
            path,
            &AllocationDocument::from_allocation(witness).to_json(),
        )?;
    }
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&SolveReport::from_result(&result))
                .expect("plain data serializes")
        );
    } else {
        println!(
            "{} ({}, {} nodes)",
            result.answer, result.stats.algorithm_used, result.stats.nodes_explored
        );
    }
    Ok(match result.answer {
        Answer::Yes => ExitCode::SUCCESS,
        Answer::No => ExitCode::from(1),
    })
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    let instance = read_instance(&args.input)?;
    let allocation = read_allocation(&args.allocation, &instance)?;
    match efpa_core::verify(&instance, &allocation, args.measure, args.threshold)? {
        None => {
            println!("ok");
            Ok(ExitCode::SUCCESS)
        }
        Some(violation) => {
            println!("{violation}");
            Ok(ExitCode::from(1))
        }
    }
}

fn gen(args: GenArgs) -> Result<ExitCode, Failure> {
    let params = GadgetParams {
        n: args.n,
        m: args.m,
        numbers: args.numbers,
        sets: args.sets,
        v: args.v,
        u: args.u,
        k: args.k,
        c: args.c,
        seed: args.seed,
        base: args.base,
        class: args.class,
        identical: args.identical,
    };
    let (instance, warnings) = generate(args.gadget, &params)?;
    for warning in warnings {
        eprintln!("warning: {warning}");
    }
    let text = InstanceDocument::from_instance(&instance).to_json();
    match &args.out {
        Some(path) => write_text(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: BenchArgs) -> Result<ExitCode, Failure> {
    if !(args.timeout.is_finite() && args.timeout > 0.0) {
        return Err(Failure::Usage(format!(
            "timeout must be positive, got {}",
            args.timeout
        )));
    }
    let config = BenchConfig {
        family: args.family,
        sizes: parse_sizes(&args.sizes, args.family)?,
        measure: args.measure,
        threshold: args.threshold,
        algorithm: args.algorithm,
        timeout: Duration::from_secs_f64(args.timeout),
        trials: args.trials,
        seed: args.seed,
    };
    let rows = run_bench(&config)?;
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            write_csv(&rows, file)?;
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Verify(args) => verify(args),
        Command::Gen(args) => gen(args),
        Command::Bench(args) => bench(args),
    };
    let _ = io::stdout().flush();
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("efpa: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
