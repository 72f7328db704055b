use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use evobench::experiment::{
    evo_bench, export_csv, export_parameter_csv, read_results, summarize, BenchConfig, NoopObserver, ParameterObserver,
};
use evobench::presets::{AlgorithmKind, Preset};
use evobench::problems::{build_suite, registry, SuiteConfig};
use evobench::{Error, Scalar};

#[derive(Parser, Debug)]
#[command(name = "evobench", version, about = "Run and summarize evolutionary optimizer benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an algorithm over a suite and write best-so-far checkpoints as CSV.
    Run(RunArgs),
    /// Print the problem registry.
    ListProblems,
    /// Summarize the final checkpoints of a results CSV.
    Analyze {
        csv: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Precision {
    F32,
    F64,
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// de, jade, shade, lshade, pso, spso2011, cso, psode or restart-lshade.
    #[arg(long)]
    algorithm: String,
    /// Strategy constant override, e.g. `--set p=0.2`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long, default_value = "cec")]
    suite: String,
    /// Problem ids: ranges and comma lists such as `1-12` or `1,4,9`.
    #[arg(long, default_value = "1-12", value_parser = parse_ids)]
    problems: ProblemIds,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    dim: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    instances: u32,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    runs: u32,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_fes: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pop_size: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the hardware concurrency.
    #[arg(long, env = "EVOBENCH_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Run every task on the calling thread.
    #[arg(long, conflicts_with = "threads")]
    sequential: bool,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    record_interval: u64,
    #[arg(long, default_value = "f64")]
    precision: Precision,
    #[arg(long)]
    out: PathBuf,
    /// Also write the per-generation mu_f/mu_cr trace to this CSV.
    #[arg(long)]
    param_out: Option<PathBuf>,
}

#[derive(Clone, Debug)]
struct ProblemIds(Vec<u32>);

fn parse_ids(s: &str) -> Result<ProblemIds, String> {
    let mut ids = Vec::new();
    for part in s.split(',').map(str::trim) {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("invalid problem id `{t}`"));
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                ids.extend(a..=b);
            }
            None => ids.push(num(part)?),
        }
    }
    Ok(ProblemIds(ids))
}

/// Names the command-line flag behind a configuration error.
fn flag_for(err: &Error) -> String {
    match err {
        Error::Config { field, .. } => match *field {
            "instances" | "problems" | "dim" | "runs" | "threads" | "max_fes" | "record_interval" | "pop_size"
            | "algorithm" | "set" => format!("--{}", field.replace('_', "-")),
            _ => "--set".to_string(),
        },
        Error::MissingSlot(_) | Error::DimensionMismatch { .. } => "--algorithm".to_string(),
        _ => String::new(),
    }
}

fn fail(err: Error) -> ExitCode {
    if let Error::Config { message, .. } = &err {
        eprintln!("error: {}: {message}", flag_for(&err));
        ExitCode::from(2)
    } else if err.is_config() {
        eprintln!("error: {}: {err}", flag_for(&err));
        ExitCode::from(2)
    } else {
        eprintln!("error: {err}");
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => match args.precision {
            Precision::F32 => run::<f32>(&args),
            Precision::F64 => run::<f64>(&args),
        },
        Command::ListProblems => {
            list_problems();
            Ok(())
        }
        Command::Analyze { csv } => analyze(&csv),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn run<T: Scalar>(args: &RunArgs) -> Result<(), Error> {
    let kind: AlgorithmKind = args.algorithm.parse()?;
    let mut preset = Preset::new(kind, args.pop_size as usize);
    for pair in &args.overrides {
        preset.set_pair(pair)?;
    }
    let dim = args.dim as usize;
    preset.validate(dim)?;
    let suite_config = SuiteConfig::new(&args.suite, args.problems.0.clone(), dim)
        .instance_count(args.instances)
        .master_seed(args.seed);
    let suite = build_suite::<T>(&suite_config)?;
    let mut config = BenchConfig::new(args.runs, args.max_fes, args.record_interval, args.seed);
    if args.sequential {
        config = config.sequential();
    } else if let Some(n) = args.threads {
        config = config.threads(n as usize);
    }

    if let Some(param_out) = &args.param_out {
        let per_run = (args.max_fes / args.pop_size) as usize + 1;
        let result = evo_bench(&preset, &suite, &ParameterObserver::with_capacity(per_run), &config)?;
        export_csv(&result, &args.out)?;
        export_parameter_csv(&result.observations, param_out)?;
    } else {
        let result = evo_bench(&preset, &suite, &NoopObserver, &config)?;
        export_csv(&result, &args.out)?;
    }
    Ok(())
}

fn list_problems() {
    println!("{:>3}  {:<22}{:<13}{:>6}  {:>6}", "id", "name", "kind", "lb", "ub");
    for e in registry() {
        let (lb, ub) = e.bounds();
        println!("{:>3}  {:<22}{:<13}{:>6}  {:>6}", e.id, e.name, e.class.name(), lb, ub);
    }
}

fn analyze(path: &Path) -> Result<(), Error> {
    let rows = read_results(path)?;
    println!(
        "{:>7} {:>8} {:>5} {:>13} {:>13} {:>13} {:>13}",
        "problem", "instance", "runs", "mean", "std", "min", "median"
    );
    for s in summarize(&rows) {
        println!(
            "{:>7} {:>8} {:>5} {:>13.6e} {:>13.6e} {:>13.6e} {:>13.6e}",
            s.problem, s.instance, s.runs, s.mean, s.std, s.min, s.median
        );
    }
    Ok(())
}
