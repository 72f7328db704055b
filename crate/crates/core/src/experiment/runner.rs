//! The benchmark runner.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiment::observer::{Observer, RunKey};
use crate::experiment::recorder::{BestSoFarTable, Recorder, SuiteProblem};
use crate::objective::Objective;
use crate::problems::Suite;
use crate::rng::{derive_stream, RngStream};
use crate::scalar::Scalar;

/// A complete optimizer run, repeatable from `rng` alone.
pub trait Algorithm<T: Scalar>: Sync {
    /// Largest number of evaluations the algorithm may perform past `max_fes`.
    fn batch_size(&self, dim: usize) -> usize;

    /// Optimizes `problem` for `max_fes` evaluations and returns the best value found.
    fn run(&self, problem: &mut dyn Objective<T>, max_fes: u64, rng: &mut RngStream) -> Result<T>;
}

/// Adapts a closure into an [`Algorithm`].
pub struct FnAlgorithm<F> {
    batch: usize,
    f: F,
}

impl<F> FnAlgorithm<F> {
    pub fn new(batch: usize, f: F) -> Self {
        Self { batch, f }
    }
}

impl<T, F> Algorithm<T> for FnAlgorithm<F>
where
    T: Scalar,
    F: Fn(&mut dyn Objective<T>, u64, &mut RngStream) -> Result<T> + Sync,
{
    fn batch_size(&self, _dim: usize) -> usize {
        self.batch
    }

    fn run(&self, problem: &mut dyn Objective<T>, max_fes: u64, rng: &mut RngStream) -> Result<T> {
        (self.f)(problem, max_fes, rng)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub runs: u32,
    pub max_fes: u64,
    pub record_interval: u64,
    pub master_seed: u64,
    pub parallel: bool,
    /// Worker count for parallel runs; `None` uses the hardware concurrency.
    pub threads: Option<usize>,
}

impl BenchConfig {
    pub fn new(runs: u32, max_fes: u64, record_interval: u64, master_seed: u64) -> Self {
        Self {
            runs,
            max_fes,
            record_interval,
            master_seed,
            parallel: true,
            threads: None,
        }
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn threads(mut self, n: usize) -> Self {
        self.parallel = true;
        self.threads = Some(n);
        self
    }
}

/// Everything a benchmark produced.
#[derive(Debug)]
pub struct BenchResult<T, R> {
    pub suite_name: String,
    pub dim: usize,
    pub table: BestSoFarTable<T>,
    /// One observer per task, in task order.
    pub observations: Vec<R>,
}

/// `((problem ordinal * instance_count) + instance ordinal) * runs + run`,
/// which is `suite position * runs + run` for a problem-major suite.
pub fn task_index(suite_position: usize, runs: u32, run_index: u32) -> u64 {
    suite_position as u64 * runs as u64 + run_index as u64
}

/// Runs `algorithm` on every instance of `suite` `config.runs` times.
///
/// Each task draws from its own stream derived from `(master_seed, task
/// index)`, so sequential and parallel runs produce identical tables.
pub fn evo_bench<T, A, O>(algorithm: &A, suite: &Suite<T>, observer: &O, config: &BenchConfig) -> Result<BenchResult<T, O::Run>>
where
    T: Scalar,
    A: Algorithm<T> + ?Sized,
    O: Observer<T>,
{
    if config.runs == 0 {
        return Err(Error::config("runs", "must be at least 1"));
    }
    if config.max_fes == 0 {
        return Err(Error::config("max_fes", "must be positive"));
    }
    let keys: Vec<RunKey> = suite
        .iter()
        .flat_map(|p| {
            (0..config.runs).map(move |run_index| RunKey {
                problem_id: p.problem_id,
                instance_id: p.instance_id,
                run_index,
            })
        })
        .collect();
    let mut table = BestSoFarTable::new(keys.clone(), config.max_fes, config.record_interval)?;
    let limit = config.max_fes + algorithm.batch_size(suite.dim) as u64;
    let instances = suite.instances();
    let runs = config.runs as usize;

    let task = |(idx, row): (usize, &mut [T])| -> Result<O::Run> {
        let key = keys[idx];
        let instance = &instances[idx / runs];
        let mut obs = observer.start_run(key);
        let mut rng = derive_stream(config.master_seed, task_index(idx / runs, config.runs, key.run_index));
        let mut handle = SuiteProblem::new(instance, Recorder::new(row, config.record_interval), limit, &mut obs);
        algorithm.run(&mut handle, config.max_fes, &mut rng)?;
        handle.finish();
        Ok(obs)
    };

    let outcomes: Vec<Result<O::Run>> = if config.parallel {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = config.threads {
            if n == 0 {
                return Err(Error::config("threads", "must be at least 1"));
            }
            builder = builder.num_threads(n);
        }
        let pool = builder
            .build()
            .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
        let rows: Vec<(usize, &mut [T])> = table.rows_mut().enumerate().collect();
        pool.install(|| rows.into_par_iter().with_max_len(1).map(task).collect())
    } else {
        table.rows_mut().enumerate().map(task).collect()
    };
    let observations = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(BenchResult {
        suite_name: suite.name.clone(),
        dim: suite.dim,
        table,
        observations,
    })
}
