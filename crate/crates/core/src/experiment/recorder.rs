//! Best-so-far recording.

use crate::error::{Error, Result};
use crate::experiment::observer::{RunKey, RunObserver};
use crate::objective::Objective;
use crate::problems::{EvalScratch, ProblemInstance};
use crate::scalar::Scalar;

/// Preallocated `(task x checkpoint)` grid of best-so-far values.
///
/// Slot `k` of a run holds the best value seen after exactly
/// `(k + 1) * interval` evaluations. A partial tail (when `max_fes` is not a
/// multiple of `interval`) is not recorded.
#[derive(Clone, Debug, PartialEq)]
pub struct BestSoFarTable<T> {
    interval: u64,
    max_fes: u64,
    keys: Vec<RunKey>,
    grid: Vec<T>,
}

impl<T: Scalar> BestSoFarTable<T> {
    pub fn new(keys: Vec<RunKey>, max_fes: u64, interval: u64) -> Result<Self> {
        if interval == 0 {
            return Err(Error::config("record_interval", "must be positive"));
        }
        if max_fes < interval {
            return Err(Error::config("max_fes", "must be at least one record interval"));
        }
        let slots = (max_fes / interval) as usize;
        Ok(Self {
            interval,
            max_fes,
            grid: vec![T::infinity(); keys.len() * slots],
            keys,
        })
    }

    pub fn interval(&self) -> u64 {
        self.interval
    }

    pub fn max_fes(&self) -> u64 {
        self.max_fes
    }

    pub fn checkpoints(&self) -> usize {
        (self.max_fes / self.interval) as usize
    }

    pub fn runs(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[RunKey] {
        &self.keys
    }

    pub fn row(&self, task: usize) -> &[T] {
        let c = self.checkpoints();
        &self.grid[task * c..(task + 1) * c]
    }

    /// Disjoint mutable rows, one per task.
    pub(crate) fn rows_mut(&mut self) -> std::slice::ChunksExactMut<'_, T> {
        let c = self.checkpoints();
        self.grid.chunks_exact_mut(c)
    }

    /// Evaluation count of checkpoint slot `k`.
    pub fn fes_at(&self, k: usize) -> u64 {
        (k as u64 + 1) * self.interval
    }
}

/// Running-minimum writer for one run's row.
#[derive(Debug)]
pub struct Recorder<'a, T> {
    row: &'a mut [T],
    interval: u64,
    fes: u64,
    best: T,
}

impl<'a, T: Scalar> Recorder<'a, T> {
    pub fn new(row: &'a mut [T], interval: u64) -> Self {
        Self {
            row,
            interval,
            fes: 0,
            best: T::infinity(),
        }
    }

    #[inline]
    pub fn on_evaluate(&mut self, fitness: T) {
        self.fes += 1;
        if fitness < self.best {
            self.best = fitness;
        }
        if self.fes % self.interval == 0 {
            if let Some(slot) = self.row.get_mut((self.fes / self.interval - 1) as usize) {
                *slot = self.best;
            }
        }
    }

    pub fn fes(&self) -> u64 {
        self.fes
    }

    pub fn best(&self) -> T {
        self.best
    }

    /// Fills the slots the run never reached with the final running minimum.
    pub fn finish(self) {
        let written = (self.fes / self.interval) as usize;
        for slot in self.row.iter_mut().skip(written) {
            *slot = self.best;
        }
    }
}

/// Evaluation handle given to an algorithm by the benchmark runner: counts
/// evaluations, enforces the budget, records best-so-far values and forwards
/// events to the run's observer.
pub struct SuiteProblem<'a, T, R> {
    instance: &'a ProblemInstance<T>,
    scratch: EvalScratch<T>,
    recorder: Recorder<'a, T>,
    limit: u64,
    observer: &'a mut R,
}

impl<'a, T: Scalar, R: RunObserver<T>> SuiteProblem<'a, T, R> {
    pub fn new(instance: &'a ProblemInstance<T>, recorder: Recorder<'a, T>, limit: u64, observer: &'a mut R) -> Self {
        Self {
            instance,
            scratch: EvalScratch::new(instance.dim()),
            recorder,
            limit,
            observer,
        }
    }

    pub fn fes(&self) -> u64 {
        self.recorder.fes()
    }

    pub fn finish(self) {
        self.recorder.finish();
    }
}

impl<T: Scalar, R: RunObserver<T>> Objective<T> for SuiteProblem<'_, T, R> {
    fn dim(&self) -> usize {
        self.instance.dim()
    }

    fn bounds(&self) -> (T, T) {
        (self.instance.lb, self.instance.ub)
    }

    fn evaluate(&mut self, x: &[T]) -> Result<T> {
        let fes = self.recorder.fes();
        if fes >= self.limit {
            return Err(Error::BudgetExceeded {
                fes: fes + 1,
                limit: self.limit,
            });
        }
        let value = self.instance.evaluate_with(x, &mut self.scratch)?;
        self.recorder.on_evaluate(value);
        self.observer.on_evaluate(fes + 1, value);
        Ok(value)
    }

    fn report_generation(&mut self, generation: u64, params: &[(&'static str, f64)]) {
        self.observer.on_generation(generation, params);
    }
}
