//! Uniform driver interface over the DE, PSO, CSO and hybrid engines.

use crate::error::Result;
use crate::objective::{evaluate_individual, Objective};
use crate::population::{EvolutionState, Individual, Population};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// A population-based optimizer advanced one generation at a time.
pub trait Optimizer<T: Scalar> {
    /// Initial population size (the largest batch a single step evaluates
    /// for every engine in this crate except PSODE, which reports twice this).
    fn pop_size(&self) -> usize;

    /// Upper bound on the evaluations performed by one `step`.
    fn batch_size(&self) -> usize {
        self.pop_size()
    }

    /// Builds and evaluates the initial population, resetting any adaptive state.
    fn initialize(
        &mut self,
        problem: &mut dyn Objective<T>,
        state: &mut EvolutionState,
        rng: &mut dyn RandomSource,
    ) -> Result<()>;

    /// Runs one generation.
    fn step(
        &mut self,
        problem: &mut dyn Objective<T>,
        state: &mut EvolutionState,
        rng: &mut dyn RandomSource,
    ) -> Result<()>;

    /// Best solution currently held (population or memory); `None` before initialization.
    fn best(&self) -> Option<&Individual<T>>;
}

impl<T: Scalar, O: Optimizer<T> + ?Sized> Optimizer<T> for Box<O> {
    fn pop_size(&self) -> usize {
        (**self).pop_size()
    }

    fn batch_size(&self) -> usize {
        (**self).batch_size()
    }

    fn initialize(
        &mut self,
        problem: &mut dyn Objective<T>,
        state: &mut EvolutionState,
        rng: &mut dyn RandomSource,
    ) -> Result<()> {
        (**self).initialize(problem, state, rng)
    }

    fn step(
        &mut self,
        problem: &mut dyn Objective<T>,
        state: &mut EvolutionState,
        rng: &mut dyn RandomSource,
    ) -> Result<()> {
        (**self).step(problem, state, rng)
    }

    fn best(&self) -> Option<&Individual<T>> {
        (**self).best()
    }
}

/// Result of [`run_to_budget`].
#[derive(Clone, Debug)]
pub struct RunOutcome<T> {
    pub best: Individual<T>,
    pub state: EvolutionState,
}

/// Initializes `opt` and steps it until `max_fes` evaluations have been spent.
///
/// The last generation may overshoot the budget by at most one batch.
pub fn run_to_budget<T: Scalar, O: Optimizer<T> + ?Sized>(
    opt: &mut O,
    problem: &mut dyn Objective<T>,
    max_fes: u64,
    rng: &mut dyn RandomSource,
) -> Result<RunOutcome<T>> {
    let mut state = EvolutionState::new(max_fes, opt.pop_size(), problem.dim());
    opt.initialize(problem, &mut state, rng)?;
    let mut best = opt.best().cloned().expect("initialized optimizer has a best");
    while !state.exhausted() {
        opt.step(problem, &mut state, rng)?;
        if let Some(b) = opt.best() {
            if b.fitness < best.fitness {
                best = b.clone();
            }
        }
    }
    Ok(RunOutcome { best, state })
}

/// Uniform population in the problem's box, fully evaluated.
pub(crate) fn evaluated_population<T: Scalar>(
    pop_size: usize,
    problem: &mut dyn Objective<T>,
    state: &mut EvolutionState,
    rng: &mut dyn RandomSource,
) -> Result<Population<T>> {
    let (lb, ub) = problem.bounds();
    let mut pop = Population::init(pop_size, problem.dim(), lb, ub, rng)?;
    for ind in pop.members_mut() {
        evaluate_individual(ind, problem, state)?;
    }
    Ok(pop)
}
