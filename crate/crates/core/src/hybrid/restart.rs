//! Restart wrapper driven by a stagnation criterion.

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::optimizer::Optimizer;
use crate::population::{EvolutionState, Individual};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

pub const DEFAULT_EPSILON: f64 = 1e-8;
pub const DEFAULT_STAGNATION_PER_DIM: u64 = 100;

/// Fires after `stagnation_evals` evaluations without an improvement larger
/// than `epsilon` in the optimizer's best value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RestartCriterion {
    pub stagnation_evals: u64,
    pub epsilon: f64,
}

impl RestartCriterion {
    pub fn new(stagnation_evals: u64, epsilon: f64) -> Result<Self> {
        if stagnation_evals == 0 {
            return Err(Error::config("stagnation_evals", "must be at least 1"));
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::config("epsilon", "must be finite and non-negative"));
        }
        Ok(Self {
            stagnation_evals,
            epsilon,
        })
    }

    /// `100 * dim` evaluations, epsilon `1e-8`.
    pub fn default_for(dim: usize) -> Self {
        Self {
            stagnation_evals: DEFAULT_STAGNATION_PER_DIM * dim.max(1) as u64,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

fn keep_best<T: Scalar, O: Optimizer<T>>(opt: &O, best: &mut Option<Individual<T>>) {
    if let Some(b) = opt.best() {
        if best.as_ref().is_none_or(|cur| b.fitness < cur.fitness) {
            *best = Some(b.clone());
        }
    }
}

#[derive(Clone, Debug)]
pub struct RestartOutcome<T> {
    /// Best individual over all restarts.
    pub best: Individual<T>,
    pub instantiations: usize,
    /// Evaluations spent in total.
    pub fes: u64,
}

/// Runs optimizers from `factory` until `total_budget` evaluations are spent,
/// starting a fresh one whenever `criterion` fires. Each instance sees only
/// the budget that is left. No new instance is started if the remainder
/// cannot pay for its initial population.
pub fn restart_run<T, O, F>(
    mut factory: F,
    criterion: RestartCriterion,
    problem: &mut dyn Objective<T>,
    total_budget: u64,
    rng: &mut dyn RandomSource,
) -> Result<RestartOutcome<T>>
where
    T: Scalar,
    O: Optimizer<T>,
    F: FnMut() -> Result<O>,
{
    let mut best: Option<Individual<T>> = None;
    let mut used = 0u64;
    let mut instantiations = 0;
    loop {
        let mut opt = factory()?;
        let remaining = total_budget.saturating_sub(used);
        if remaining < opt.pop_size() as u64 {
            if best.is_none() {
                return Err(Error::config(
                    "max_fes",
                    "budget does not cover one initial population",
                ));
            }
            break;
        }
        instantiations += 1;
        let mut state = EvolutionState::new(remaining, opt.pop_size(), problem.dim());
        opt.initialize(problem, &mut state, rng)?;
        let mut reference = opt.best().map_or(f64::INFINITY, |b| b.fitness.to_f64_lossless());
        let mut last_improvement = state.current_fes;
        keep_best(&opt, &mut best);
        let mut stagnated = false;
        while !state.exhausted() {
            opt.step(problem, &mut state, rng)?;
            keep_best(&opt, &mut best);
            let current = opt.best().map_or(f64::INFINITY, |b| b.fitness.to_f64_lossless());
            if reference - current > criterion.epsilon {
                reference = current;
                last_improvement = state.current_fes;
            }
            if state.current_fes - last_improvement >= criterion.stagnation_evals {
                stagnated = true;
                break;
            }
        }
        used += state.current_fes;
        if !stagnated || state.exhausted() {
            break;
        }
    }
    Ok(RestartOutcome {
        best: best.expect("at least one instance ran"),
        instantiations,
        fes: used,
    })
}
