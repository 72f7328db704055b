//! Competitive Swarm Optimizer for large-scale problems.

use crate::error::{Error, Result};
use crate::objective::{evaluate_individual, Objective};
use crate::optimizer::{evaluated_population, Optimizer};
use crate::population::{EvolutionState, Individual, Population};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

pub const DEFAULT_PHI: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsoParams {
    /// Attraction towards the swarm mean.
    pub phi: f64,
}

impl Default for CsoParams {
    fn default() -> Self {
        Self { phi: DEFAULT_PHI }
    }
}

/// Loser update of one competition, in place:
/// `v = r1 v + r2 (x_w - x_l) + phi r3 (mean - x_l)`, `x_l += v`, clamped to the box.
#[allow(clippy::too_many_arguments)]
pub fn cso_learn<T: Scalar, R: RandomSource + ?Sized>(
    loser: &mut [T],
    velocity: &mut [T],
    winner: &[T],
    mean: &[T],
    phi: f64,
    lb: T,
    ub: T,
    rng: &mut R,
) {
    let phi = T::lit(phi);
    for j in 0..loser.len() {
        let r1 = T::lit(rng.uniform());
        let r2 = T::lit(rng.uniform());
        let r3 = T::lit(rng.uniform());
        velocity[j] = r1 * velocity[j] + r2 * (winner[j] - loser[j]) + phi * r3 * (mean[j] - loser[j]);
        loser[j] = (loser[j] + velocity[j]).max(lb).min(ub);
    }
}

/// One CSO generation: random disjoint pairs compete, winners are copied
/// through untouched and only the losers move and are re-evaluated.
pub fn cso_generation<T: Scalar>(
    pop: &mut Population<T>,
    velocities: &mut [Vec<T>],
    params: &CsoParams,
    state: &mut EvolutionState,
    problem: &mut dyn Objective<T>,
    rng: &mut dyn RandomSource,
) -> Result<()> {
    let n = pop.len();
    if n % 2 != 0 {
        return Err(Error::config("pop_size", format!("CSO needs an even population, got {n}")));
    }
    if velocities.len() != n {
        return Err(Error::Internal(format!("{} velocities for {n} particles", velocities.len())));
    }
    let dim = pop.dim();
    let (lb, ub) = problem.bounds();
    let inv_n = T::one() / T::from_usize(n).unwrap();
    let mut mean = vec![T::zero(); dim];
    for m in pop.iter() {
        for (acc, &g) in mean.iter_mut().zip(&m.genome) {
            *acc += g;
        }
    }
    mean.iter_mut().for_each(|v| *v *= inv_n);

    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.index(i + 1);
        order.swap(i, j);
    }
    for pair in order.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        let (w, l) = if pop[b].fitness < pop[a].fitness { (b, a) } else { (a, b) };
        let winner = pop[w].genome.clone();
        let mut loser = std::mem::take(&mut pop[l].genome);
        cso_learn(&mut loser, &mut velocities[l], &winner, &mean, params.phi, lb, ub, rng);
        pop[l] = Individual::new(loser);
        evaluate_individual(&mut pop[l], problem, state)?;
    }
    state.generation += 1;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CsoOptimizer<T> {
    params: CsoParams,
    pop_size: usize,
    pop: Option<Population<T>>,
    velocities: Vec<Vec<T>>,
}

impl<T: Scalar> CsoOptimizer<T> {
    pub fn new(params: CsoParams, pop_size: usize) -> Result<Self> {
        if pop_size % 2 != 0 {
            return Err(Error::config("pop_size", format!("CSO needs an even population, got {pop_size}")));
        }
        if !params.phi.is_finite() || params.phi < 0.0 {
            return Err(Error::config("phi", format!("must be finite and non-negative, got {}", params.phi)));
        }
        Ok(Self {
            params,
            pop_size,
            pop: None,
            velocities: Vec::new(),
        })
    }

    pub fn population(&self) -> Option<&Population<T>> {
        self.pop.as_ref()
    }
}

impl<T: Scalar> Optimizer<T> for CsoOptimizer<T> {
    fn pop_size(&self) -> usize {
        self.pop_size
    }

    fn initialize(
        &mut self,
        problem: &mut dyn Objective<T>,
        state: &mut EvolutionState,
        rng: &mut dyn RandomSource,
    ) -> Result<()> {
        let pop = evaluated_population(self.pop_size, problem, state, rng)?;
        self.velocities = vec![vec![T::zero(); pop.dim()]; pop.len()];
        self.pop = Some(pop);
        Ok(())
    }

    fn step(
        &mut self,
        problem: &mut dyn Objective<T>,
        state: &mut EvolutionState,
        rng: &mut dyn RandomSource,
    ) -> Result<()> {
        let pop = self
            .pop
            .as_mut()
            .ok_or_else(|| Error::Internal("step before initialize".into()))?;
        cso_generation(pop, &mut self.velocities, &self.params, state, problem, rng)
    }

    fn best(&self) -> Option<&Individual<T>> {
        self.pop.as_ref().map(Population::best)
    }
}
