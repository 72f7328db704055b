//! PSO/DE hybrid with pairwise offspring selection.

use crate::de::{DeEngine, PopulationPolicy};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::optimizer::{evaluated_population, Optimizer};
use crate::population::{EvolutionState, Individual, Population};
use crate::pso::{PsoEngine, SwarmState};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// One hybrid generation.
///
/// The population is copied twice; one copy takes a PSO step using the shared
/// velocities, the other a DE step. Velocities are then reset to the DE
/// displacement for every slot, and each slot keeps the PSO offspring only if
/// it is strictly better than the DE offspring. Counts as one generation and
/// `2 * pop.len()` evaluations.
pub fn psode_generation<T: Scalar>(
    pso: &PsoEngine,
    de: &mut DeEngine<T>,
    pop: &mut Population<T>,
    swarm: &mut SwarmState<T>,
    state: &mut EvolutionState,
    problem: &mut dyn Objective<T>,
    rng: &mut dyn RandomSource,
) -> Result<()> {
    if de.config().population != PopulationPolicy::Fixed {
        return Err(Error::config(
            "population_strategy",
            "the hybrid needs a fixed DE population",
        ));
    }
    let generation = state.generation;
    let mut pop1 = pop.clone();
    let mut pop3 = pop.clone();
    pso.generation(&mut pop1, swarm, state, problem, rng)?;
    state.generation = generation;
    de.generation(&mut pop3, state, problem, rng)?;
    for ((v, new), old) in swarm.velocities.iter_mut().zip(pop3.iter()).zip(pop.iter()) {
        for ((vj, &n), &o) in v.iter_mut().zip(&new.genome).zip(&old.genome) {
            *vj = n - o;
        }
    }
    for (slot, (a, b)) in pop.members_mut().iter_mut().zip(pop1.into_members().into_iter().zip(pop3.into_members())) {
        *slot = if a.fitness < b.fitness { a } else { b };
    }
    swarm.prepare(pop);
    Ok(())
}

#[derive(Clone, Debug)]
pub struct PsodeOptimizer<T> {
    pso: PsoEngine,
    de: DeEngine<T>,
    pop_size: usize,
    pop: Option<Population<T>>,
    swarm: SwarmState<T>,
}

impl<T: Scalar> PsodeOptimizer<T> {
    pub fn new(pso: PsoEngine, de: DeEngine<T>, pop_size: usize) -> Result<Self> {
        if de.config().population != PopulationPolicy::Fixed {
            return Err(Error::config(
                "population_strategy",
                "the hybrid needs a fixed DE population",
            ));
        }
        Ok(Self {
            pso,
            de,
            pop_size,
            pop: None,
            swarm: SwarmState::new(),
        })
    }

    pub fn population(&self) -> Option<&Population<T>> {
        self.pop.as_ref()
    }

    pub fn swarm(&self) -> &SwarmState<T> {
        &self.swarm
    }
}

impl<T: Scalar> Optimizer<T> for PsodeOptimizer<T> {
    fn pop_size(&self) -> usize {
        self.pop_size
    }

    fn batch_size(&self) -> usize {
        2 * self.pop_size
    }

    fn initialize(
        &mut self,
        problem: &mut dyn Objective<T>,
        state: &mut EvolutionState,
        rng: &mut dyn RandomSource,
    ) -> Result<()> {
        self.de.reset(self.pop_size);
        let pop = evaluated_population(self.pop_size, problem, state, rng)?;
        self.swarm = SwarmState::new();
        self.swarm.prepare(&pop);
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
        psode_generation(&self.pso, &mut self.de, pop, &mut self.swarm, state, problem, rng)
    }

    fn best(&self) -> Option<&Individual<T>> {
        self.pop.as_ref().map(Population::best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::de::{AdapterState, Crossover, DeBuilder, Mutation, Repair};
    use crate::objective::FnObjective;
    use crate::optimizer::run_to_budget;
    use crate::pso::{PsoBuilder, Topology, VelocityUpdate};
    use crate::rng::derive_stream;
    use proptest::prelude::*;

    fn de_engine(policy: PopulationPolicy) -> DeEngine<f64> {
        DeBuilder::new()
            .mutation(Mutation::Rand1)
            .crossover(Crossover::Binomial)
            .constraint_handler(Repair::Clip)
            .parameter(AdapterState::fixed(0.5, 0.9).unwrap())
            .population_strategy(policy)
            .archive(0.0)
            .build()
            .unwrap()
    }

    fn pso_engine() -> PsoEngine {
        PsoBuilder::new()
            .topology(Topology::LbestRing)
            .update(VelocityUpdate::standard())
            .build()
            .unwrap()
    }

    fn rastrigin() -> FnObjective<f64, impl FnMut(&[f64]) -> f64> {
        FnObjective::new(5, -5.0, 5.0, |x: &[f64]| {
            x.iter()
                .map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos() + 10.0)
                .sum::<f64>()
        })
    }

    #[test]
    fn two_batches_per_generation() {
        let mut problem = rastrigin();
        let mut opt = PsodeOptimizer::new(pso_engine(), de_engine(PopulationPolicy::Fixed), 12).unwrap();
        assert_eq!(opt.batch_size(), 24);
        let rng = &mut derive_stream(1, 0);
        let mut state = EvolutionState::new(1000, 12, 5);
        opt.initialize(&mut problem, &mut state, rng).unwrap();
        assert_eq!(state.current_fes, 12);
        opt.step(&mut problem, &mut state, rng).unwrap();
        assert_eq!((state.current_fes, state.generation), (36, 1));
        opt.step(&mut problem, &mut state, rng).unwrap();
        assert_eq!((state.current_fes, state.generation), (60, 2));
    }

    #[test]
    fn shrinking_de_is_rejected() {
        let policy = PopulationPolicy::LinearReduction { n_init: 12, n_min: 4 };
        assert!(PsodeOptimizer::new(pso_engine(), de_engine(policy), 12).unwrap_err().is_config());
    }

    #[test]
    fn improves_on_rastrigin() {
        let mut problem = rastrigin();
        let mut opt = PsodeOptimizer::new(pso_engine(), de_engine(PopulationPolicy::Fixed), 20).unwrap();
        let out = run_to_budget(&mut opt, &mut problem, 6000, &mut derive_stream(3, 0)).unwrap();
        assert!(out.best.fitness < 5.0, "{}", out.best.fitness);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn selection_is_pairwise_min(seed in any::<u64>(), gens in 0usize..4) {
            let mut problem = rastrigin();
            let pso = pso_engine();
            let mut de = de_engine(PopulationPolicy::Fixed);
            let rng = &mut derive_stream(seed, 0);
            let mut state = EvolutionState::new(100_000, 10, 5);
            let mut pop = evaluated_population(10, &mut problem, &mut state, rng).unwrap();
            let mut swarm = SwarmState::new();
            swarm.prepare(&pop);
            de.reset(10);
            for _ in 0..gens {
                psode_generation(&pso, &mut de, &mut pop, &mut swarm, &mut state, &mut problem, rng).unwrap();
            }

            // replay the offspring on cloned state and stream
            let (mut pop1, mut pop3) = (pop.clone(), pop.clone());
            let (mut swarm1, mut de3, mut state1) = (swarm.clone(), de.clone(), state.clone());
            let mut replay = rng.clone();
            pso.generation(&mut pop1, &mut swarm1, &mut state1, &mut problem, &mut replay).unwrap();
            de3.generation(&mut pop3, &mut state1, &mut problem, &mut replay).unwrap();

            let old = pop.clone();
            psode_generation(&pso, &mut de, &mut pop, &mut swarm, &mut state, &mut problem, rng).unwrap();
            for i in 0..pop.len() {
                prop_assert_eq!(pop[i].fitness, pop1[i].fitness.min(pop3[i].fitness));
                let expected = if pop1[i].fitness < pop3[i].fitness { &pop1[i] } else { &pop3[i] };
                prop_assert_eq!(&pop[i].genome, &expected.genome);
                for j in 0..5 {
                    prop_assert_eq!(swarm.velocities[i][j], pop3[i].genome[j] - old[i].genome[j]);
                }
                prop_assert!(swarm.pbests[i].fitness <= pop[i].fitness);
            }
        }
    }
}
