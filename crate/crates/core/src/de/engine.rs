//! Builder-assembled DE engine and the generation loop.

use crate::de::adapter::{AdapterState, TrialParams};
use crate::de::archive::Archive;
use crate::de::operators::{crossover, repair_bounds, Crossover, Mutation, MutationPlan, Repair};
use crate::error::{Error, Result};
use crate::objective::{evaluate_individual, Objective};
use crate::optimizer::{evaluated_population, Optimizer};
use crate::population::{EvolutionState, Individual, Population, MIN_POP_SIZE};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PopulationPolicy {
    Fixed,
    /// L-SHADE schedule from `n_init` down to `n_min` at the end of the budget.
    LinearReduction { n_init: usize, n_min: usize },
}

impl PopulationPolicy {
    /// Target size once `fes` of `max_fes` evaluations have been spent.
    pub fn target_size(&self, current: usize, fes: u64, max_fes: u64) -> usize {
        match *self {
            PopulationPolicy::Fixed => current,
            PopulationPolicy::LinearReduction { n_init, n_min } => {
                linear_target(n_init, n_min, fes, max_fes)
            }
        }
    }
}

/// `round(n_init + (n_min - n_init) * fes / max_fes)`, never below `n_min`.
pub fn linear_target(n_init: usize, n_min: usize, fes: u64, max_fes: u64) -> usize {
    let progress = if max_fes == 0 {
        1.0
    } else {
        (fes as f64 / max_fes as f64).min(1.0)
    };
    let n = (n_init as f64 + (n_min as f64 - n_init as f64) * progress).round() as usize;
    n.max(n_min)
}

/// One strictly improving trial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Success {
    pub f: f64,
    pub cr: f64,
    pub delta_f: f64,
}

/// One-to-one greedy selection. The trial wins ties; every replaced parent is
/// archived; only strict improvements are reported as successes.
pub fn select_and_archive<T: Scalar, R: RandomSource + ?Sized>(
    pop: &mut Population<T>,
    trials: Vec<Individual<T>>,
    params: &[TrialParams],
    archive: &mut Archive<T>,
    rng: &mut R,
) -> Result<Vec<Success>> {
    if trials.len() != pop.len() || params.len() != pop.len() {
        return Err(Error::Internal(format!(
            "selection over {} parents, {} trials, {} parameter sets",
            pop.len(),
            trials.len(),
            params.len()
        )));
    }
    let mut successes = Vec::new();
    for ((slot, trial), p) in pop.members_mut().iter_mut().zip(trials).zip(params) {
        if trial.fitness <= slot.fitness {
            let delta = (slot.fitness - trial.fitness).to_f64_lossless();
            if delta > 0.0 {
                successes.push(Success {
                    f: p.f,
                    cr: p.cr,
                    delta_f: delta,
                });
            }
            let parent = std::mem::replace(slot, trial);
            archive.push(parent.genome, rng);
        }
    }
    Ok(successes)
}

/// Shrinks `pop` to the policy's target size by dropping the worst members;
/// among equal fitness the higher index goes first.
pub fn reduce_population<T: Scalar>(
    pop: &mut Population<T>,
    policy: &PopulationPolicy,
    state: &EvolutionState,
) {
    let target = policy.target_size(pop.len(), state.current_fes, state.max_fes);
    if pop.len() <= target {
        return;
    }
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.sort_by(|&a, &b| {
        pop[b]
            .fitness
            .partial_cmp(&pop[a].fitness)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.cmp(&a))
    });
    let mut keep = vec![true; pop.len()];
    for &worst in &order[..pop.len() - target] {
        keep[worst] = false;
    }
    pop.retain_indices(&keep);
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeConfig {
    pub mutation: Mutation,
    pub crossover: Crossover,
    pub repair: Repair,
    pub parameter: AdapterState,
    pub population: PopulationPolicy,
    /// Archive size relative to the population; 0 disables the archive.
    pub archive_rate: f64,
}

/// Assembles a [`DeEngine`]; every slot must be set explicitly.
#[derive(Clone, Debug, Default)]
pub struct DeBuilder {
    mutation: Option<Mutation>,
    crossover: Option<Crossover>,
    repair: Option<Repair>,
    parameter: Option<AdapterState>,
    population: Option<PopulationPolicy>,
    archive_rate: Option<f64>,
}

impl DeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn mutation(mut self, m: Mutation) -> Self {
        self.mutation = Some(m);
        self
    }

    pub fn crossover(mut self, c: Crossover) -> Self {
        self.crossover = Some(c);
        self
    }

    pub fn constraint_handler(mut self, r: Repair) -> Self {
        self.repair = Some(r);
        self
    }

    pub fn parameter(mut self, p: AdapterState) -> Self {
        self.parameter = Some(p);
        self
    }

    pub fn population_strategy(mut self, p: PopulationPolicy) -> Self {
        self.population = Some(p);
        self
    }

    pub fn archive(mut self, rate: f64) -> Self {
        self.archive_rate = Some(rate);
        self
    }

    pub fn build_config(self) -> Result<DeConfig> {
        let config = DeConfig {
            mutation: self.mutation.ok_or(Error::MissingSlot("mutation"))?,
            crossover: self.crossover.ok_or(Error::MissingSlot("crossover"))?,
            repair: self.repair.ok_or(Error::MissingSlot("constraint_handler"))?,
            parameter: self.parameter.ok_or(Error::MissingSlot("parameter"))?,
            population: self.population.ok_or(Error::MissingSlot("population_strategy"))?,
            archive_rate: self.archive_rate.ok_or(Error::MissingSlot("archive"))?,
        };
        validate(&config)?;
        Ok(config)
    }

    pub fn build<T: Scalar>(self) -> Result<DeEngine<T>> {
        Ok(DeEngine::new(self.build_config()?))
    }
}

fn validate(c: &DeConfig) -> Result<()> {
    if !(c.archive_rate >= 0.0 && c.archive_rate.is_finite()) {
        return Err(Error::config("archive", format!("rate must be a finite non-negative number, got {}", c.archive_rate)));
    }
    if let Mutation::CurrentToPBest1 { p, use_archive } = c.mutation {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::config("mutation", format!("p-best fraction must lie in (0, 1], got {p}")));
        }
        if use_archive && c.archive_rate == 0.0 {
            return Err(Error::config("archive", "mutation draws from the archive but the archive rate is 0"));
        }
    }
    if let PopulationPolicy::LinearReduction { n_init, n_min } = c.population {
        if n_min < MIN_POP_SIZE || n_min > n_init {
            return Err(Error::config(
                "population_strategy",
                format!("need {MIN_POP_SIZE} <= n_min <= n_init, got n_min={n_min}, n_init={n_init}"),
            ));
        }
    }
    Ok(())
}

/// Modular DE engine: configuration plus the adaptive state of one run.
#[derive(Clone, Debug)]
pub struct DeEngine<T> {
    config: DeConfig,
    adapter: AdapterState,
    archive: Archive<T>,
}

impl<T: Scalar> DeEngine<T> {
    pub fn new(config: DeConfig) -> Self {
        let adapter = config.parameter.clone();
        let archive = Archive::new(config.archive_rate, 0);
        Self {
            config,
            adapter,
            archive,
        }
    }

    pub fn config(&self) -> &DeConfig {
        &self.config
    }

    pub fn adapter(&self) -> &AdapterState {
        &self.adapter
    }

    pub fn archive(&self) -> &Archive<T> {
        &self.archive
    }

    /// Restores the initial adapter state and an empty archive sized for `pop_size`.
    pub fn reset(&mut self, pop_size: usize) {
        self.adapter = self.config.parameter.clone();
        self.archive = Archive::new(self.config.archive_rate, pop_size);
    }

    /// Runs one generation on an evaluated population.
    ///
    /// All trials are built from the parent population, evaluated in index
    /// order, and then selected one-to-one; the adapter is updated from the
    /// successes and the population schedule is applied last.
    pub fn generation(
        &mut self,
        pop: &mut Population<T>,
        state: &mut EvolutionState,
        problem: &mut dyn Objective<T>,
        rng: &mut dyn RandomSource,
    ) -> Result<()> {
        let n = pop.len();
        if self.archive.capacity() == 0 && self.config.archive_rate > 0.0 {
            self.archive = Archive::new(self.config.archive_rate, n);
        }
        let (lb, ub) = problem.bounds();
        let plan = MutationPlan::new(self.config.mutation, pop)?;
        let mut trials = Vec::with_capacity(n);
        let mut params = Vec::with_capacity(n);
        for i in 0..n {
            let p = self.adapter.sample(rng);
            let donor = plan.donor(pop, &self.archive, i, p.f, rng);
            let target = &pop[i].genome;
            let mut trial = crossover(self.config.crossover, target, &donor, p.cr, rng);
            repair_bounds(self.config.repair, &mut trial, target, lb, ub, rng);
            let mut ind = Individual::new(trial);
            evaluate_individual(&mut ind, problem, state)?;
            trials.push(ind);
            params.push(p);
        }

        let successes = select_and_archive(pop, trials, &params, &mut self.archive, rng)?;
        let s_f: Vec<f64> = successes.iter().map(|s| s.f).collect();
        let s_cr: Vec<f64> = successes.iter().map(|s| s.cr).collect();
        let delta: Vec<f64> = successes.iter().map(|s| s.delta_f).collect();
        self.adapter.update(&s_f, &s_cr, &delta);

        if self.config.population != PopulationPolicy::Fixed {
            reduce_population(pop, &self.config.population, state);
            self.archive.resize(pop.len(), rng);
        }
        state.generation += 1;
        let (mu_f, mu_cr) = self.adapter.means();
        problem.report_generation(state.generation, &[("mu_f", mu_f), ("mu_cr", mu_cr)]);
        Ok(())
    }
}

/// A [`DeEngine`] bundled with its population, driven through [`Optimizer`].
#[derive(Clone, Debug)]
pub struct DeOptimizer<T> {
    engine: DeEngine<T>,
    pop_size: usize,
    pop: Option<Population<T>>,
}

impl<T: Scalar> DeOptimizer<T> {
    pub fn new(engine: DeEngine<T>, pop_size: usize) -> Self {
        Self {
            engine,
            pop_size,
            pop: None,
        }
    }

    pub fn engine(&self) -> &DeEngine<T> {
        &self.engine
    }

    pub fn population(&self) -> Option<&Population<T>> {
        self.pop.as_ref()
    }
}

impl<T: Scalar> Optimizer<T> for DeOptimizer<T> {
    fn pop_size(&self) -> usize {
        self.pop_size
    }

    fn initialize(
        &mut self,
        problem: &mut dyn Objective<T>,
        state: &mut EvolutionState,
        rng: &mut dyn RandomSource,
    ) -> Result<()> {
        if let PopulationPolicy::LinearReduction { n_min, .. } = self.engine.config.population {
            state.pop_size_min = n_min;
        }
        self.engine.reset(self.pop_size);
        self.pop = Some(evaluated_population(self.pop_size, problem, state, rng)?);
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
        self.engine.generation(pop, state, problem, rng)
    }

    fn best(&self) -> Option<&Individual<T>> {
        self.pop.as_ref().map(Population::best)
    }
}
