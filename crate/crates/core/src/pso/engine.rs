use crate::error::{Error, Result};
use crate::objective::{evaluate_individual, Objective};
use crate::optimizer::{evaluated_population, Optimizer};
use crate::population::{EvolutionState, Individual, Population};
use crate::pso::topology::{neighbor_best, Topology};
use crate::pso::update::{velocity_update, VelocityUpdate};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// Velocities and personal bests of a swarm.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SwarmState<T> {
    pub velocities: Vec<Vec<T>>,
    pub pbests: Vec<Individual<T>>,
}

impl<T: Scalar> SwarmState<T> {
    pub fn new() -> Self {
        Self {
            velocities: Vec::new(),
            pbests: Vec::new(),
        }
    }

    /// Synchronizes the swarm with `pop`.
    ///
    /// On first use (or after a size change) the personal bests become the
    /// population and velocities start at zero; afterwards a member that beats
    /// its personal best replaces it.
    pub fn prepare(&mut self, pop: &Population<T>) {
        if self.pbests.len() != pop.len() {
            self.pbests = pop.members().to_vec();
        } else {
            for (pb, m) in self.pbests.iter_mut().zip(pop.iter()) {
                if m.fitness < pb.fitness {
                    *pb = m.clone();
                }
            }
        }
        if self.velocities.len() != pop.len()
            || self.velocities.iter().any(|v| v.len() != pop.dim())
        {
            self.velocities = vec![vec![T::zero(); pop.dim()]; pop.len()];
        }
    }
}

/// Assembled PSO variant: an information topology and a velocity rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsoEngine {
    pub topology: Topology,
    pub update: VelocityUpdate,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PsoBuilder {
    topology: Option<Topology>,
    update: Option<VelocityUpdate>,
}

impl PsoBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn topology(mut self, t: Topology) -> Self {
        self.topology = Some(t);
        self
    }

    pub fn update(mut self, u: VelocityUpdate) -> Self {
        self.update = Some(u);
        self
    }

    pub fn build(self) -> Result<PsoEngine> {
        let engine = PsoEngine {
            topology: self.topology.ok_or(Error::MissingSlot("topology"))?,
            update: self.update.ok_or(Error::MissingSlot("update"))?,
        };
        let finite = match engine.update {
            VelocityUpdate::Standard { w, c1, c2 } => [w, c1, c2].iter().all(|v| v.is_finite()),
            VelocityUpdate::Spherical { w, c } => w.is_finite() && c.is_finite(),
        };
        if !finite {
            return Err(Error::config("update", "coefficients must be finite"));
        }
        Ok(engine)
    }
}

impl PsoEngine {
    /// One synchronous generation: all moves use the personal bests from the
    /// start of the generation, which are refreshed after every particle has
    /// been evaluated.
    pub fn generation<T: Scalar>(
        &self,
        pop: &mut Population<T>,
        swarm: &mut SwarmState<T>,
        state: &mut EvolutionState,
        problem: &mut dyn Objective<T>,
        rng: &mut dyn RandomSource,
    ) -> Result<()> {
        let n = pop.len();
        if swarm.pbests.len() != n {
            swarm.prepare(pop);
        }
        let (lb, ub) = problem.bounds();
        let half = T::lit(-0.5);
        for i in 0..n {
            let l = neighbor_best(self.topology, &swarm.pbests, i);
            let v = &mut swarm.velocities[i];
            let mut x = velocity_update(
                &self.update,
                &pop[i].genome,
                v,
                &swarm.pbests[i].genome,
                &swarm.pbests[l].genome,
                l == i,
                rng,
            );
            for (xj, vj) in x.iter_mut().zip(v.iter_mut()) {
                if *xj < lb {
                    *xj = lb;
                    *vj *= half;
                } else if *xj > ub {
                    *xj = ub;
                    *vj *= half;
                }
            }
            pop[i] = Individual::new(x);
            evaluate_individual(&mut pop[i], problem, state)?;
        }
        for (pb, m) in swarm.pbests.iter_mut().zip(pop.iter()) {
            if m.fitness < pb.fitness {
                *pb = m.clone();
            }
        }
        state.generation += 1;
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct PsoOptimizer<T> {
    engine: PsoEngine,
    pop_size: usize,
    pop: Option<Population<T>>,
    swarm: SwarmState<T>,
}

impl<T: Scalar> PsoOptimizer<T> {
    pub fn new(engine: PsoEngine, pop_size: usize) -> Self {
        Self {
            engine,
            pop_size,
            pop: None,
            swarm: SwarmState::new(),
        }
    }

    pub fn population(&self) -> Option<&Population<T>> {
        self.pop.as_ref()
    }

    pub fn swarm(&self) -> &SwarmState<T> {
        &self.swarm
    }
}

impl<T: Scalar> Optimizer<T> for PsoOptimizer<T> {
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
        self.engine.generation(pop, &mut self.swarm, state, problem, rng)
    }

    fn best(&self) -> Option<&Individual<T>> {
        let pbests = &self.swarm.pbests;
        (!pbests.is_empty()).then(|| &pbests[neighbor_best(Topology::Gbest, pbests, 0)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::FnObjective;
    use crate::rng::derive_stream;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn builder_requires_every_slot() {
        let err = PsoBuilder::new().topology(Topology::LbestRing).build().unwrap_err();
        assert!(matches!(err, Error::MissingSlot("update")));
        assert!(err.to_string().contains("update"));
        let err = PsoBuilder::new().update(VelocityUpdate::spherical()).build().unwrap_err();
        assert!(matches!(err, Error::MissingSlot("topology")));
        let spso = PsoBuilder::new()
            .topology(Topology::LbestRing)
            .update(VelocityUpdate::spherical())
            .build()
            .unwrap();
        assert_eq!(spso.topology, Topology::LbestRing);
        assert!(PsoBuilder::new()
            .topology(Topology::Gbest)
            .update(VelocityUpdate::standard())
            .build()
            .is_ok());
    }

    #[test]
    fn thirty_evaluations_per_generation() {
        let engine = PsoBuilder::new()
            .topology(Topology::LbestRing)
            .update(VelocityUpdate::spherical())
            .build()
            .unwrap();
        let mut opt = PsoOptimizer::<f64>::new(engine, 30);
        let mut problem = FnObjective::new(10, -100.0, 100.0, sphere);
        let rng = &mut derive_stream(0, 0);
        let mut state = EvolutionState::new(30_000, 30, 10);
        opt.initialize(&mut problem, &mut state, rng).unwrap();
        for g in 1..=5 {
            opt.step(&mut problem, &mut state, rng).unwrap();
            assert_eq!(state.current_fes, 30 + 30 * g);
        }
    }

    #[test]
    fn personal_bests_monotone_and_positions_in_bounds() {
        for engine in [
            PsoBuilder::new().topology(Topology::Gbest).update(VelocityUpdate::standard()),
            PsoBuilder::new().topology(Topology::LbestRing).update(VelocityUpdate::spherical()),
        ] {
            let engine = engine.build().unwrap();
            let mut opt = PsoOptimizer::<f64>::new(engine, 12);
            let mut problem = FnObjective::new(4, -5.0, 5.0, |x: &[f64]| {
                x.iter().map(|v| v * v - 10.0 * (std::f64::consts::TAU * v).cos() + 10.0).sum()
            });
            let rng = &mut derive_stream(6, 1);
            let mut state = EvolutionState::new(100_000, 12, 4);
            opt.initialize(&mut problem, &mut state, rng).unwrap();
            let mut prev: Vec<f64> = opt.swarm().pbests.iter().map(|p| p.fitness).collect();
            for _ in 0..50 {
                opt.step(&mut problem, &mut state, rng).unwrap();
                let pop = opt.population().unwrap();
                assert!(pop.iter().flat_map(|m| &m.genome).all(|g| (-5.0..=5.0).contains(g)));
                let cur: Vec<f64> = opt.swarm().pbests.iter().map(|p| p.fitness).collect();
                for (c, p) in cur.iter().zip(&prev) {
                    assert!(c <= p);
                }
                for (pb, m) in opt.swarm().pbests.iter().zip(pop.iter()) {
                    assert!(pb.fitness <= m.fitness);
                }
                prev = cur;
            }
        }
    }

    #[test]
    fn same_seed_same_trajectory() {
        let run = || {
            let engine = PsoBuilder::new()
                .topology(Topology::LbestRing)
                .update(VelocityUpdate::spherical())
                .build()
                .unwrap();
            let mut opt = PsoOptimizer::<f32>::new(engine, 10);
            let mut problem = FnObjective::new(3, -1.0f32, 1.0, |x: &[f32]| x.iter().map(|v| v * v).sum());
            let rng = &mut derive_stream(77, 3);
            let mut state = EvolutionState::new(1000, 10, 3);
            opt.initialize(&mut problem, &mut state, rng).unwrap();
            for _ in 0..20 {
                opt.step(&mut problem, &mut state, rng).unwrap();
            }
            opt.population().unwrap().clone()
        };
        assert_eq!(run(), run());
    }
}
