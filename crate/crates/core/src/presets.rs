//! Named algorithm configurations usable with [`evo_bench`](crate::experiment::evo_bench).

use std::fmt;
use std::str::FromStr;

use crate::de::{AdapterState, Crossover, DeBuilder, DeEngine, DeOptimizer, Mutation, PopulationPolicy, Repair};
use crate::error::{Error, Result};
use crate::experiment::Algorithm;
use crate::hybrid::{restart_run, PsodeOptimizer, RestartCriterion, DEFAULT_EPSILON, DEFAULT_STAGNATION_PER_DIM};
use crate::objective::Objective;
use crate::optimizer::{run_to_budget, Optimizer};
use crate::pso::{CsoOptimizer, CsoParams, PsoBuilder, PsoEngine, PsoOptimizer, Topology, VelocityUpdate, DEFAULT_PHI};
use crate::pso::{SPSO_ACCELERATION, SPSO_INERTIA};
use crate::rng::RngStream;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgorithmKind {
    De,
    Jade,
    Shade,
    Lshade,
    Pso,
    Spso2011,
    Cso,
    Psode,
    RestartLshade,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 9] = [
        AlgorithmKind::De,
        AlgorithmKind::Jade,
        AlgorithmKind::Shade,
        AlgorithmKind::Lshade,
        AlgorithmKind::Pso,
        AlgorithmKind::Spso2011,
        AlgorithmKind::Cso,
        AlgorithmKind::Psode,
        AlgorithmKind::RestartLshade,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::De => "de",
            AlgorithmKind::Jade => "jade",
            AlgorithmKind::Shade => "shade",
            AlgorithmKind::Lshade => "lshade",
            AlgorithmKind::Pso => "pso",
            AlgorithmKind::Spso2011 => "spso2011",
            AlgorithmKind::Cso => "cso",
            AlgorithmKind::Psode => "psode",
            AlgorithmKind::RestartLshade => "restart-lshade",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|k| k.name()).collect();
            Error::config("algorithm", format!("unknown algorithm `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationKind {
    Rand1,
    Best1,
    CurrentToPBest1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateKind {
    Standard,
    Spherical,
}

/// An algorithm preset plus every tunable constant. Fields that do not apply
/// to the chosen algorithm are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct Preset {
    pub kind: AlgorithmKind,
    pub pop_size: usize,
    pub mutation: MutationKind,
    pub crossover: Crossover,
    pub repair: Repair,
    pub f: f64,
    pub cr: f64,
    pub p: f64,
    pub archive_rate: f64,
    /// SHADE memory size; `None` means `pop_size`.
    pub memory_size: Option<usize>,
    pub learning_rate: f64,
    pub n_min: usize,
    pub topology: Topology,
    pub update: UpdateKind,
    pub w: f64,
    pub c1: f64,
    pub c2: f64,
    pub c: f64,
    pub phi: f64,
    /// Restart stagnation window; `None` means `100 * dim`.
    pub stagnation_evals: Option<u64>,
    pub epsilon: f64,
}

pub const SET_KEYS: [&str; 19] = [
    "f",
    "cr",
    "p",
    "archive_rate",
    "memory_size",
    "learning_rate",
    "n_min",
    "w",
    "c1",
    "c2",
    "c",
    "phi",
    "stagnation_evals",
    "epsilon",
    "mutation",
    "crossover",
    "repair",
    "topology",
    "update",
];

impl Preset {
    pub fn new(kind: AlgorithmKind, pop_size: usize) -> Self {
        use AlgorithmKind::*;
        let mut preset = Self {
            kind,
            pop_size,
            mutation: MutationKind::Rand1,
            crossover: Crossover::Binomial,
            repair: Repair::Clip,
            f: 0.5,
            cr: 0.9,
            p: 0.11,
            archive_rate: 0.0,
            memory_size: None,
            learning_rate: 0.1,
            n_min: 4,
            topology: Topology::Gbest,
            update: UpdateKind::Standard,
            w: SPSO_INERTIA,
            c1: SPSO_ACCELERATION,
            c2: SPSO_ACCELERATION,
            c: SPSO_ACCELERATION,
            phi: DEFAULT_PHI,
            stagnation_evals: None,
            epsilon: DEFAULT_EPSILON,
        };
        match kind {
            Jade => {
                preset.mutation = MutationKind::CurrentToPBest1;
                preset.repair = Repair::MidpointTarget;
                preset.p = 0.05;
                preset.archive_rate = 1.0;
            }
            Shade | Lshade | RestartLshade => {
                preset.mutation = MutationKind::CurrentToPBest1;
                preset.repair = Repair::MidpointTarget;
                preset.archive_rate = 1.0;
            }
            Spso2011 => {
                preset.topology = Topology::LbestRing;
                preset.update = UpdateKind::Spherical;
            }
            Psode => preset.topology = Topology::LbestRing,
            De | Pso | Cso => {}
        }
        preset
    }

    /// Applies one `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<V: FromStr>(key: &str, value: &str) -> Result<V> {
            value
                .parse()
                .map_err(|_| Error::config("set", format!("invalid value `{value}` for `{key}`")))
        }
        let bad = || Error::config("set", format!("invalid value `{value}` for `{key}`"));
        match key {
            "f" => self.f = num(key, value)?,
            "cr" => self.cr = num(key, value)?,
            "p" => self.p = num(key, value)?,
            "archive_rate" => self.archive_rate = num(key, value)?,
            "memory_size" => self.memory_size = Some(num(key, value)?),
            "learning_rate" => self.learning_rate = num(key, value)?,
            "n_min" => self.n_min = num(key, value)?,
            "w" => self.w = num(key, value)?,
            "c1" => self.c1 = num(key, value)?,
            "c2" => self.c2 = num(key, value)?,
            "c" => self.c = num(key, value)?,
            "phi" => self.phi = num(key, value)?,
            "stagnation_evals" => self.stagnation_evals = Some(num(key, value)?),
            "epsilon" => self.epsilon = num(key, value)?,
            "mutation" => {
                self.mutation = match value {
                    "rand1" => MutationKind::Rand1,
                    "best1" => MutationKind::Best1,
                    "current-to-pbest1" | "ttpb1" => MutationKind::CurrentToPBest1,
                    _ => return Err(bad()),
                }
            }
            "crossover" => {
                self.crossover = match value {
                    "binomial" => Crossover::Binomial,
                    "exponential" => Crossover::Exponential,
                    _ => return Err(bad()),
                }
            }
            "repair" => {
                self.repair = match value {
                    "clip" => Repair::Clip,
                    "reflect" => Repair::Reflect,
                    "midpoint" => Repair::MidpointTarget,
                    "reinitialize" => Repair::Reinitialize,
                    _ => return Err(bad()),
                }
            }
            "topology" => {
                self.topology = match value {
                    "gbest" => Topology::Gbest,
                    "ring" | "lbest" => Topology::LbestRing,
                    _ => return Err(bad()),
                }
            }
            "update" => {
                self.update = match value {
                    "standard" => UpdateKind::Standard,
                    "spherical" => UpdateKind::Spherical,
                    _ => return Err(bad()),
                }
            }
            _ => {
                return Err(Error::config(
                    "set",
                    format!("unknown key `{key}` (expected one of {})", SET_KEYS.join(", ")),
                ))
            }
        }
        Ok(())
    }

    /// Applies a `key=value` string.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::config("set", format!("expected key=value, got `{pair}`")))?;
        self.set(k.trim(), v.trim())
    }

    fn mutation(&self) -> Mutation {
        match self.mutation {
            MutationKind::Rand1 => Mutation::Rand1,
            MutationKind::Best1 => Mutation::Best1,
            MutationKind::CurrentToPBest1 => Mutation::CurrentToPBest1 {
                p: self.p,
                use_archive: self.archive_rate > 0.0,
            },
        }
    }

    fn adapter(&self) -> Result<AdapterState> {
        match self.kind {
            AlgorithmKind::Jade => AdapterState::jade(self.learning_rate),
            AlgorithmKind::Shade | AlgorithmKind::Lshade | AlgorithmKind::RestartLshade => {
                AdapterState::shade(self.memory_size.unwrap_or(self.pop_size))
            }
            _ => AdapterState::fixed(self.f, self.cr),
        }
    }

    fn de_engine<T: Scalar>(&self) -> Result<DeEngine<T>> {
        let population = match self.kind {
            AlgorithmKind::Lshade | AlgorithmKind::RestartLshade => PopulationPolicy::LinearReduction {
                n_init: self.pop_size,
                n_min: self.n_min,
            },
            _ => PopulationPolicy::Fixed,
        };
        DeBuilder::new()
            .mutation(self.mutation())
            .crossover(self.crossover)
            .constraint_handler(self.repair)
            .parameter(self.adapter()?)
            .population_strategy(population)
            .archive(self.archive_rate)
            .build()
    }

    fn pso_engine(&self) -> Result<PsoEngine> {
        let update = match self.update {
            UpdateKind::Standard => VelocityUpdate::Standard {
                w: self.w,
                c1: self.c1,
                c2: self.c2,
            },
            UpdateKind::Spherical => VelocityUpdate::Spherical { w: self.w, c: self.c },
        };
        PsoBuilder::new().topology(self.topology).update(update).build()
    }

    fn criterion(&self, dim: usize) -> Result<RestartCriterion> {
        RestartCriterion::new(
            self.stagnation_evals
                .unwrap_or(DEFAULT_STAGNATION_PER_DIM * dim.max(1) as u64),
            self.epsilon,
        )
    }

    /// Builds the optimizer for one run. Restart presets return the inner optimizer.
    pub fn build<T: Scalar>(&self) -> Result<Box<dyn Optimizer<T>>> {
        Ok(match self.kind {
            AlgorithmKind::De
            | AlgorithmKind::Jade
            | AlgorithmKind::Shade
            | AlgorithmKind::Lshade
            | AlgorithmKind::RestartLshade => Box::new(DeOptimizer::new(self.de_engine::<T>()?, self.pop_size)),
            AlgorithmKind::Pso | AlgorithmKind::Spso2011 => {
                Box::new(PsoOptimizer::new(self.pso_engine()?, self.pop_size))
            }
            AlgorithmKind::Cso => Box::new(CsoOptimizer::new(CsoParams { phi: self.phi }, self.pop_size)?),
            AlgorithmKind::Psode => Box::new(PsodeOptimizer::new(
                self.pso_engine()?,
                self.de_engine::<T>()?,
                self.pop_size,
            )?),
        })
    }

    /// Checks every setting for a run in `dim` dimensions without running anything.
    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.pop_size < crate::population::MIN_POP_SIZE {
            return Err(Error::config(
                "pop_size",
                format!("must be at least {}", crate::population::MIN_POP_SIZE),
            ));
        }
        self.build::<f64>()?;
        if self.kind == AlgorithmKind::RestartLshade {
            self.criterion(dim)?;
        }
        Ok(())
    }
}

impl<T: Scalar> Algorithm<T> for Preset {
    fn batch_size(&self, _dim: usize) -> usize {
        match self.kind {
            AlgorithmKind::Psode => 2 * self.pop_size,
            _ => self.pop_size,
        }
    }

    fn run(&self, problem: &mut dyn Objective<T>, max_fes: u64, rng: &mut RngStream) -> Result<T> {
        if self.kind == AlgorithmKind::RestartLshade {
            let criterion = self.criterion(problem.dim())?;
            let out = restart_run(|| self.build::<T>(), criterion, problem, max_fes, rng)?;
            return Ok(out.best.fitness);
        }
        let mut opt = self.build::<T>()?;
        Ok(run_to_budget(&mut opt, problem, max_fes, rng)?.best.fitness)
    }
}
