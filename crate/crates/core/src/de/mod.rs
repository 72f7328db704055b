//! Modular Differential Evolution.
//!
//! An engine is assembled from a mutation strategy, a crossover, a boundary
//! repair, a parameter adapter (fixed, JADE or SHADE), a population-size
//! policy and an archive rate through [`DeBuilder`]. Canonical SHADE without
//! archive:
//!
//! ```
//! use evobench::de::*;
//!
//! let shade = DeBuilder::new()
//!     .mutation(Mutation::CurrentToPBest1 { p: 0.11, use_archive: false })
//!     .parameter(AdapterState::shade(100).unwrap())
//!     .population_strategy(PopulationPolicy::Fixed)
//!     .crossover(Crossover::Binomial)
//!     .constraint_handler(Repair::MidpointTarget)
//!     .archive(0.0)
//!     .build::<f32>()
//!     .unwrap();
//! # let _ = shade;
//! ```

mod adapter;
mod archive;
mod engine;
mod operators;

pub use adapter::{AdapterState, TrialParams, F_FALLBACK, MAX_F_RESAMPLES, SAMPLING_SCALE};
pub use archive::Archive;
pub use engine::{
    linear_target, reduce_population, select_and_archive, DeBuilder, DeConfig, DeEngine,
    DeOptimizer, PopulationPolicy, Success,
};
pub use operators::{
    best_1, crossover, current_to_pbest_1, mutate, pbest_count, rand_1, repair_bounds, Crossover,
    Mutation, MutationPlan, Repair,
};
