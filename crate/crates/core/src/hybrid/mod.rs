//! Algorithm composition: the PSO/DE hybrid and the restart wrapper.

mod psode;
mod restart;

pub use psode::{psode_generation, PsodeOptimizer};
pub use restart::{restart_run, RestartCriterion, RestartOutcome, DEFAULT_EPSILON, DEFAULT_STAGNATION_PER_DIM};
