//! Particle swarm optimization: topology x velocity-update composition, and
//! the Competitive Swarm Optimizer.

mod cso;
mod engine;
mod topology;
mod update;

pub use cso::{cso_generation, cso_learn, CsoOptimizer, CsoParams, DEFAULT_PHI};
pub use engine::{PsoBuilder, PsoEngine, PsoOptimizer, SwarmState};
pub use topology::{neighbor_best, Topology};
pub use update::{
    sample_in_ball, velocity_update, VelocityUpdate, SPSO_ACCELERATION, SPSO_INERTIA,
};
