//! Seeded benchmark instances with shift, rotation and bias, plus base,
//! hybrid and composition functions and a batched evaluation path.
//!
//! ```
//! use evobench::problems::{build_suite, SuiteConfig};
//!
//! let suite = build_suite::<f64>(&SuiteConfig::new("cec", (1..=12).collect(), 10)).unwrap();
//! let p = &suite.instances()[3];
//! assert_eq!(p.evaluate(&p.shift).unwrap(), p.optimum_value());
//! ```

mod batch;
mod functions;
mod instance;
mod registry;
mod rotation;
mod suite;

pub use batch::{batched_evaluate, BatchEvaluator, BatchScratch, BLOCK};
pub use functions::{evaluate_base, BaseKind};
pub use instance::{
    chunk_sizes, composition_weights, evaluate_composition, evaluate_hybrid, instance_stream_id, transform_input,
    Component, CompositionSpec, EvalScratch, FunctionSpec, HybridSpec, InstanceObjective, ProblemInstance, Rotation,
    Template, DEFAULT_LB, DEFAULT_UB, SHIFT_FRACTION,
};
pub use registry::{lookup, make_custom_instance, make_instance, registry, ProblemClass, ProblemEntry, PROBLEM_COUNT};
pub use rotation::{determinant, orthogonality_error, orthonormalize_rows, random_rotation};
pub use suite::{build_suite, Suite, SuiteConfig, DEFAULT_DIMS};
