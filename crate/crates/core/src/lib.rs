//! Modular evolutionary optimizers and a parallel benchmarking harness.
//!
//! DE variants are assembled from strategy slots with [`de::DeBuilder`], PSO
//! variants with [`pso::PsoBuilder`]. [`experiment::evo_bench`] runs an
//! [`experiment::Algorithm`] over a [`problems::Suite`] with one
//! deterministic random stream per task and records best-so-far curves.
//!
//! Every numeric type is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the precision.
//!
//! ```
//! use evobench::experiment::{evo_bench, BenchConfig, NoopObserver};
//! use evobench::presets::{AlgorithmKind, Preset};
//! use evobench::problems::{build_suite, SuiteConfig};
//!
//! let suite = build_suite::<f64>(&SuiteConfig::new("cec", vec![1, 4], 10)).unwrap();
//! let shade = Preset::new(AlgorithmKind::Shade, 20);
//! let config = BenchConfig::new(2, 2000, 200, 42).sequential();
//! let result = evo_bench(&shade, &suite, &NoopObserver, &config).unwrap();
//! assert_eq!(result.table.runs(), 4);
//! assert_eq!(result.table.checkpoints(), 10);
//! ```

pub mod de;
pub mod error;
pub mod experiment;
pub mod hybrid;
pub mod objective;
pub mod optimizer;
pub mod population;
pub mod presets;
pub mod problems;
pub mod pso;
pub mod rng;
pub mod scalar;
#[doc(hidden)]
pub mod testing;

pub use error::{Error, Result};
pub use objective::{FnObjective, Objective};
pub use optimizer::{run_to_budget, Optimizer, RunOutcome};
pub use population::{EvolutionState, Individual, Population};
pub use rng::{derive_stream, RandomSource, RngStream};
pub use scalar::Scalar;

pub type Individual32 = Individual<f32>;
pub type Individual64 = Individual<f64>;
pub type Population32 = Population<f32>;
pub type Population64 = Population<f64>;
pub type ProblemInstance32 = problems::ProblemInstance<f32>;
pub type ProblemInstance64 = problems::ProblemInstance<f64>;
pub type Suite32 = problems::Suite<f32>;
pub type Suite64 = problems::Suite<f64>;
pub type DeEngine32 = de::DeEngine<f32>;
pub type DeEngine64 = de::DeEngine<f64>;
