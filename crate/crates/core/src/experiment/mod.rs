//! Benchmark runner: algorithm x suite x runs with deterministic per-task
//! streams, best-so-far recording, generation-level observers and CSV export.

mod export;
mod observer;
mod recorder;
mod runner;

pub use export::{
    export_csv, export_parameter_csv, parameters_csv, parse_results, read_results, results_csv, summarize,
    validate_results, ResultRow, Summary, PARAMETERS_HEADER, RESULTS_HEADER,
};
pub use observer::{NoopObserver, Observer, ParameterObserver, ParameterSeries, RunKey, RunObserver};
pub use recorder::{BestSoFarTable, Recorder, SuiteProblem};
pub use runner::{evo_bench, task_index, Algorithm, BenchConfig, BenchResult, FnAlgorithm};
