//! Per-run observation hooks.

use crate::scalar::Scalar;

/// Identifies one task of a benchmark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunKey {
    pub problem_id: u32,
    pub instance_id: u32,
    pub run_index: u32,
}

/// Receives the events of a single run. Owned by the task, so no locking.
pub trait RunObserver<T>: Send {
    /// Called after every evaluation with the total count so far.
    fn on_evaluate(&mut self, _fes: u64, _fitness: T) {}

    /// Called once per generation by algorithms that expose parameters.
    fn on_generation(&mut self, _generation: u64, _params: &[(&'static str, f64)]) {}
}

/// Creates one [`RunObserver`] per task; results come back in task order.
pub trait Observer<T>: Sync {
    type Run: RunObserver<T>;

    fn start_run(&self, key: RunKey) -> Self::Run;
}

impl<T> RunObserver<T> for () {}

/// Observes nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoopObserver;

impl<T> Observer<T> for NoopObserver {
    type Run = ();

    fn start_run(&self, _key: RunKey) {}
}

impl<T: Copy, A: RunObserver<T>, B: RunObserver<T>> RunObserver<T> for (A, B) {
    fn on_evaluate(&mut self, fes: u64, fitness: T) {
        self.0.on_evaluate(fes, fitness);
        self.1.on_evaluate(fes, fitness);
    }

    fn on_generation(&mut self, generation: u64, params: &[(&'static str, f64)]) {
        self.0.on_generation(generation, params);
        self.1.on_generation(generation, params);
    }
}

impl<T: Copy, A: Observer<T>, B: Observer<T>> Observer<T> for (A, B) {
    type Run = (A::Run, B::Run);

    fn start_run(&self, key: RunKey) -> Self::Run {
        (self.0.start_run(key), self.1.start_run(key))
    }
}

/// Records named generation-level parameters (e.g. `mu_f`, `mu_cr`).
#[derive(Clone, Debug, Default)]
pub struct ParameterObserver {
    capacity: usize,
}

impl ParameterObserver {
    /// `capacity` is the expected number of generations per run.
    pub fn with_capacity(capacity: usize) -> Self {
        Self { capacity }
    }
}

/// Parameter trace of one run. Column names are fixed by the first generation.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSeries {
    pub key: RunKey,
    pub names: Vec<&'static str>,
    pub generations: Vec<u64>,
    /// Row-major, `names.len()` values per generation.
    pub values: Vec<f64>,
}

impl ParameterSeries {
    pub fn len(&self) -> usize {
        self.generations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generations.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.names.iter().position(|&n| n == name)?;
        let width = self.names.len();
        Some(self.values.iter().skip(c).step_by(width).copied().collect())
    }
}

impl<T: Scalar> Observer<T> for ParameterObserver {
    type Run = ParameterSeries;

    fn start_run(&self, key: RunKey) -> ParameterSeries {
        ParameterSeries {
            key,
            names: Vec::new(),
            generations: Vec::with_capacity(self.capacity),
            values: Vec::with_capacity(2 * self.capacity),
        }
    }
}

impl<T> RunObserver<T> for ParameterSeries {
    fn on_generation(&mut self, generation: u64, params: &[(&'static str, f64)]) {
        if self.names.is_empty() {
            self.names = params.iter().map(|(n, _)| *n).collect();
        }
        for &name in &self.names {
            let v = params.iter().find(|(n, _)| *n == name).map_or(f64::NAN, |(_, v)| *v);
            self.values.push(v);
        }
        self.generations.push(generation);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_collects_named_columns() {
        let key = RunKey {
            problem_id: 1,
            instance_id: 1,
            run_index: 0,
        };
        let mut s = <ParameterObserver as Observer<f64>>::start_run(&ParameterObserver::with_capacity(4), key);
        for g in 1..=3u64 {
            RunObserver::<f64>::on_generation(&mut s, g, &[("mu_f", 0.5), ("mu_cr", 0.1 * g as f64)]);
        }
        assert_eq!(s.len(), 3);
        assert_eq!(s.column("mu_f").unwrap(), vec![0.5; 3]);
        assert_eq!(s.column("mu_cr").unwrap()[2], 0.30000000000000004);
        assert!(s.column("w").is_none());
    }
}
