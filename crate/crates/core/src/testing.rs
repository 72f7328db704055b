//! Scripted random sources for tests that need to force specific draws.

use std::collections::VecDeque;

use crate::rng::RandomSource;

/// Replays fixed draws; panics when a queue runs dry so tests notice
/// unexpected consumption.
#[derive(Clone, Debug, Default)]
pub struct Scripted {
    uniforms: VecDeque<f64>,
    normals: VecDeque<f64>,
    cauchy: VecDeque<f64>,
    /// When set, `uniform` returns this value forever instead of draining the queue.
    constant: Option<f64>,
}

impl Scripted {
    pub fn uniforms(values: &[f64]) -> Self {
        Self {
            uniforms: values.iter().copied().collect(),
            ..Self::default()
        }
    }

    pub fn constant(u: f64) -> Self {
        Self {
            constant: Some(u),
            ..Self::default()
        }
    }

    /// Raw standard-normal draws.
    pub fn with_normals(mut self, values: &[f64]) -> Self {
        self.normals.extend(values);
        self
    }

    /// Raw Cauchy draws, returned as-is by [`RandomSource::cauchy`] (location and scale ignored).
    pub fn with_cauchy(mut self, values: &[f64]) -> Self {
        self.cauchy.extend(values);
        self
    }

    pub fn exhausted(&self) -> bool {
        self.uniforms.is_empty() && self.normals.is_empty() && self.cauchy.is_empty()
    }
}

impl RandomSource for Scripted {
    fn uniform(&mut self) -> f64 {
        if let Some(u) = self.constant {
            return u;
        }
        self.uniforms.pop_front().expect("scripted uniform draws exhausted")
    }

    fn standard_normal(&mut self) -> f64 {
        self.normals.pop_front().unwrap_or(0.0)
    }

    fn cauchy(&mut self, location: f64, scale: f64) -> f64 {
        match self.cauchy.pop_front() {
            Some(v) => v,
            None => location + scale * (std::f64::consts::PI * (self.uniform() - 0.5)).tan(),
        }
    }

    fn normal(&mut self, mean: f64, sd: f64) -> f64 {
        match self.normals.pop_front() {
            Some(v) => v,
            None => mean + sd * self.standard_normal(),
        }
    }
}
