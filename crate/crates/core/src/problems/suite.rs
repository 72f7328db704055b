//! Suites: ordered collections of instances.

use crate::error::{Error, Result};
use crate::problems::instance::ProblemInstance;
use crate::problems::registry::make_instance;
use crate::scalar::Scalar;

pub const DEFAULT_DIMS: [usize; 7] = [2, 10, 20, 30, 50, 100, 1000];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub suite_name: String,
    pub problem_ids: Vec<u32>,
    pub dim: usize,
    pub instance_count: u32,
    pub master_seed: u64,
    /// Accepted dimensions; empty means any positive dimension.
    pub allowed_dims: Vec<usize>,
}

impl SuiteConfig {
    pub fn new(suite_name: impl Into<String>, problem_ids: Vec<u32>, dim: usize) -> Self {
        Self {
            suite_name: suite_name.into(),
            problem_ids,
            dim,
            instance_count: 1,
            master_seed: 0,
            allowed_dims: DEFAULT_DIMS.to_vec(),
        }
    }

    pub fn instance_count(mut self, n: u32) -> Self {
        self.instance_count = n;
        self
    }

    pub fn master_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn allowed_dims(mut self, dims: Vec<usize>) -> Self {
        self.allowed_dims = dims;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.problem_ids.is_empty() {
            return Err(Error::config("problems", "problem list is empty"));
        }
        if self.instance_count == 0 {
            return Err(Error::config("instances", "instance count must be at least 1"));
        }
        if self.dim == 0 || (!self.allowed_dims.is_empty() && !self.allowed_dims.contains(&self.dim)) {
            return Err(Error::config(
                "dim",
                format!("dimension {} not in {:?}", self.dim, self.allowed_dims),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Suite<T> {
    pub name: String,
    pub dim: usize,
    pub instance_count: u32,
    instances: Vec<ProblemInstance<T>>,
}

impl<T: Scalar> Suite<T> {
    /// Wraps explicit instances, e.g. custom problems outside the registry.
    pub fn from_instances(name: impl Into<String>, instances: Vec<ProblemInstance<T>>) -> Result<Self> {
        let first = instances
            .first()
            .ok_or_else(|| Error::config("problems", "suite has no instances"))?;
        let dim = first.dim();
        if let Some(bad) = instances.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        Ok(Self {
            name: name.into(),
            dim,
            instance_count: 1,
            instances,
        })
    }

    pub fn instances(&self) -> &[ProblemInstance<T>] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProblemInstance<T>> {
        self.instances.iter()
    }
}

/// Problem-major, instance-minor; instance ids run `1..=instance_count`.
pub fn build_suite<T: Scalar>(config: &SuiteConfig) -> Result<Suite<T>> {
    config.validate()?;
    let mut instances = Vec::with_capacity(config.problem_ids.len() * config.instance_count as usize);
    for &pid in &config.problem_ids {
        for iid in 1..=config.instance_count {
            instances.push(make_instance(pid, config.dim, iid, config.master_seed)?);
        }
    }
    Ok(Suite {
        name: config.suite_name.clone(),
        dim: config.dim,
        instance_count: config.instance_count,
        instances,
    })
}
