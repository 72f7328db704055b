//! Individuals, populations and evaluation-budget bookkeeping.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// Smallest population that lets DE draw three indices distinct from the target.
pub const MIN_POP_SIZE: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct Individual<T> {
    pub genome: Vec<T>,
    /// Objective value, lower is better. Meaningless while `evaluated` is false.
    pub fitness: T,
    pub evaluated: bool,
}

impl<T: Scalar> Individual<T> {
    pub fn new(genome: Vec<T>) -> Self {
        Self {
            genome,
            fitness: T::infinity(),
            evaluated: false,
        }
    }

    pub fn with_fitness(genome: Vec<T>, fitness: T) -> Self {
        Self {
            genome,
            fitness,
            evaluated: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.genome.len()
    }

    /// Strict improvement: `self` is better than `other`.
    #[inline]
    pub fn better_than(&self, other: &Self) -> bool {
        self.fitness < other.fitness
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Population<T> {
    members: Vec<Individual<T>>,
    dim: usize,
}

impl<T: Scalar> Population<T> {
    /// Uniform random population in `[lb, ub]^dim`; individuals are left unevaluated.
    pub fn init<R: RandomSource + ?Sized>(
        pop_size: usize,
        dim: usize,
        lb: T,
        ub: T,
        rng: &mut R,
    ) -> Result<Self> {
        if pop_size < MIN_POP_SIZE {
            return Err(Error::config(
                "pop_size",
                format!("must be at least {MIN_POP_SIZE}, got {pop_size}"),
            ));
        }
        if dim == 0 {
            return Err(Error::config("dim", "must be positive"));
        }
        if !(lb < ub) {
            return Err(Error::config("bounds", format!("lb ({lb}) must be below ub ({ub})")));
        }
        let members = (0..pop_size)
            .map(|_| Individual::new((0..dim).map(|_| uniform_gene(lb, ub, rng)).collect()))
            .collect();
        Ok(Self { members, dim })
    }

    /// Wraps existing individuals; all genomes must have length `dim`.
    pub fn from_members(members: Vec<Individual<T>>, dim: usize) -> Result<Self> {
        if let Some(bad) = members.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        Ok(Self { members, dim })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[Individual<T>] {
        &self.members
    }

    pub fn members_mut(&mut self) -> &mut [Individual<T>] {
        &mut self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Individual<T>> {
        self.members.iter()
    }

    pub fn into_members(self) -> Vec<Individual<T>> {
        self.members
    }

    /// Index of the best member; ties resolve to the lowest index.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate().skip(1) {
            if m.fitness < self.members[best].fitness {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Individual<T> {
        &self.members[self.best_index()]
    }

    /// Member indices sorted best-first (stable, so ties keep index order).
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.members.len()).collect();
        order.sort_by(|&a, &b| {
            self.members[a]
                .fitness
                .partial_cmp(&self.members[b].fitness)
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        order
    }

    /// Keeps only the members whose index is flagged in `keep`.
    pub(crate) fn retain_indices(&mut self, keep: &[bool]) {
        let mut idx = 0;
        self.members.retain(|_| {
            let k = keep[idx];
            idx += 1;
            k
        });
    }
}

impl<T> Index<usize> for Population<T> {
    type Output = Individual<T>;

    fn index(&self, i: usize) -> &Individual<T> {
        &self.members[i]
    }
}

impl<T> IndexMut<usize> for Population<T> {
    fn index_mut(&mut self, i: usize) -> &mut Individual<T> {
        &mut self.members[i]
    }
}

#[inline]
pub(crate) fn uniform_gene<T: Scalar, R: RandomSource + ?Sized>(lb: T, ub: T, rng: &mut R) -> T {
    lb + (ub - lb) * T::lit(rng.uniform())
}

/// Evaluation budget and generation counters of one optimization run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionState {
    pub current_fes: u64,
    pub max_fes: u64,
    pub generation: u64,
    pub pop_size_init: usize,
    pub pop_size_min: usize,
    pub dim: usize,
}

impl EvolutionState {
    pub fn new(max_fes: u64, pop_size_init: usize, dim: usize) -> Self {
        Self {
            current_fes: 0,
            max_fes,
            generation: 0,
            pop_size_init,
            pop_size_min: pop_size_init,
            dim,
        }
    }

    pub fn with_min_pop_size(mut self, pop_size_min: usize) -> Self {
        self.pop_size_min = pop_size_min;
        self
    }

    #[inline]
    pub fn count_evaluation(&mut self, n: u64) {
        self.current_fes += n;
    }

    pub fn exhausted(&self) -> bool {
        self.current_fes >= self.max_fes
    }

    pub fn remaining(&self) -> u64 {
        self.max_fes.saturating_sub(self.current_fes)
    }

    /// Fraction of the budget consumed, clamped to `[0, 1]`.
    pub fn progress(&self) -> f64 {
        if self.max_fes == 0 {
            return 1.0;
        }
        (self.current_fes as f64 / self.max_fes as f64).min(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    struct Midpoint;

    impl RandomSource for Midpoint {
        fn uniform(&mut self) -> f64 {
            0.5
        }
        fn standard_normal(&mut self) -> f64 {
            0.0
        }
    }

    #[test]
    fn midpoint_quantile_gives_centre() {
        let pop = Population::<f64>::init(5, 3, -100.0, 100.0, &mut Midpoint).unwrap();
        assert!(pop.iter().flat_map(|m| &m.genome).all(|&g| g == 0.0));
        assert!(pop.iter().all(|m| !m.evaluated));
    }

    #[test]
    fn shape_contract() {
        let pop = Population::<f64>::init(10, 30, -5.0, 5.0, &mut derive_stream(1, 0)).unwrap();
        assert_eq!(pop.len(), 10);
        assert!(pop.iter().all(|m| m.genome.len() == 30));
        assert!(pop
            .iter()
            .flat_map(|m| &m.genome)
            .all(|&g| (-5.0..=5.0).contains(&g)));
    }

    #[test]
    fn same_seed_same_population() {
        let a = Population::<f32>::init(8, 4, -1.0, 1.0, &mut derive_stream(9, 2)).unwrap();
        let b = Population::<f32>::init(8, 4, -1.0, 1.0, &mut derive_stream(9, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_configuration() {
        let rng = &mut derive_stream(0, 0);
        assert!(Population::<f64>::init(3, 2, 0.0, 1.0, rng).unwrap_err().is_config());
        assert!(Population::<f64>::init(4, 0, 0.0, 1.0, rng).is_err());
        assert!(Population::<f64>::init(4, 2, 1.0, 1.0, rng).is_err());
        assert!(Population::<f64>::init(4, 2, 2.0, 1.0, rng).is_err());
    }

    #[test]
    fn count_evaluation_adds() {
        let mut s = EvolutionState::new(10_000, 100, 10);
        s.count_evaluation(100);
        assert_eq!(s.current_fes, 100);
        s.count_evaluation(0);
        assert_eq!(s.current_fes, 100);
        let mut s = EvolutionState::new(10_000, 100, 10);
        for _ in 0..10 {
            s.count_evaluation(100);
        }
        assert_eq!(s.current_fes, 1000);
    }

    #[test]
    fn best_and_ranking_break_ties_by_index() {
        let members = [3.0, 1.0, 2.0, 1.0]
            .iter()
            .map(|&f| Individual::with_fitness(vec![0.0], f))
            .collect();
        let pop = Population::from_members(members, 1).unwrap();
        assert_eq!(pop.best_index(), 1);
        assert_eq!(pop.ranking(), vec![1, 3, 2, 0]);
    }
}
