use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// External archive of recently replaced parents.
///
/// Capacity is `ceil(rate * pop_size)`; a full archive overwrites a uniformly
/// random member.
#[derive(Clone, Debug, PartialEq)]
pub struct Archive<T> {
    rate: f64,
    capacity: usize,
    members: Vec<Vec<T>>,
}

impl<T: Scalar> Archive<T> {
    pub fn new(rate: f64, pop_size: usize) -> Self {
        Self {
            rate,
            capacity: capacity_for(rate, pop_size),
            members: Vec::new(),
        }
    }

    pub fn disabled() -> Self {
        Self::new(0.0, 0)
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vec<T>] {
        &self.members
    }

    pub fn push<R: RandomSource + ?Sized>(&mut self, genome: Vec<T>, rng: &mut R) {
        if self.capacity == 0 {
            return;
        }
        if self.members.len() < self.capacity {
            self.members.push(genome);
        } else {
            let victim = rng.index(self.members.len());
            self.members[victim] = genome;
        }
    }

    /// Rescales the capacity to a new population size, dropping random members if needed.
    pub fn resize<R: RandomSource + ?Sized>(&mut self, pop_size: usize, rng: &mut R) {
        self.capacity = capacity_for(self.rate, pop_size);
        while self.members.len() > self.capacity {
            let victim = rng.index(self.members.len());
            self.members.swap_remove(victim);
        }
    }

    pub fn clear(&mut self) {
        self.members.clear();
    }
}

fn capacity_for(rate: f64, pop_size: usize) -> usize {
    (rate * pop_size as f64).ceil() as usize
}
