use crate::population::Individual;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    /// Every particle is informed by the best personal best of the swarm.
    Gbest,
    /// Ring of radius one: `{i-1, i, i+1} mod N`.
    LbestRing,
}

/// Index of the best personal best visible from particle `i`; ties go to the lowest index.
pub fn neighbor_best<T: Scalar>(topology: Topology, pbests: &[Individual<T>], i: usize) -> usize {
    let n = pbests.len();
    debug_assert!(n > 0 && i < n);
    match topology {
        Topology::Gbest => {
            let mut best = 0;
            for k in 1..n {
                if pbests[k].fitness < pbests[best].fitness {
                    best = k;
                }
            }
            best
        }
        Topology::LbestRing => {
            let mut candidates = [(i + n - 1) % n, i, (i + 1) % n];
            candidates.sort_unstable();
            let mut best = candidates[0];
            for &k in &candidates[1..] {
                if pbests[k].fitness < pbests[best].fitness {
                    best = k;
                }
            }
            best
        }
    }
}
