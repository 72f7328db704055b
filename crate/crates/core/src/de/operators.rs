//! Mutation, crossover and boundary-repair strategies.

use crate::de::archive::Archive;
use crate::error::{Error, Result};
use crate::population::{uniform_gene, Population};
use crate::rng::RandomSource;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mutation {
    /// `v = x_r1 + F (x_r2 - x_r3)`
    Rand1,
    /// `v = x_best + F (x_r1 - x_r2)`
    Best1,
    /// current-to-pbest/1: `v = x_i + F (x_pbest - x_i) + F (x_r1 - x~_r2)`,
    /// with `x~_r2` drawn from population plus archive when `use_archive`.
    CurrentToPBest1 { p: f64, use_archive: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossover {
    Binomial,
    Exponential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repair {
    Clip,
    Reflect,
    /// Out-of-range gene becomes the midpoint between the violated bound and the target gene.
    MidpointTarget,
    Reinitialize,
}

pub fn rand_1<T: Scalar>(x_r1: &[T], x_r2: &[T], x_r3: &[T], f: T) -> Vec<T> {
    x_r1.iter()
        .zip(x_r2)
        .zip(x_r3)
        .map(|((&a, &b), &c)| a + f * (b - c))
        .collect()
}

pub fn best_1<T: Scalar>(x_best: &[T], x_r1: &[T], x_r2: &[T], f: T) -> Vec<T> {
    rand_1(x_best, x_r1, x_r2, f)
}

pub fn current_to_pbest_1<T: Scalar>(
    x_i: &[T],
    x_pbest: &[T],
    x_r1: &[T],
    x_r2: &[T],
    f: T,
) -> Vec<T> {
    (0..x_i.len())
        .map(|j| x_i[j] + f * (x_pbest[j] - x_i[j]) + f * (x_r1[j] - x_r2[j]))
        .collect()
}

/// Per-generation mutation setup: the best index and the p-best set are
/// computed once from the parent population.
#[derive(Clone, Debug)]
pub struct MutationPlan {
    kind: Mutation,
    best: usize,
    top: Vec<usize>,
}

impl MutationPlan {
    pub fn new<T: Scalar>(kind: Mutation, pop: &Population<T>) -> Result<Self> {
        let n = pop.len();
        let needed = match kind {
            Mutation::Rand1 => 4,
            Mutation::Best1 | Mutation::CurrentToPBest1 { .. } => 3,
        };
        if n < needed {
            return Err(Error::config(
                "pop_size",
                format!("{kind:?} needs at least {needed} individuals, got {n}"),
            ));
        }
        let (best, top) = match kind {
            Mutation::Rand1 => (0, Vec::new()),
            Mutation::Best1 => (pop.best_index(), Vec::new()),
            Mutation::CurrentToPBest1 { p, .. } => {
                let ranking = pop.ranking();
                let count = pbest_count(p, n);
                (ranking[0], ranking[..count].to_vec())
            }
        };
        Ok(Self { kind, best, top })
    }

    /// Donor vector for target `i`.
    pub fn donor<T: Scalar, R: RandomSource + ?Sized>(
        &self,
        pop: &Population<T>,
        archive: &Archive<T>,
        i: usize,
        f: f64,
        rng: &mut R,
    ) -> Vec<T> {
        let n = pop.len();
        let f = T::lit(f);
        let g = |k: usize| pop[k].genome.as_slice();
        match self.kind {
            Mutation::Rand1 => {
                let r1 = draw_excluding(rng, n, &[i]);
                let r2 = draw_excluding(rng, n, &[i, r1]);
                let r3 = draw_excluding(rng, n, &[i, r1, r2]);
                rand_1(g(r1), g(r2), g(r3), f)
            }
            Mutation::Best1 => {
                let r1 = draw_excluding(rng, n, &[i]);
                let r2 = draw_excluding(rng, n, &[i, r1]);
                best_1(g(self.best), g(r1), g(r2), f)
            }
            Mutation::CurrentToPBest1 { use_archive, .. } => {
                let pbest = self.top[rng.index(self.top.len())];
                let r1 = draw_excluding(rng, n, &[i]);
                let pool = if use_archive { n + archive.len() } else { n };
                let r2 = draw_excluding(rng, pool, &[i, r1]);
                let x_r2 = if r2 < n {
                    g(r2)
                } else {
                    archive.members()[r2 - n].as_slice()
                };
                current_to_pbest_1(g(i), g(pbest), g(r1), x_r2, f)
            }
        }
    }
}

/// Size of the p-best set: `ceil(p * n)`, at least two, at most `n`.
pub fn pbest_count(p: f64, n: usize) -> usize {
    ((p * n as f64).ceil() as usize).max(2).min(n)
}

/// Rejection-samples an index in `0..n` not contained in `excluded`.
pub(crate) fn draw_excluding<R: RandomSource + ?Sized>(
    rng: &mut R,
    n: usize,
    excluded: &[usize],
) -> usize {
    loop {
        let r = rng.index(n);
        if !excluded.contains(&r) {
            return r;
        }
    }
}

/// Convenience wrapper building a one-off [`MutationPlan`].
pub fn mutate<T: Scalar, R: RandomSource + ?Sized>(
    kind: Mutation,
    pop: &Population<T>,
    archive: &Archive<T>,
    i: usize,
    f: f64,
    rng: &mut R,
) -> Result<Vec<T>> {
    Ok(MutationPlan::new(kind, pop)?.donor(pop, archive, i, f, rng))
}

/// Mixes `donor` into `target`; at least one gene always comes from the donor.
pub fn crossover<T: Scalar, R: RandomSource + ?Sized>(
    kind: Crossover,
    target: &[T],
    donor: &[T],
    cr: f64,
    rng: &mut R,
) -> Vec<T> {
    let d = target.len();
    debug_assert_eq!(d, donor.len());
    match kind {
        Crossover::Binomial => {
            let jrand = rng.index(d);
            (0..d)
                .map(|j| {
                    let u = rng.uniform();
                    if u < cr || j == jrand {
                        donor[j]
                    } else {
                        target[j]
                    }
                })
                .collect()
        }
        Crossover::Exponential => {
            let mut trial = target.to_vec();
            let start = rng.index(d);
            let mut len = 0;
            loop {
                let j = (start + len) % d;
                trial[j] = donor[j];
                len += 1;
                if len >= d || rng.uniform() >= cr {
                    break;
                }
            }
            trial
        }
    }
}

/// Brings every gene of `trial` back into `[lb, ub]`; in-range genes are untouched.
pub fn repair_bounds<T: Scalar, R: RandomSource + ?Sized>(
    kind: Repair,
    trial: &mut [T],
    target: &[T],
    lb: T,
    ub: T,
    rng: &mut R,
) {
    let two = T::lit(2.0);
    for (j, x) in trial.iter_mut().enumerate() {
        if *x >= lb && *x <= ub {
            continue;
        }
        *x = match kind {
            Repair::Clip => x.max(lb).min(ub),
            Repair::Reflect => reflect(*x, lb, ub),
            Repair::MidpointTarget => {
                if *x < lb {
                    (lb + target[j]) / two
                } else {
                    (ub + target[j]) / two
                }
            }
            Repair::Reinitialize => uniform_gene(lb, ub, rng),
        };
    }
}

/// Folds `x` back across the violated bounds until it lands in `[lb, ub]`.
fn reflect<T: Scalar>(x: T, lb: T, ub: T) -> T {
    if !x.is_finite() {
        return x.max(lb).min(ub);
    }
    let width = ub - lb;
    let period = width + width;
    // Position within one reflection period, in [0, 2w).
    let mut y = (x - lb) % period;
    if y < T::zero() {
        y += period;
    }
    if y > width {
        y = period - y;
    }
    (lb + y).max(lb).min(ub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::Individual;
    use crate::rng::derive_stream;
    use crate::testing::Scripted;

    fn pop_of(genomes: &[&[f64]]) -> Population<f64> {
        let members = genomes
            .iter()
            .enumerate()
            .map(|(k, g)| Individual::with_fitness(g.to_vec(), k as f64))
            .collect();
        Population::from_members(members, genomes[0].len()).unwrap()
    }

    #[test]
    fn rand_1_formula() {
        assert_eq!(rand_1(&[1.0, 1.0], &[2.0, 0.0], &[0.0, 0.0], 0.5), vec![2.0, 1.0]);
        assert_eq!(rand_1(&[1.0, -3.0], &[2.0, 0.0], &[0.0, 7.0], 0.0), vec![1.0, -3.0]);
    }

    #[test]
    fn current_to_pbest_formula() {
        let v = current_to_pbest_1(&[0.0, 0.0], &[1.0, 0.0], &[0.0, 2.0], &[0.0, 0.0], 0.5);
        assert_eq!(v, vec![0.5, 1.0]);
    }

    #[test]
    fn mutate_draws_distinct_indices() {
        // index(n) = floor(u * n): scripted draws 0.0 -> 0 (== i, rejected), 0.3 -> 1, 0.55 -> 2, 0.8 -> 3
        let pop = pop_of(&[&[9.0], &[1.0], &[2.0], &[0.0]]);
        let archive = Archive::disabled();
        let mut rng = Scripted::uniforms(&[0.0, 0.3, 0.55, 0.8]);
        let v = mutate(Mutation::Rand1, &pop, &archive, 0, 0.5, &mut rng).unwrap();
        assert_eq!(v, vec![1.0 + 0.5 * (2.0 - 0.0)]);
    }

    #[test]
    fn mutate_rejects_tiny_population() {
        let pop = pop_of(&[&[0.0], &[1.0], &[2.0]]);
        let err = mutate(Mutation::Rand1, &pop, &Archive::disabled(), 0, 0.5, &mut derive_stream(0, 0));
        assert!(err.unwrap_err().is_config());
    }

    #[test]
    fn pbest_uses_archive_members() {
        let pop = pop_of(&[&[0.0], &[1.0], &[2.0], &[3.0]]);
        let mut archive = Archive::new(1.0, 4);
        archive.push(vec![100.0], &mut derive_stream(0, 0));
        // pbest = top[0] (best = index 0), r1 = 1, r2 = 4 -> archive[0]
        let mut rng = Scripted::uniforms(&[0.0, 0.25, 0.9]);
        let kind = Mutation::CurrentToPBest1 {
            p: 0.5,
            use_archive: true,
        };
        let v = mutate(kind, &pop, &archive, 2, 1.0, &mut rng).unwrap();
        assert_eq!(v, vec![2.0 + (0.0 - 2.0) + (1.0 - 100.0)]);
    }

    #[test]
    fn pbest_count_floor_of_two() {
        assert_eq!(pbest_count(0.11, 100), 11);
        assert_eq!(pbest_count(0.05, 20), 2);
        assert_eq!(pbest_count(0.11, 4), 2);
        assert_eq!(pbest_count(1.0, 7), 7);
    }

    #[test]
    fn binomial_forced_jrand() {
        let target = [0.0, 0.0, 0.0];
        let donor = [1.0, 2.0, 3.0];
        // jrand = floor(0.4 * 3) = 1; u_j draws never below CR = 0
        let mut rng = Scripted::uniforms(&[0.4, 0.1, 0.1, 0.1]);
        let trial = crossover(Crossover::Binomial, &target, &donor, 0.0, &mut rng);
        assert_eq!(trial, vec![0.0, 2.0, 0.0]);
    }

    #[test]
    fn binomial_cr_one_copies_donor() {
        let donor: Vec<f64> = (0..10).map(f64::from).collect();
        let trial = crossover(Crossover::Binomial, &[0.0; 10], &donor, 1.0, &mut derive_stream(1, 1));
        assert_eq!(trial, donor);
    }

    #[test]
    fn exponential_cr_zero_copies_one_gene() {
        let mut rng = derive_stream(5, 5);
        for _ in 0..100 {
            let trial = crossover(Crossover::Exponential, &[0.0; 8], &[1.0; 8], 0.0, &mut rng);
            assert_eq!(trial.iter().filter(|&&g| g == 1.0).count(), 1);
        }
    }

    #[test]
    fn exponential_block_is_contiguous_and_wraps() {
        // start = floor(0.8 * 5) = 4, then continue twice, then stop
        let mut rng = Scripted::uniforms(&[0.8, 0.1, 0.1, 0.99]);
        let trial = crossover(Crossover::Exponential, &[0.0; 5], &[1.0; 5], 0.5, &mut rng);
        assert_eq!(trial, vec![1.0, 1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn midpoint_target_repair() {
        let rng = &mut derive_stream(0, 0);
        let mut t = [-2.0, 12.0, 5.0];
        repair_bounds(Repair::MidpointTarget, &mut t, &[4.0, 4.0, 4.0], 0.0, 10.0, rng);
        assert_eq!(t, [2.0, 7.0, 5.0]);
    }

    #[test]
    fn in_range_gene_is_untouched_by_every_repair() {
        let rng = &mut derive_stream(0, 0);
        for kind in [Repair::Clip, Repair::Reflect, Repair::MidpointTarget, Repair::Reinitialize] {
            let mut t = [5.0];
            repair_bounds(kind, &mut t, &[1.0], 0.0, 10.0, rng);
            assert_eq!(t, [5.0]);
        }
    }

    #[test]
    fn clip_and_reflect() {
        let rng = &mut derive_stream(0, 0);
        let mut t = [-3.0, 13.0];
        repair_bounds(Repair::Clip, &mut t, &[0.0, 0.0], 0.0, 10.0, rng);
        assert_eq!(t, [0.0, 10.0]);
        let mut t = [-3.0, 13.0, 27.0, -21.0];
        repair_bounds(Repair::Reflect, &mut t, &[0.0; 4], 0.0, 10.0, rng);
        assert_eq!(t, [3.0, 7.0, 7.0, 1.0]);
    }
}
