//! Batched evaluation.
//!
//! Points are processed in blocks of [`BLOCK`]. Each block is stored
//! transposed (`dt[k * BLOCK + b]`) so the rotation product becomes an axpy
//! over the block lane, which the compiler turns into vector instructions.
//! The summation order over `k` is the same as in the scalar path, so results
//! are bitwise equal to [`ProblemInstance::evaluate`].

use crate::error::{Error, Result};
use crate::problems::functions::kernel;
use crate::problems::instance::{composition_weights, evaluate_hybrid, FunctionSpec, ProblemInstance, Rotation};
use crate::scalar::Scalar;

pub const BLOCK: usize = 64;

/// Reusable buffers for [`BatchEvaluator`].
#[derive(Clone, Debug, Default)]
pub struct BatchScratch<T> {
    dt: Vec<T>,
    zt: Vec<T>,
    column: Vec<T>,
    permuted: Vec<T>,
    dist2: Vec<T>,
    values: Vec<T>,
    weights: Vec<T>,
}

/// Batched evaluation of one instance with owned scratch space.
pub struct BatchEvaluator<'a, T> {
    instance: &'a ProblemInstance<T>,
    scratch: BatchScratch<T>,
}

impl<'a, T: Scalar> BatchEvaluator<'a, T> {
    pub fn new(instance: &'a ProblemInstance<T>) -> Self {
        let dim = instance.dim();
        Self {
            instance,
            scratch: BatchScratch {
                dt: vec![T::zero(); dim * BLOCK],
                zt: vec![T::zero(); dim * BLOCK],
                column: vec![T::zero(); dim],
                permuted: vec![T::zero(); dim],
                dist2: Vec::new(),
                values: Vec::new(),
                weights: Vec::new(),
            },
        }
    }

    /// Evaluates every point of `xs` into `out` (cleared first).
    pub fn evaluate_into<X: AsRef<[T]>>(&mut self, xs: &[X], out: &mut Vec<T>) -> Result<()> {
        let dim = self.instance.dim();
        if let Some(bad) = xs.iter().find(|x| x.as_ref().len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.as_ref().len(),
            });
        }
        out.clear();
        out.reserve(xs.len());
        for block in xs.chunks(BLOCK) {
            self.evaluate_block(block, out);
        }
        Ok(())
    }

    pub fn evaluate<X: AsRef<[T]>>(&mut self, xs: &[X]) -> Result<Vec<T>> {
        let mut out = Vec::with_capacity(xs.len());
        self.evaluate_into(xs, &mut out)?;
        Ok(out)
    }

    fn evaluate_block<X: AsRef<[T]>>(&mut self, block: &[X], out: &mut Vec<T>) {
        let inst = self.instance;
        let s = &mut self.scratch;
        let n = block.len();
        match &inst.spec {
            FunctionSpec::Base(kind) => {
                load_transposed(block, &inst.shift, &mut s.dt);
                rotate_block(&inst.rotation, &s.dt, &mut s.zt);
                for b in 0..n {
                    gather(&s.zt, b, &mut s.column);
                    out.push(kernel(*kind, &s.column) + inst.bias);
                }
            }
            FunctionSpec::Hybrid(h) => {
                load_transposed(block, &inst.shift, &mut s.dt);
                rotate_block(&inst.rotation, &s.dt, &mut s.zt);
                for b in 0..n {
                    gather(&s.zt, b, &mut s.column);
                    out.push(evaluate_hybrid(h, &s.column, &mut s.permuted) + inst.bias);
                }
            }
            FunctionSpec::Composition(c) => {
                let k = c.components.len();
                s.values.clear();
                s.values.resize(k * BLOCK, T::zero());
                s.dist2.clear();
                s.dist2.resize(k * BLOCK, T::zero());
                for (ci, comp) in c.components.iter().enumerate() {
                    load_transposed(block, &comp.shift, &mut s.dt);
                    for b in 0..n {
                        gather(&s.dt, b, &mut s.column);
                        s.dist2[b * k + ci] = s.column.iter().map(|&d| d * d).sum();
                    }
                    rotate_block(&comp.rotation, &s.dt, &mut s.zt);
                    let (lambda, bias) = (T::lit(comp.lambda), T::lit(comp.bias));
                    for b in 0..n {
                        gather(&s.zt, b, &mut s.column);
                        s.values[b * k + ci] = lambda * kernel(comp.kind, &s.column) + bias;
                    }
                }
                s.weights.resize(k, T::zero());
                let dim = inst.dim();
                for b in 0..n {
                    let d2 = &s.dist2[b * k..(b + 1) * k];
                    composition_weights(d2, c.components.iter().map(|c| c.sigma), dim, &mut s.weights);
                    let v: T = s.values[b * k..(b + 1) * k]
                        .iter()
                        .zip(&s.weights)
                        .map(|(&v, &w)| v * w)
                        .sum();
                    out.push(v + inst.bias);
                }
            }
        }
    }
}

/// `dt[k * BLOCK + b] = x_b[k] - shift[k]`; unused lanes are zeroed.
fn load_transposed<T: Scalar, X: AsRef<[T]>>(block: &[X], shift: &[T], dt: &mut [T]) {
    for (k, &o) in shift.iter().enumerate() {
        let lane = &mut dt[k * BLOCK..(k + 1) * BLOCK];
        for (b, slot) in lane.iter_mut().enumerate() {
            *slot = match block.get(b) {
                Some(x) => x.as_ref()[k] - o,
                None => T::zero(),
            };
        }
    }
}

fn rotate_block<T: Scalar>(rotation: &Rotation<T>, dt: &[T], zt: &mut [T]) {
    let Some(m) = rotation.rows() else {
        zt.copy_from_slice(dt);
        return;
    };
    let dim = rotation.dim();
    for (row, zlane) in m.chunks_exact(dim).zip(zt.chunks_exact_mut(BLOCK)) {
        let mut acc = [T::zero(); BLOCK];
        for (&mk, dlane) in row.iter().zip(dt.chunks_exact(BLOCK)) {
            for (a, &d) in acc.iter_mut().zip(dlane) {
                *a += mk * d;
            }
        }
        zlane.copy_from_slice(&acc);
    }
}

fn gather<T: Scalar>(t: &[T], b: usize, column: &mut [T]) {
    for (k, c) in column.iter_mut().enumerate() {
        *c = t[k * BLOCK + b];
    }
}

/// One-shot batched evaluation; see [`BatchEvaluator`] to reuse buffers.
pub fn batched_evaluate<T: Scalar, X: AsRef<[T]>>(instance: &ProblemInstance<T>, xs: &[X]) -> Result<Vec<T>> {
    BatchEvaluator::new(instance).evaluate(xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::functions::BaseKind;
    use crate::problems::instance::Template;
    use crate::rng::{RandomSource, RngStream};

    fn points(n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = RngStream::new(seed, 0);
        (0..n)
            .map(|_| (0..dim).map(|_| rng.uniform_in(-100.0, 100.0)).collect())
            .collect()
    }

    #[test]
    fn empty_batch() {
        let p = ProblemInstance::<f64>::generate("s", &Template::Base(BaseKind::Sphere), 1, 1, 10, 1).unwrap();
        assert!(batched_evaluate::<f64, Vec<f64>>(&p, &[]).unwrap().is_empty());
    }

    #[test]
    fn matches_scalar_bitwise() {
        let templates = [
            Template::Base(BaseKind::Sphere),
            Template::Base(BaseKind::Ackley),
            Template::Hybrid {
                proportions: vec![0.3, 0.7],
                kinds: vec![BaseKind::Rastrigin, BaseKind::Elliptic],
            },
            Template::Composition(vec![
                (BaseKind::Rastrigin, 10.0, 1.0, 0.0),
                (BaseKind::Griewank, 20.0, 1.0, 100.0),
            ]),
        ];
        for t in &templates {
            let p = ProblemInstance::<f64>::generate("t", t, 3, 1, 10, 9).unwrap();
            let xs = points(130, 10, 3);
            let batched = batched_evaluate(&p, &xs).unwrap();
            for (x, v) in xs.iter().zip(&batched) {
                assert_eq!(p.evaluate(x).unwrap(), *v);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let p = ProblemInstance::<f64>::generate("s", &Template::Base(BaseKind::Sphere), 1, 1, 10, 1).unwrap();
        assert!(matches!(
            batched_evaluate(&p, &[vec![0.0; 3]]),
            Err(Error::DimensionMismatch { expected: 10, got: 3 })
        ));
    }
}
