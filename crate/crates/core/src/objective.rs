//! The evaluation handle passed to every engine.

use crate::error::{Error, Result};
use crate::population::{EvolutionState, Individual};
use crate::scalar::Scalar;

/// A box-constrained minimization problem as seen by an optimizer.
///
/// `evaluate` takes `&mut self` so implementations can own scratch buffers,
/// counters and observers; the harness wrapper uses this to notify the
/// recorders after each evaluation.
pub trait Objective<T: Scalar> {
    fn dim(&self) -> usize;

    fn bounds(&self) -> (T, T);

    fn evaluate(&mut self, x: &[T]) -> Result<T>;

    /// Called once per generation by engines that expose control parameters.
    fn report_generation(&mut self, _generation: u64, _params: &[(&'static str, f64)]) {}
}

impl<T: Scalar, O: Objective<T> + ?Sized> Objective<T> for &mut O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn bounds(&self) -> (T, T) {
        (**self).bounds()
    }

    fn evaluate(&mut self, x: &[T]) -> Result<T> {
        (**self).evaluate(x)
    }

    fn report_generation(&mut self, generation: u64, params: &[(&'static str, f64)]) {
        (**self).report_generation(generation, params)
    }
}

/// Closure-backed objective.
pub struct FnObjective<T, F> {
    dim: usize,
    lb: T,
    ub: T,
    f: F,
}

impl<T: Scalar, F: FnMut(&[T]) -> T> FnObjective<T, F> {
    pub fn new(dim: usize, lb: T, ub: T, f: F) -> Self {
        Self { dim, lb, ub, f }
    }
}

impl<T: Scalar, F: FnMut(&[T]) -> T> Objective<T> for FnObjective<T, F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn bounds(&self) -> (T, T) {
        (self.lb, self.ub)
    }

    fn evaluate(&mut self, x: &[T]) -> Result<T> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok((self.f)(x))
    }
}

/// Evaluates `ind`, stores its fitness and charges one evaluation to `state`.
pub(crate) fn evaluate_individual<T: Scalar>(
    ind: &mut Individual<T>,
    problem: &mut dyn Objective<T>,
    state: &mut EvolutionState,
) -> Result<()> {
    let f = problem.evaluate(&ind.genome)?;
    state.count_evaluation(1);
    if !f.is_finite() {
        return Err(Error::NonFinite {
            fes: state.current_fes,
            value: f.to_f64_lossless(),
        });
    }
    ind.fitness = f;
    ind.evaluated = true;
    Ok(())
}
