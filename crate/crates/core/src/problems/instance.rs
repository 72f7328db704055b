//! Concrete benchmark instances and the scalar evaluation path.

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::problems::functions::{kernel, BaseKind};
use crate::problems::rotation::random_rotation;
use crate::rng::{derive_stream, mix64, RandomSource};
use crate::scalar::Scalar;

pub const DEFAULT_LB: f64 = -100.0;
pub const DEFAULT_UB: f64 = 100.0;
/// Shift vectors are drawn from `[SHIFT_FRACTION * lb, SHIFT_FRACTION * ub]`.
pub const SHIFT_FRACTION: f64 = 0.8;

/// Square matrix stored row-major; `None` data means identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation<T> {
    dim: usize,
    data: Option<Vec<T>>,
}

impl<T: Scalar> Rotation<T> {
    pub fn identity(dim: usize) -> Self {
        Self { dim, data: None }
    }

    pub fn from_rows(dim: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self {
            dim,
            data: Some(data),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_identity(&self) -> bool {
        self.data.is_none()
    }

    pub fn rows(&self) -> Option<&[T]> {
        self.data.as_deref()
    }
}

/// Hybrid function: permute the transformed vector, split it into chunks and
/// sum a different base function over each chunk.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridSpec {
    pub permutation: Vec<usize>,
    pub proportions: Vec<f64>,
    pub kinds: Vec<BaseKind>,
    sizes: Vec<usize>,
}

impl HybridSpec {
    pub fn new(permutation: Vec<usize>, proportions: Vec<f64>, kinds: Vec<BaseKind>) -> Result<Self> {
        let d = permutation.len();
        if proportions.len() != kinds.len() || kinds.is_empty() {
            return Err(Error::config("hybrid", "need one proportion per sub-function"));
        }
        let total: f64 = proportions.iter().sum();
        if (total - 1.0).abs() > 1e-9 || proportions.iter().any(|&p| p < 0.0) {
            return Err(Error::config("hybrid", format!("proportions must be non-negative and sum to 1, got {total}")));
        }
        let mut seen = vec![false; d];
        for &p in &permutation {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::config("hybrid", "permutation is not a permutation of 0..dim"));
            }
        }
        let sizes = chunk_sizes(&proportions, d);
        Ok(Self {
            permutation,
            proportions,
            kinds,
            sizes,
        })
    }

    pub fn chunk_sizes(&self) -> &[usize] {
        &self.sizes
    }
}

/// `ceil(p_k * d)` per chunk, capped by what is left; the last chunk takes the rest.
pub fn chunk_sizes(proportions: &[f64], d: usize) -> Vec<usize> {
    let mut sizes = Vec::with_capacity(proportions.len());
    let mut used = 0;
    for (k, &p) in proportions.iter().enumerate() {
        let size = if k + 1 == proportions.len() {
            d - used
        } else {
            ((p * d as f64).ceil() as usize).min(d - used)
        };
        used += size;
        sizes.push(size);
    }
    sizes
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component<T> {
    pub kind: BaseKind,
    pub shift: Vec<T>,
    pub rotation: Rotation<T>,
    pub sigma: f64,
    pub lambda: f64,
    pub bias: f64,
}

/// Distance-weighted mixture of shifted/rotated base functions.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionSpec<T> {
    pub components: Vec<Component<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec<T> {
    Base(BaseKind),
    Hybrid(HybridSpec),
    Composition(CompositionSpec<T>),
}

/// Per-task scratch space; reusing it keeps evaluation allocation-free.
#[derive(Clone, Debug, Default)]
pub struct EvalScratch<T> {
    pub(crate) diff: Vec<T>,
    pub(crate) z: Vec<T>,
    pub(crate) permuted: Vec<T>,
    pub(crate) values: Vec<T>,
}

impl<T: Scalar> EvalScratch<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            diff: vec![T::zero(); dim],
            z: vec![T::zero(); dim],
            permuted: vec![T::zero(); dim],
            values: Vec::new(),
        }
    }

    fn ensure(&mut self, dim: usize) {
        if self.diff.len() != dim {
            *self = Self::new(dim);
        }
    }
}

/// An immutable, shareable benchmark instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemInstance<T> {
    pub problem_id: u32,
    pub instance_id: u32,
    pub name: String,
    pub lb: T,
    pub ub: T,
    pub shift: Vec<T>,
    pub rotation: Rotation<T>,
    pub bias: T,
    pub spec: FunctionSpec<T>,
}

/// Instance-generation template: the function family minus its random parts.
#[derive(Clone, Debug, PartialEq)]
pub enum Template {
    Base(BaseKind),
    Hybrid {
        proportions: Vec<f64>,
        kinds: Vec<BaseKind>,
    },
    /// `(kind, sigma, lambda, bias)` per component; component 0 uses the
    /// instance shift and rotation and should carry bias 0.
    Composition(Vec<(BaseKind, f64, f64, f64)>),
}

/// Stream id for `(problem_id, instance_id, dim)`.
pub fn instance_stream_id(problem_id: u32, instance_id: u32, dim: usize) -> u64 {
    const DOMAIN: u64 = 0x5EED_0F12_57A2_CE01;
    mix64(mix64(mix64(DOMAIN ^ problem_id as u64) ^ instance_id as u64) ^ dim as u64)
}

fn to_t<T: Scalar>(v: Vec<f64>) -> Vec<T> {
    v.into_iter().map(T::lit).collect()
}

fn draw_shift<R: RandomSource + ?Sized>(dim: usize, lb: f64, ub: f64, rng: &mut R) -> Vec<f64> {
    (0..dim)
        .map(|_| rng.uniform_in(SHIFT_FRACTION * lb, SHIFT_FRACTION * ub))
        .collect()
}

impl<T: Scalar> ProblemInstance<T> {
    /// Seeded instance of `template`: shift, rotation and any hybrid or
    /// composition randomness come from one stream keyed by
    /// `(problem_id, instance_id, dim)`. Bias is `100 * problem_id`.
    pub fn generate(
        name: impl Into<String>,
        template: &Template,
        problem_id: u32,
        instance_id: u32,
        dim: usize,
        master_seed: u64,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::config("dim", "must be positive"));
        }
        let (lb, ub) = (DEFAULT_LB, DEFAULT_UB);
        let mut rng = derive_stream(master_seed, instance_stream_id(problem_id, instance_id, dim));
        let shift = draw_shift(dim, lb, ub, &mut rng);
        let rotation = random_rotation(dim, &mut rng);
        let spec = match template {
            Template::Base(kind) => FunctionSpec::Base(*kind),
            Template::Hybrid { proportions, kinds } => {
                let mut perm: Vec<usize> = (0..dim).collect();
                for i in (1..dim).rev() {
                    perm.swap(i, rng.index(i + 1));
                }
                FunctionSpec::Hybrid(HybridSpec::new(perm, proportions.clone(), kinds.clone())?)
            }
            Template::Composition(parts) => {
                let mut components = Vec::with_capacity(parts.len());
                for (k, &(kind, sigma, lambda, bias)) in parts.iter().enumerate() {
                    let (o, m) = if k == 0 {
                        (shift.clone(), rotation.clone())
                    } else {
                        (draw_shift(dim, lb, ub, &mut rng), random_rotation(dim, &mut rng))
                    };
                    components.push(Component {
                        kind,
                        shift: to_t(o),
                        rotation: Rotation::from_rows(dim, to_t(m))?,
                        sigma,
                        lambda,
                        bias,
                    });
                }
                FunctionSpec::Composition(CompositionSpec { components })
            }
        };
        Ok(Self {
            problem_id,
            instance_id,
            name: name.into(),
            lb: T::lit(lb),
            ub: T::lit(ub),
            shift: to_t(shift),
            rotation: Rotation::from_rows(dim, to_t(rotation))?,
            bias: T::lit(100.0 * problem_id as f64),
            spec,
        })
    }

    /// Assembles an instance from explicit parts (identity rotations, fixed shifts, ...).
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        problem_id: u32,
        instance_id: u32,
        name: impl Into<String>,
        bounds: (T, T),
        shift: Vec<T>,
        rotation: Rotation<T>,
        bias: T,
        spec: FunctionSpec<T>,
    ) -> Result<Self> {
        let dim = shift.len();
        if rotation.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: rotation.dim(),
            });
        }
        if let FunctionSpec::Hybrid(h) = &spec {
            if h.permutation.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: h.permutation.len(),
                });
            }
        }
        if !(bounds.0 < bounds.1) {
            return Err(Error::config("bounds", "lb must be below ub"));
        }
        Ok(Self {
            problem_id,
            instance_id,
            name: name.into(),
            lb: bounds.0,
            ub: bounds.1,
            shift,
            rotation,
            bias,
            spec,
        })
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    /// The same instance in another precision; equal to generating it there directly.
    pub fn cast<U: Scalar>(&self) -> ProblemInstance<U> {
        fn v<T: Scalar, U: Scalar>(x: &[T]) -> Vec<U> {
            x.iter().map(|&e| U::lit(e.to_f64_lossless())).collect()
        }
        fn rot<T: Scalar, U: Scalar>(r: &Rotation<T>) -> Rotation<U> {
            Rotation {
                dim: r.dim,
                data: r.data.as_deref().map(v),
            }
        }
        let spec = match &self.spec {
            FunctionSpec::Base(k) => FunctionSpec::Base(*k),
            FunctionSpec::Hybrid(h) => FunctionSpec::Hybrid(h.clone()),
            FunctionSpec::Composition(c) => FunctionSpec::Composition(CompositionSpec {
                components: c
                    .components
                    .iter()
                    .map(|comp| Component {
                        kind: comp.kind,
                        shift: v(&comp.shift),
                        rotation: rot(&comp.rotation),
                        sigma: comp.sigma,
                        lambda: comp.lambda,
                        bias: comp.bias,
                    })
                    .collect(),
            }),
        };
        ProblemInstance {
            problem_id: self.problem_id,
            instance_id: self.instance_id,
            name: self.name.clone(),
            lb: U::lit(self.lb.to_f64_lossless()),
            ub: U::lit(self.ub.to_f64_lossless()),
            shift: v(&self.shift),
            rotation: rot(&self.rotation),
            bias: U::lit(self.bias.to_f64_lossless()),
            spec,
        }
    }

    /// Optimal objective value `f*`.
    pub fn optimum_value(&self) -> T {
        self.bias
    }

    /// Scalar evaluation using caller-provided scratch space.
    pub fn evaluate_with(&self, x: &[T], scratch: &mut EvalScratch<T>) -> Result<T> {
        let dim = self.dim();
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: x.len(),
            });
        }
        scratch.ensure(dim);
        let raw = match &self.spec {
            FunctionSpec::Base(kind) => {
                transform_input(x, &self.shift, &self.rotation, &mut scratch.diff, &mut scratch.z);
                kernel(*kind, &scratch.z)
            }
            FunctionSpec::Hybrid(h) => {
                transform_input(x, &self.shift, &self.rotation, &mut scratch.diff, &mut scratch.z);
                evaluate_hybrid(h, &scratch.z, &mut scratch.permuted)
            }
            FunctionSpec::Composition(c) => evaluate_composition(c, x, scratch),
        };
        Ok(raw + self.bias)
    }

    /// Convenience scalar evaluation with temporary scratch.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        self.evaluate_with(x, &mut EvalScratch::new(self.dim()))
    }
}

/// `z = M (x - o)`; `diff` receives `x - o`.
#[inline]
pub fn transform_input<T: Scalar>(x: &[T], shift: &[T], rotation: &Rotation<T>, diff: &mut [T], z: &mut [T]) {
    for ((d, &xv), &ov) in diff.iter_mut().zip(x).zip(shift) {
        *d = xv - ov;
    }
    match rotation.rows() {
        None => z.copy_from_slice(diff),
        Some(m) => {
            let dim = x.len();
            for (zi, row) in z.iter_mut().zip(m.chunks_exact(dim)) {
                let mut acc = T::zero();
                for (&mk, &dk) in row.iter().zip(diff.iter()) {
                    acc += mk * dk;
                }
                *zi = acc;
            }
        }
    }
}

/// Sum of sub-function values over the permuted chunks of `z`.
pub fn evaluate_hybrid<T: Scalar>(spec: &HybridSpec, z: &[T], permuted: &mut [T]) -> T {
    for (dst, &src) in permuted.iter_mut().zip(&spec.permutation) {
        *dst = z[src];
    }
    let mut start = 0;
    let mut total = T::zero();
    for (&kind, &size) in spec.kinds.iter().zip(&spec.sizes) {
        total += kernel(kind, &permuted[start..start + size]);
        start += size;
    }
    total
}

/// Normalized component weights at squared distances `dist2`, written into `weights`.
///
/// Raw weights are `exp(-d^2 / (2 D sigma^2)) / d`, normalized in log space so
/// they never underflow to an all-zero vector. A component at distance zero
/// takes the whole weight.
pub fn composition_weights<T: Scalar>(dist2: &[T], sigmas: impl Iterator<Item = f64>, dim: usize, weights: &mut [T]) {
    if let Some(hit) = dist2.iter().position(|&d| d == T::zero()) {
        weights.iter_mut().for_each(|w| *w = T::zero());
        weights[hit] = T::one();
        return;
    }
    let two_d = T::lit(2.0 * dim as f64);
    let half = T::lit(0.5);
    for ((w, &d2), sigma) in weights.iter_mut().zip(dist2).zip(sigmas) {
        let s = T::lit(sigma);
        *w = -half * d2.ln() - d2 / (two_d * s * s);
    }
    let max = weights.iter().copied().fold(T::neg_infinity(), T::max);
    let mut total = T::zero();
    for w in weights.iter_mut() {
        *w = (*w - max).exp();
        total += *w;
    }
    for w in weights.iter_mut() {
        *w /= total;
    }
}

pub fn evaluate_composition<T: Scalar>(spec: &CompositionSpec<T>, x: &[T], scratch: &mut EvalScratch<T>) -> T {
    let k = spec.components.len();
    let dim = x.len();
    // values[0..k] = component values, values[k..2k] = squared distances, values[2k..3k] = weights
    scratch.values.clear();
    scratch.values.resize(3 * k, T::zero());
    for (c, comp) in spec.components.iter().enumerate() {
        transform_input(x, &comp.shift, &comp.rotation, &mut scratch.diff, &mut scratch.z);
        scratch.values[k + c] = scratch.diff.iter().map(|&d| d * d).sum();
        scratch.values[c] = T::lit(comp.lambda) * kernel(comp.kind, &scratch.z) + T::lit(comp.bias);
    }
    let (vals, rest) = scratch.values.split_at_mut(k);
    let (dist2, weights) = rest.split_at_mut(k);
    composition_weights(dist2, spec.components.iter().map(|c| c.sigma), dim, weights);
    vals.iter().zip(weights.iter()).map(|(&v, &w)| v * w).sum()
}

/// [`ProblemInstance`] bound to its own scratch space, usable as an [`Objective`].
pub struct InstanceObjective<'a, T> {
    instance: &'a ProblemInstance<T>,
    scratch: EvalScratch<T>,
}

impl<'a, T: Scalar> InstanceObjective<'a, T> {
    pub fn new(instance: &'a ProblemInstance<T>) -> Self {
        Self {
            instance,
            scratch: EvalScratch::new(instance.dim()),
        }
    }

    pub fn instance(&self) -> &'a ProblemInstance<T> {
        self.instance
    }
}

impl<T: Scalar> Objective<T> for InstanceObjective<'_, T> {
    fn dim(&self) -> usize {
        self.instance.dim()
    }

    fn bounds(&self) -> (T, T) {
        (self.instance.lb, self.instance.ub)
    }

    fn evaluate(&mut self, x: &[T]) -> Result<T> {
        self.instance.evaluate_with(x, &mut self.scratch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_instance(spec: FunctionSpec<f64>, dim: usize, bias: f64) -> ProblemInstance<f64> {
        ProblemInstance::from_parts(
            0,
            1,
            "test",
            (-100.0, 100.0),
            vec![0.0; dim],
            Rotation::identity(dim),
            bias,
            spec,
        )
        .unwrap()
    }

    #[test]
    fn transform_examples() {
        let (mut diff, mut z) = (vec![0.0; 2], vec![0.0; 2]);
        let o = [3.0, -1.0];
        transform_input(&o, &o, &Rotation::identity(2), &mut diff, &mut z);
        assert_eq!(z, vec![0.0, 0.0]);
        transform_input(&[4.0, 1.0], &o, &Rotation::identity(2), &mut diff, &mut z);
        assert_eq!(z, vec![1.0, 2.0]);
        let quarter_turn = Rotation::from_rows(2, vec![0.0, -1.0, 1.0, 0.0]).unwrap();
        transform_input(&[1.0, 0.0], &[0.0, 0.0], &quarter_turn, &mut diff, &mut z);
        assert_eq!(z, vec![0.0, 1.0]);
    }

    #[test]
    fn identity_sphere_with_bias() {
        let p = identity_instance(FunctionSpec::Base(BaseKind::Sphere), 3, 100.0);
        assert_eq!(p.evaluate(&[1.0, 2.0, 3.0]).unwrap(), 114.0);
        assert_eq!(p.evaluate(&[1.0, 2.0, 3.0]).unwrap(), p.evaluate(&[1.0, 2.0, 3.0]).unwrap());
        assert!(matches!(
            p.evaluate(&[1.0]),
            Err(Error::DimensionMismatch { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn hybrid_examples() {
        let spec = HybridSpec::new(vec![0, 1, 2, 3], vec![0.5, 0.5], vec![BaseKind::Sphere, BaseKind::Rastrigin]).unwrap();
        let mut buf = vec![0.0; 4];
        assert_eq!(evaluate_hybrid(&spec, &[1.0, 1.0, 0.0, 0.0], &mut buf), 2.0);
        assert_eq!(evaluate_hybrid(&spec, &[0.0; 4], &mut buf), 0.0);

        let two_spheres = HybridSpec::new(vec![3, 1, 0, 2], vec![0.3, 0.7], vec![BaseKind::Sphere; 2]).unwrap();
        let z = [1.5, -2.0, 0.25, 3.0];
        let plain: f64 = z.iter().map(|v| v * v).sum();
        assert!((evaluate_hybrid(&two_spheres, &z, &mut buf) - plain).abs() < 1e-12);
    }

    #[test]
    fn chunk_sizes_cover_every_dimension() {
        assert_eq!(chunk_sizes(&[0.3, 0.3, 0.4], 10), vec![3, 3, 4]);
        assert_eq!(chunk_sizes(&[0.2, 0.2, 0.3, 0.3], 10), vec![2, 2, 3, 3]);
        assert_eq!(chunk_sizes(&[0.2, 0.2, 0.3, 0.3], 2), vec![1, 1, 0, 0]);
        assert_eq!(chunk_sizes(&[0.3, 0.3, 0.4], 1000), vec![300, 300, 400]);
        for d in 1..50 {
            assert_eq!(chunk_sizes(&[0.1, 0.2, 0.3, 0.4], d).iter().sum::<usize>(), d);
        }
    }

    #[test]
    fn hybrid_rejects_bad_specs() {
        assert!(HybridSpec::new(vec![0, 0], vec![1.0], vec![BaseKind::Sphere]).is_err());
        assert!(HybridSpec::new(vec![0, 1], vec![0.5, 0.6], vec![BaseKind::Sphere; 2]).is_err());
        assert!(HybridSpec::new(vec![0, 1], vec![1.0], vec![]).is_err());
    }

    fn component(kind: BaseKind, shift: Vec<f64>, sigma: f64, lambda: f64, bias: f64) -> Component<f64> {
        let dim = shift.len();
        Component {
            kind,
            shift,
            rotation: Rotation::identity(dim),
            sigma,
            lambda,
            bias,
        }
    }

    #[test]
    fn composition_at_component_optimum() {
        let spec = CompositionSpec {
            components: vec![
                component(BaseKind::Rastrigin, vec![1.0, 1.0], 10.0, 2.0, 0.0),
                component(BaseKind::Sphere, vec![-5.0, 3.0], 20.0, 1.0, 100.0),
            ],
        };
        let mut s = EvalScratch::new(2);
        assert_eq!(evaluate_composition(&spec, &[1.0, 1.0], &mut s), 0.0);
        assert_eq!(evaluate_composition(&spec, &[-5.0, 3.0], &mut s), 100.0);
    }

    #[test]
    fn single_component_reduces_to_base() {
        let spec = CompositionSpec {
            components: vec![component(BaseKind::Sphere, vec![1.0, -1.0], 10.0, 1.0, 7.0)],
        };
        let mut s = EvalScratch::new(2);
        for x in [[0.0, 0.0], [40.0, -3.0], [1e3, 1e3]] {
            let expected = (x[0] - 1.0f64).powi(2) + (x[1] + 1.0f64).powi(2) + 7.0;
            assert!((evaluate_composition(&spec, &x, &mut s) - expected).abs() < 1e-9 * expected.max(1.0));
        }
    }

    #[test]
    fn identical_components_average() {
        let spec = CompositionSpec {
            components: vec![
                component(BaseKind::Sphere, vec![0.0, 0.0], 10.0, 1.0, 0.0),
                component(BaseKind::Sphere, vec![0.0, 0.0], 10.0, 1.0, 100.0),
            ],
        };
        let mut w = [0.0; 2];
        composition_weights(&[8.0, 8.0], [10.0, 10.0].into_iter(), 2, &mut w);
        assert_eq!(w, [0.5, 0.5]);
        let mut s = EvalScratch::new(2);
        let v = evaluate_composition(&spec, &[2.0, 2.0], &mut s);
        assert!((v - 58.0).abs() < 1e-12);
    }

    #[test]
    fn far_points_still_have_normalized_weights() {
        let mut w = [0.0; 3];
        composition_weights(&[1e8, 4e8, 9e8], [10.0, 20.0, 30.0].into_iter(), 10, &mut w);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(w.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn generated_instance_is_deterministic() {
        let t = Template::Base(BaseKind::Rastrigin);
        let a = ProblemInstance::<f64>::generate("r", &t, 4, 1, 10, 42).unwrap();
        let b = ProblemInstance::<f64>::generate("r", &t, 4, 1, 10, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cast::<f32>(), ProblemInstance::<f32>::generate("r", &t, 4, 1, 10, 42).unwrap());
        assert_eq!(a.evaluate(&a.shift.clone()).unwrap(), 400.0);
        assert!(a
            .shift
            .iter()
            .all(|&o| (SHIFT_FRACTION * DEFAULT_LB..=SHIFT_FRACTION * DEFAULT_UB).contains(&o)));
    }
}
