//! Velocity-update rules.

use crate::rng::RandomSource;
use crate::scalar::Scalar;

/// `1 / (2 ln 2)`
pub const SPSO_INERTIA: f64 = 0.721_347_520_444_481_7;
/// `1/2 + ln 2`
pub const SPSO_ACCELERATION: f64 = 1.193_147_180_559_945_3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VelocityUpdate {
    /// `v' = w v + c1 r1 (p - x) + c2 r2 (l - x)`
    Standard { w: f64, c1: f64, c2: f64 },
    /// Hypersphere sampling around the centroid of `x`, `p*` and `l*`.
    Spherical { w: f64, c: f64 },
}

impl VelocityUpdate {
    pub fn standard() -> Self {
        VelocityUpdate::Standard {
            w: SPSO_INERTIA,
            c1: SPSO_ACCELERATION,
            c2: SPSO_ACCELERATION,
        }
    }

    pub fn spherical() -> Self {
        VelocityUpdate::Spherical {
            w: SPSO_INERTIA,
            c: SPSO_ACCELERATION,
        }
    }
}

/// Updates `v` in place and returns the moved position `x + v'`.
///
/// `same_particle` marks the case where the neighbourhood best is the
/// particle's own personal best; the spherical rule then centres the ball on
/// `(x + p*) / 2`.
pub fn velocity_update<T: Scalar, R: RandomSource + ?Sized>(
    update: &VelocityUpdate,
    x: &[T],
    v: &mut [T],
    p: &[T],
    l: &[T],
    same_particle: bool,
    rng: &mut R,
) -> Vec<T> {
    let d = x.len();
    match *update {
        VelocityUpdate::Standard { w, c1, c2 } => {
            let (w, c1, c2) = (T::lit(w), T::lit(c1), T::lit(c2));
            for j in 0..d {
                let r1 = T::lit(rng.uniform());
                let r2 = T::lit(rng.uniform());
                v[j] = w * v[j] + c1 * r1 * (p[j] - x[j]) + c2 * r2 * (l[j] - x[j]);
            }
        }
        VelocityUpdate::Spherical { w, c } => {
            let (w, c) = (T::lit(w), T::lit(c));
            let centre: Vec<T> = (0..d)
                .map(|j| {
                    let ps = x[j] + c * (p[j] - x[j]);
                    if same_particle {
                        (x[j] + ps) / T::lit(2.0)
                    } else {
                        let ls = x[j] + c * (l[j] - x[j]);
                        (x[j] + ps + ls) / T::lit(3.0)
                    }
                })
                .collect();
            let radius = distance(&centre, x);
            let y = sample_in_ball(&centre, radius, rng);
            for j in 0..d {
                v[j] = w * v[j] + (y[j] - x[j]);
            }
        }
    }
    x.iter().zip(v.iter()).map(|(&xj, &vj)| xj + vj).collect()
}

/// Uniform sample from the ball of `radius` around `centre`: a normalized
/// Gaussian direction scaled by `radius * U^(1/d)`.
pub fn sample_in_ball<T: Scalar, R: RandomSource + ?Sized>(
    centre: &[T],
    radius: T,
    rng: &mut R,
) -> Vec<T> {
    let d = centre.len();
    let dir: Vec<f64> = (0..d).map(|_| rng.standard_normal()).collect();
    let norm = dir.iter().map(|g| g * g).sum::<f64>().sqrt();
    let scale = rng.uniform().powf(1.0 / d as f64);
    if norm == 0.0 || radius == T::zero() {
        return centre.to_vec();
    }
    centre
        .iter()
        .zip(&dir)
        .map(|(&c, &g)| c + radius * T::lit(scale * g / norm))
        .collect()
}

pub(crate) fn distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<T>()
        .sqrt()
}
