//! Base benchmark functions. All have their global minimum 0 at the origin
//! when evaluated through [`kernel`].

use std::fmt;
use std::str::FromStr;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Sphere,
    Elliptic,
    BentCigar,
    Discus,
    Rosenbrock,
    Rastrigin,
    Ackley,
    Griewank,
    Schwefel12,
    ExpandedSchafferF6,
}

impl BaseKind {
    pub const ALL: [BaseKind; 10] = [
        BaseKind::Sphere,
        BaseKind::Elliptic,
        BaseKind::BentCigar,
        BaseKind::Discus,
        BaseKind::Rosenbrock,
        BaseKind::Rastrigin,
        BaseKind::Ackley,
        BaseKind::Griewank,
        BaseKind::Schwefel12,
        BaseKind::ExpandedSchafferF6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseKind::Sphere => "sphere",
            BaseKind::Elliptic => "elliptic",
            BaseKind::BentCigar => "bent_cigar",
            BaseKind::Discus => "discus",
            BaseKind::Rosenbrock => "rosenbrock",
            BaseKind::Rastrigin => "rastrigin",
            BaseKind::Ackley => "ackley",
            BaseKind::Griewank => "griewank",
            BaseKind::Schwefel12 => "schwefel_12",
            BaseKind::ExpandedSchafferF6 => "expanded_schaffer_f6",
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaseKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BaseKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown base function `{s}`"))
    }
}

/// Textbook formula of `kind` at `z`.
pub fn evaluate_base<T: Scalar>(kind: BaseKind, z: &[T]) -> T {
    match kind {
        BaseKind::Rosenbrock => rosenbrock(z, T::zero()),
        _ => kernel(kind, z),
    }
}

/// Function value with the optimum moved to the origin.
///
/// Identical to [`evaluate_base`] except for Rosenbrock, which is evaluated at
/// `z + 1`.
#[inline]
pub fn kernel<T: Scalar>(kind: BaseKind, z: &[T]) -> T {
    match kind {
        BaseKind::Sphere => z.iter().map(|&v| v * v).sum(),
        BaseKind::Elliptic => elliptic(z),
        BaseKind::BentCigar => match z.split_first() {
            None => T::zero(),
            Some((&h, rest)) => h * h + T::lit(1e6) * rest.iter().map(|&v| v * v).sum::<T>(),
        },
        BaseKind::Discus => match z.split_first() {
            None => T::zero(),
            Some((&h, rest)) => T::lit(1e6) * h * h + rest.iter().map(|&v| v * v).sum::<T>(),
        },
        BaseKind::Rosenbrock => rosenbrock(z, T::one()),
        BaseKind::Rastrigin => rastrigin(z),
        BaseKind::Ackley => ackley(z),
        BaseKind::Griewank => griewank(z),
        BaseKind::Schwefel12 => {
            let mut prefix = T::zero();
            let mut total = T::zero();
            for &v in z {
                prefix += v;
                total += prefix * prefix;
            }
            total
        }
        BaseKind::ExpandedSchafferF6 => expanded_schaffer_f6(z),
    }
}

fn elliptic<T: Scalar>(z: &[T]) -> T {
    let d = z.len();
    if d <= 1 {
        return z.iter().map(|&v| v * v).sum();
    }
    let step = T::lit(6.0) / T::from_usize(d - 1).unwrap();
    let ten = T::lit(10.0);
    z.iter()
        .enumerate()
        .map(|(i, &v)| ten.powf(step * T::from_usize(i).unwrap()) * v * v)
        .sum()
}

/// Rosenbrock at `z + offset`.
fn rosenbrock<T: Scalar>(z: &[T], offset: T) -> T {
    let hundred = T::lit(100.0);
    let one = T::one();
    z.windows(2)
        .map(|w| {
            let (a, b) = (w[0] + offset, w[1] + offset);
            let t = a * a - b;
            hundred * t * t + (a - one) * (a - one)
        })
        .sum()
}

fn rastrigin<T: Scalar>(z: &[T]) -> T {
    let ten = T::lit(10.0);
    let tau = T::TAU();
    z.iter().map(|&v| v * v - ten * (tau * v).cos() + ten).sum()
}

fn ackley<T: Scalar>(z: &[T]) -> T {
    if z.is_empty() {
        return T::zero();
    }
    let n = T::from_usize(z.len()).unwrap();
    let tau = T::TAU();
    let (sq, cs) = z
        .iter()
        .fold((T::zero(), T::zero()), |(s, c), &v| (s + v * v, c + (tau * v).cos()));
    // Written as two non-negative terms so the optimum evaluates to exactly 0.
    let twenty = T::lit(20.0);
    twenty * (T::one() - (T::lit(-0.2) * (sq / n).sqrt()).exp()) + (T::E() - (cs / n).exp()).max(T::zero())
}

fn griewank<T: Scalar>(z: &[T]) -> T {
    let mut sum = T::zero();
    let mut prod = T::one();
    for (i, &v) in z.iter().enumerate() {
        sum += v * v;
        prod *= (v / T::from_usize(i + 1).unwrap().sqrt()).cos();
    }
    sum / T::lit(4000.0) - prod + T::one()
}

fn schaffer_pair<T: Scalar>(x: T, y: T) -> T {
    let s = x * x + y * y;
    let sin = s.sqrt().sin();
    let den = T::one() + T::lit(0.001) * s;
    let half = T::lit(0.5);
    half + (sin * sin - half) / (den * den)
}

fn expanded_schaffer_f6<T: Scalar>(z: &[T]) -> T {
    let d = z.len();
    (0..d).map(|i| schaffer_pair(z[i], z[(i + 1) % d])).sum()
}
