//! Floating-point abstraction shared by every engine and benchmark function.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar used for genomes, fitness values and problem data.
///
/// Implemented for `f32` and `f64`. Control parameters of the algorithms
/// (F, CR, inertia, ...) are kept in `f64` regardless of the scalar width and
/// converted at the point of use.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Short name used in reports (`f32` / `f64`).
    const NAME: &'static str;

    /// Converts an `f64` constant into this scalar (rounding for `f32`).
    fn lit(x: f64) -> Self;

    fn to_f64_lossless(self) -> f64;
}

impl Scalar for f32 {
    const NAME: &'static str = "f32";

    #[inline(always)]
    fn lit(x: f64) -> Self {
        x as f32
    }

    #[inline(always)]
    fn to_f64_lossless(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    const NAME: &'static str = "f64";

    #[inline(always)]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline(always)]
    fn to_f64_lossless(self) -> f64 {
        self
    }
}
