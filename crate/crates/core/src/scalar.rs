//! Scalar abstractions.
//!
//! [`Scalar`] covers every field the crate computes in, including exact
//! rationals. [`Real`] adds the transcendental functions needed by the
//! field quadrature and the spectral expansions.

use std::fmt::Debug;
use std::ops::Neg;

use num_rational::Rational64;
use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// A commutative field element usable for exact or approximate bookkeeping.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Num + Neg<Output = Self> {
    /// Converts an exact rational into this scalar type.
    fn from_ratio(r: Rational64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(Rational64::from_integer(n))
    }

    fn half() -> Self {
        Self::from_ratio(Rational64::new(1, 2))
    }
}

/// Floating-point scalar for the numerical layers.
pub trait Real:
    Scalar + Float + FloatConst + FromPrimitive + Copy + Send + Sync + Default + 'static
{
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn from_ratio(r: Rational64) -> Self {
                (*r.numer() as $f) / (*r.denom() as $f)
            }
        }
        impl Real for $f {}
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for Rational64 {
    fn from_ratio(r: Rational64) -> Self {
        r
    }
}
