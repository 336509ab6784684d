//! Scalar abstraction for the whole crate.
//!
//! Every numeric routine is generic over [`QScalar`]; `f64` is the intended
//! production type (concrete aliases live at the crate root), `f32` works
//! where storage matters more than the last digits.

use num_traits::{Float, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};

/// Floating-point scalar the calculus is generic over.
pub trait QScalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> QScalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Lift an `f64` literal into the working scalar type.
pub(crate) fn real<T: QScalar>(v: f64) -> T {
    T::from_f64(v).expect("literal must be representable in the scalar type")
}

pub(crate) fn usize_to_scalar<T: QScalar>(v: usize) -> T {
    T::from_usize(v).expect("usize must be representable in the scalar type")
}

pub(crate) fn to_f64<T: QScalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}
