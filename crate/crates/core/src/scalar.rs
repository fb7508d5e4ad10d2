//! Floating-point scalar abstraction for the numerical parts of the crate
//! (spectral radii, closed-form moduli, probability bounds).

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real scalar used by the growth and bound computations: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// Lossy conversion of a literal into the scalar type.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite literal is representable")
}

#[inline]
pub(crate) fn from_usize<T: Real>(x: usize) -> T {
    T::from_usize(x).expect("usize is representable as a float")
}
