//! Scalar abstraction shared by the numerical modules.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use rustfft::FftNum;

/// Floating point type the solvers are generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + FftNum + Debug + Display + Default
{
    /// Relative tolerance used by series summation: the larger of `1e-15`
    /// and the machine epsilon of the type.
    fn series_tol() -> Self {
        Self::epsilon().max(lit(1e-15))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub(crate) fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("integer representable in scalar type")
}

#[inline]
pub(crate) fn real<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// `exp(i * theta)`.
#[inline]
pub(crate) fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Distance from `z` to the nearest non-positive integer, or `None` when the
/// nearest integer is positive.
pub(crate) fn dist_to_nonpositive_int<T: Real>(z: Complex<T>) -> Option<T> {
    let n = z.re.round();
    if n > T::zero() {
        return None;
    }
    Some((z - real(n)).norm())
}

/// True when `z` is within `tol` of `0, -1, -2, ...`.
pub(crate) fn near_nonpositive_int<T: Real>(z: Complex<T>, tol: T) -> bool {
    dist_to_nonpositive_int(z).is_some_and(|d| d <= tol)
}

/// Exactly a non-positive integer (no tolerance).
pub(crate) fn is_nonpositive_int<T: Real>(z: Complex<T>) -> Option<usize> {
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        (-z.re).to_usize()
    } else {
        None
    }
}
