//! Scalar abstraction shared by plain `f64` evaluation and dual-number
//! differentiation.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// Numeric carrier for observable evaluation.
///
/// Every elementary function is expressed through [`Scalar::chain`], which
/// takes the value and slope of the function at `self.value()`; `f64`
/// ignores the slope and dual numbers propagate it.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(v: f64) -> Self;

    fn value(&self) -> f64;

    fn chain(self, f: f64, df: f64) -> Self;

    /// True when the value and every carried derivative are finite.
    fn is_finite(&self) -> bool;

    fn sin(self) -> Self {
        let v = self.value();
        self.chain(libm::sin(v), libm::cos(v))
    }

    fn cos(self) -> Self {
        let v = self.value();
        self.chain(libm::cos(v), -libm::sin(v))
    }

    fn tan(self) -> Self {
        let t = libm::tan(self.value());
        self.chain(t, 1.0 + t * t)
    }

    fn sinh(self) -> Self {
        let v = self.value();
        self.chain(libm::sinh(v), libm::cosh(v))
    }

    fn cosh(self) -> Self {
        let v = self.value();
        self.chain(libm::cosh(v), libm::sinh(v))
    }

    fn tanh(self) -> Self {
        let t = libm::tanh(self.value());
        self.chain(t, 1.0 - t * t)
    }

    fn sqrt(self) -> Self {
        let r = libm::sqrt(self.value());
        self.chain(r, 0.5 / r)
    }

    /// Real cube root, odd in its argument.
    fn cbrt(self) -> Self {
        let r = libm::cbrt(self.value());
        self.chain(r, 1.0 / (3.0 * r * r))
    }

    fn recip(self) -> Self {
        Self::cst(1.0) / self
    }

    fn square(self) -> Self {
        self * self
    }

    fn cube(self) -> Self {
        self * self * self
    }
}

impl Scalar for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }

    #[inline]
    fn value(&self) -> f64 {
        *self
    }

    #[inline]
    fn chain(self, f: f64, _df: f64) -> Self {
        f
    }

    #[inline]
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    #[inline]
    fn sin(self) -> Self {
        libm::sin(self)
    }

    #[inline]
    fn cos(self) -> Self {
        libm::cos(self)
    }

    #[inline]
    fn tan(self) -> Self {
        libm::tan(self)
    }

    #[inline]
    fn sinh(self) -> Self {
        libm::sinh(self)
    }

    #[inline]
    fn cosh(self) -> Self {
        libm::cosh(self)
    }

    #[inline]
    fn tanh(self) -> Self {
        libm::tanh(self)
    }

    #[inline]
    fn sqrt(self) -> Self {
        libm::sqrt(self)
    }

    #[inline]
    fn cbrt(self) -> Self {
        libm::cbrt(self)
    }
}
