//! Forward-mode dual numbers over the four phase-space coordinates.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// A value together with its gradient with respect to `(x1, x2, p1, p2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualScalar {
    pub value: f64,
    pub derivative: [f64; 4],
}

impl DualScalar {
    pub const fn constant(value: f64) -> Self {
        Self { value, derivative: [0.0; 4] }
    }

    /// The `slot`-th coordinate variable: unit derivative in that slot.
    pub fn variable(value: f64, slot: usize) -> Self {
        let mut derivative = [0.0; 4];
        derivative[slot] = 1.0;
        Self { value, derivative }
    }

    /// Seeds all four phase-space coordinates.
    pub fn seed(z: [f64; 4]) -> [Self; 4] {
        [
            Self::variable(z[0], 0),
            Self::variable(z[1], 1),
            Self::variable(z[2], 2),
            Self::variable(z[3], 3),
        ]
    }

    #[inline]
    fn map_derivative(self, scale: f64) -> [f64; 4] {
        let d = self.derivative;
        [d[0] * scale, d[1] * scale, d[2] * scale, d[3] * scale]
    }
}

impl Scalar for DualScalar {
    #[inline]
    fn cst(v: f64) -> Self {
        Self::constant(v)
    }

    #[inline]
    fn value(&self) -> f64 {
        self.value
    }

    #[inline]
    fn chain(self, f: f64, df: f64) -> Self {
        Self { value: f, derivative: self.map_derivative(df) }
    }

    fn is_finite(&self) -> bool {
        self.value.is_finite() && self.derivative.iter().all(|d| d.is_finite())
    }
}

impl Add for DualScalar {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (self.derivative, rhs.derivative);
        Self {
            value: self.value + rhs.value,
            derivative: [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
        }
    }
}

impl Sub for DualScalar {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let (a, b) = (self.derivative, rhs.derivative);
        Self {
            value: self.value - rhs.value,
            derivative: [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]],
        }
    }
}

impl Mul for DualScalar {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.derivative, rhs.derivative);
        let (u, v) = (self.value, rhs.value);
        Self {
            value: u * v,
            derivative: [
                a[0] * v + u * b[0],
                a[1] * v + u * b[1],
                a[2] * v + u * b[2],
                a[3] * v + u * b[3],
            ],
        }
    }
}

impl Div for DualScalar {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let (a, b) = (self.derivative, rhs.derivative);
        let (u, v) = (self.value, rhs.value);
        let inv = 1.0 / v;
        let q = u / v;
        Self {
            value: q,
            derivative: [
                (a[0] - q * b[0]) * inv,
                (a[1] - q * b[1]) * inv,
                (a[2] - q * b[2]) * inv,
                (a[3] - q * b[3]) * inv,
            ],
        }
    }
}

impl Neg for DualScalar {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.chain(-self.value, -1.0)
    }
}

impl Add<f64> for DualScalar {
    type Output = Self;
    #[inline]
    fn add(self, rhs: f64) -> Self {
        Self { value: self.value + rhs, derivative: self.derivative }
    }
}

impl Sub<f64> for DualScalar {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: f64) -> Self {
        Self { value: self.value - rhs, derivative: self.derivative }
    }
}

impl Mul<f64> for DualScalar {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        Self { value: self.value * rhs, derivative: self.map_derivative(rhs) }
    }
}

impl Div<f64> for DualScalar {
    type Output = Self;
    #[inline]
    fn div(self, rhs: f64) -> Self {
        Self { value: self.value / rhs, derivative: self.derivative.map(|d| d / rhs) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn product_rule() {
        let [x, y, _, _] = DualScalar::seed([0.7, -1.3, 0.0, 0.0]);
        let f = x.sin() * y.square();
        assert!(close(f.derivative[0], 0.7f64.cos() * 1.69));
        assert!(close(f.derivative[1], 0.7f64.sin() * 2.0 * -1.3));
    }

    #[test]
    fn elementary_derivatives() {
        let x = DualScalar::variable(0.4, 0);
        let cases: [(DualScalar, f64); 6] = [
            (x.tan(), 1.0 / 0.4f64.cos().powi(2)),
            (x.sinh(), 0.4f64.cosh()),
            (x.cosh(), 0.4f64.sinh()),
            (x.tanh(), 1.0 / 0.4f64.cosh().powi(2)),
            (x.sqrt(), 0.5 / 0.4f64.sqrt()),
            (x.recip(), -1.0 / 0.16),
        ];
        for (d, expected) in cases {
            assert!(close(d.derivative[0], expected), "{d:?} vs {expected}");
        }
    }

    #[test]
    fn cbrt_is_odd() {
        let x = DualScalar::variable(-0.125, 0);
        let r = x.cbrt();
        assert!(close(r.value, -0.5));
        assert!(close(r.derivative[0], 1.0 / (3.0 * 0.25)));
    }

    #[test]
    fn quotient_matches_plain_value() {
        let [x, y, _, _] = DualScalar::seed([2.0, 3.0, 0.0, 0.0]);
        let q = x / y;
        assert_eq!(q.value, 2.0 / 3.0);
        assert!(close(q.derivative[0], 1.0 / 3.0));
        assert!(close(q.derivative[1], -2.0 / 9.0));
    }
}
