//! Jacobi elliptic functions and the complete elliptic integral of the first
//! kind, both through the descending Landen (arithmetic-geometric mean)
//! sequence.

use alloc::format;
use core::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Landen iteration stops once the transformed modulus drops below this.
const LANDEN_TOL: f64 = 1e-15;
const MAX_LANDEN_STEPS: usize = 40;

/// `(sn, cn, dn)` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Descending Landen sequence for parameter `m`: the `a_n` and `c_n`
/// coefficients, ending when `c_n / a_n < LANDEN_TOL`.
struct Landen {
    a: [f64; MAX_LANDEN_STEPS + 1],
    c: [f64; MAX_LANDEN_STEPS + 1],
    steps: usize,
}

impl Landen {
    fn new(m: f64) -> Self {
        let mut a = [0.0; MAX_LANDEN_STEPS + 1];
        let mut c = [0.0; MAX_LANDEN_STEPS + 1];
        a[0] = 1.0;
        c[0] = libm::sqrt(m);
        let mut b = libm::sqrt(1.0 - m);
        let mut n = 0;
        while n < MAX_LANDEN_STEPS && c[n] > LANDEN_TOL * a[n] {
            let (an, bn) = (a[n], b);
            a[n + 1] = 0.5 * (an + bn);
            // (a − b)/2 without the cancellation.
            c[n + 1] = c[n] * c[n] / (4.0 * a[n + 1]);
            b = libm::sqrt(an * bn);
            n += 1;
        }
        Self { a, c, steps: n }
    }

    /// `(sn, cn, dn)` of `u` by the backward amplitude recursion.
    fn eval(&self, u: f64, m: f64) -> (f64, f64, f64) {
        let n = self.steps;
        let mut phi = libm::ldexp(self.a[n] * u, n as i32);
        for j in (1..=n).rev() {
            let ratio = self.c[j] / self.a[j];
            phi = 0.5 * (phi + libm::asin(ratio * libm::sin(phi)));
        }
        let (sn, cn) = (libm::sin(phi), libm::cos(phi));
        // dn² = cn² + (1 − m) sn², a sum of non-negative terms.
        (sn, cn, libm::sqrt(cn * cn + (1.0 - m) * sn * sn))
    }

    fn quarter_period(&self) -> f64 {
        FRAC_PI_2 / self.a[self.steps]
    }
}

fn check_parameter(m: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("elliptic parameter m = {m} outside [0, 1]")));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind `K(m)`, `m = k²`.
pub fn complete_elliptic_k(m: f64) -> Result<f64> {
    if m.is_nan() || m < 0.0 {
        return Err(Error::Domain(format!("K(m) requires m >= 0, got {m}")));
    }
    if m >= 1.0 {
        return Err(Error::Domain(format!("K(m) diverges for m >= 1, got {m}")));
    }
    Ok(Landen::new(m).quarter_period())
}

/// Jacobi elliptic functions `sn, cn, dn` of argument `u` and parameter `m`.
pub fn jacobi(u: f64, m: f64) -> Result<JacobiTriple> {
    if !u.is_finite() {
        return Err(Error::Argument(format!("non-finite elliptic argument {u}")));
    }
    check_parameter(m)?;
    if m == 0.0 {
        return Ok(JacobiTriple { sn: libm::sin(u), cn: libm::cos(u), dn: 1.0 });
    }
    if m == 1.0 {
        let sech = 1.0 / libm::cosh(u);
        return Ok(JacobiTriple { sn: libm::tanh(u), cn: sech, dn: sech });
    }
    let landen = Landen::new(m);
    let k = landen.quarter_period();

    // Reduce to a ∈ [0, K] using sn(−u) = −sn u, sn(2K − u) = sn u and
    // cn(2K − u) = −cn u; sn and cn have period 4K.
    let period = 4.0 * k;
    let w = u - period * libm::round(u / period);
    let sign_s = if w < 0.0 { -1.0 } else { 1.0 };
    let mut a = w.abs();
    let mut sign_c = 1.0;
    if a > k {
        a = 2.0 * k - a;
        sign_c = -1.0;
    }
    if a > 0.5 * k {
        // Near K, cn and dn are small; compute them from v = K − a.
        let kp = libm::sqrt(1.0 - m);
        let (s, c, d) = landen.eval(k - a, m);
        return Ok(JacobiTriple { sn: sign_s * c / d, cn: sign_c * kp * s / d, dn: kp / d });
    }
    let (sn, cn, dn) = landen.eval(a, m);
    Ok(JacobiTriple { sn: sign_s * sn, cn: sign_c * cn, dn })
}

/// `(sn, cn, dn)` carried over a generic scalar, propagating
/// `sn' = cn·dn`, `cn' = −sn·dn`, `dn' = −m·sn·cn`.
pub fn jacobi_lifted<S: Scalar>(u: S, m: f64) -> Result<[S; 3]> {
    let JacobiTriple { sn, cn, dn } = jacobi(u.value(), m)?;
    Ok([u.chain(sn, cn * dn), u.chain(cn, -sn * dn), u.chain(dn, -m * sn * cn)])
}
