//! Closed-form `H` and `Q` of every family, generic over the scalar type.

use alloc::format;
use alloc::string::String;

use crate::elliptic::jacobi_lifted;
use crate::poly::{CubicPoly, QuarticPoly};
use crate::scalar::Scalar;

type Eval<T> = core::result::Result<T, String>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Variant {
    /// `q = 0` couplings `(χ0, β0)`.
    Q0 { chi0: f64, beta0: f64 },
    /// Conformal factor `ζ+`.
    Ppos { rho: f64, alpha: f64, beta: f64 },
    /// Conformal factor `ζ−`.
    Pneg { rho: f64, alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum System {
    Q0Zeta { f: CubicPoly, g: QuarticPoly, chi0: f64, beta0: f64 },
    Elliptic { k2: f64, variant: Variant },
    Hyperbolic { variant: Variant },
    P0Hyperbolic { rho: f64, alpha: f64, beta: f64 },
    P0Sphere { rho: f64, alpha: f64, beta: f64 },
    P0Plane { rho: f64, alpha: f64, beta: f64 },
    Zeta { eps: f64, f: CubicPoly, g: QuarticPoly, alpha: f64, beta: f64 },
    /// `f̂, ĥ` through `s = (ζ1 + ζ2)/ζ0` and `p = ζ1ζ2/ζ0²`.
    Trig { s: f64, p: f64, alpha: f64, beta: f64 },
    DullinMatveev { rho: f64, alpha: f64, beta: f64 },
    GoryachevChaplygin { alpha: f64, beta: f64 },
    Goryachev { alpha: f64, beta: f64 },
}

fn positive_sqrt<S: Scalar>(x: S, what: &str) -> Eval<S> {
    if x.value() > 0.0 {
        Ok(x.sqrt())
    } else {
        Err(format!("{what} = {} is not positive", x.value()))
    }
}

fn nonzero<S: Scalar>(x: S, what: &str) -> Eval<S> {
    if x.value() != 0.0 && x.value().is_finite() {
        Ok(x)
    } else {
        Err(format!("{what} vanishes"))
    }
}

/// `(L1, L2, L3)` with `t = tan θ`, or `(M1, M2, M3)` with `t = tanh u`.
pub(super) fn generators<S: Scalar>(t: S, phi: S, p1: S, p2: S) -> [S; 3] {
    let (s, c) = (phi.sin(), phi.cos());
    [s * p1 + c / t * p2, c * p1 - s / t * p2, p2]
}

/// `x = μ^{2/3}` as the square of the odd real cube root.
fn two_thirds<S: Scalar>(mu: S) -> Eval<(S, S)> {
    let cb = mu.cbrt();
    let x = nonzero(cb * cb, "cos^(2/3) theta")?;
    Ok((cb, x))
}

impl System {
    pub(crate) fn h<S: Scalar>(&self, z: [S; 4]) -> Eval<S> {
        let [x1, x2, p1, p2] = z;
        match *self {
            System::Q0Zeta { f, g, chi0, beta0 } => {
                let fz = f.eval(x1);
                let sq = positive_sqrt(fz, "F")?;
                Ok((fz * p1 * p1 + g.eval(x1) / (fz * 4.0) * p2 * p2) * 0.5 + sq * x2.cos() * chi0 - x1 * beta0)
            }
            System::Elliptic { k2, variant } => {
                let e = EllipticParts::new(x1, k2)?;
                let kin = (p1 * p1 + e.dd / (e.scd * e.scd) * p2 * p2) * 0.5;
                let pot = e.scd * k2 * x2.cos();
                Ok(match variant {
                    Variant::Q0 { chi0, beta0 } => kin + pot * chi0 - e.s2 * (beta0 * k2),
                    Variant::Ppos { rho, alpha, beta } => {
                        let zp = nonzero(e.s2 * k2 + rho, "zeta+")?;
                        (kin + pot * alpha + beta) / zp
                    }
                    Variant::Pneg { rho, alpha, beta } => {
                        let zm = nonzero((S::cst(rho) - e.s2) * k2, "zeta-")?;
                        (kin + pot * alpha + beta) / zm
                    }
                })
            }
            System::Hyperbolic { variant } => {
                let h = HyperbolicParts::new(x1, x2, p1, p2)?;
                let kin = h.m[0] * h.m[0] + h.m[1] * h.m[1] - (S::cst(1.0) - (h.c * h.c).recip() * 3.0) * h.m[2] * h.m[2];
                let pot = h.t * (S::cst(1.0) - h.t * h.t) * x2.cos();
                let t2 = h.t * h.t;
                Ok(match variant {
                    Variant::Q0 { chi0, beta0 } => kin * 0.5 + pot * chi0 - t2 * beta0,
                    Variant::Ppos { rho, alpha, beta } => {
                        let zp = nonzero(t2 + rho, "zeta+")?;
                        kin / (zp * 2.0) + pot * alpha / zp + S::cst(beta) / zp
                    }
                    Variant::Pneg { rho, alpha, beta } => {
                        let zm = nonzero(S::cst(rho) - t2, "zeta-")?;
                        kin / (zm * 2.0) + pot * alpha / zm + S::cst(beta) / zm
                    }
                })
            }
            System::P0Hyperbolic { rho, alpha, beta } => {
                let t = nonzero(x1.tanh(), "tanh u")?;
                let m = generators(t, x2, p1, p2);
                let w = nonzero(x1.cosh() + rho, "rho + cosh u")?;
                Ok((m[0] * m[0] + m[1] * m[1] - m[2] * m[2]) * 0.5 / w + (x1.sinh() * x2.cos() * alpha + beta) / w)
            }
            System::P0Sphere { rho, alpha, beta } => {
                let t = nonzero(x1.tan(), "tan theta")?;
                let l = generators(t, x2, p1, p2);
                let w = nonzero(x1.cos() * rho + 1.0, "1 + rho cos theta")?;
                Ok((l[0] * l[0] + l[1] * l[1] + l[2] * l[2]) * 0.5 / w
                    + (x1.sin() * x2.cos() * (alpha * rho) + beta) / w)
            }
            System::P0Plane { rho, alpha, beta } => {
                let w = (x1 * x1 + x2 * x2) * (rho * rho) + 1.0;
                Ok((p1 * p1 + p2 * p2) * 0.5 / w + (x1 * (2.0 * alpha * rho * rho) + beta) / w)
            }
            System::Zeta { f, g, alpha, beta, .. } => {
                let zeta = nonzero(x1, "zeta")?;
                let fz = f.eval(x1);
                let sq = positive_sqrt(fz, "F")?;
                Ok((fz * p1 * p1 + g.eval(x1) / (fz * 4.0) * p2 * p2) / (zeta * 2.0)
                    + sq / zeta * x2.cos() * alpha
                    + S::cst(beta) / zeta)
            }
            System::Trig { s, p, alpha, beta } => {
                let tr = TrigParts::new(x1, x2, p1, p2, s, p)?;
                let l = tr.l;
                let h_hat = -tr.mu * tr.mu + tr.x * tr.x * (4.0 / 3.0 * (1.0 + s)) - tr.x * (2.0 * (s + p)) + 4.0 * p;
                let a3 = (h_hat / (tr.f * 3.0) - tr.mu * tr.mu * tr.f) / (tr.sin * tr.sin);
                Ok(tr.f * (l[0] * l[0] + l[1] * l[1]) * 0.5
                    + a3 * l[2] * l[2] * 0.5
                    + tr.sin * tr.sqf / tr.x * x2.cos() * alpha
                    + S::cst(beta) / tr.x)
            }
            System::DullinMatveev { rho, alpha, beta } => {
                let mu = x1.cos();
                let sin = nonzero(x1.sin(), "sin theta")?;
                let u = mu + rho;
                let su = positive_sqrt(u, "rho + cos theta")?;
                let gm = (mu * mu * 3.0 + mu * (4.0 * rho) + 1.0) / (u * u * 4.0);
                Ok((p1 * p1 + ((sin * sin).recip() + gm) * p2 * p2) * 0.5 + sin / su * x2.cos() * alpha + S::cst(beta) / u)
            }
            System::GoryachevChaplygin { alpha, beta } => {
                let t = nonzero(x1.tan(), "tan theta")?;
                let l = generators(t, x2, p1, p2);
                let mu = x1.cos();
                let pot_beta = if beta == 0.0 { S::cst(0.0) } else { S::cst(beta) / nonzero(mu * mu, "cos theta")? };
                Ok((l[0] * l[0] + l[1] * l[1] + l[2] * l[2] * 4.0) * 0.5 + x1.sin() * x2.cos() * alpha + pot_beta)
            }
            System::Goryachev { alpha, beta } => {
                let t = nonzero(x1.tan(), "tan theta")?;
                let l = generators(t, x2, p1, p2);
                let (_, x) = two_thirds(x1.cos())?;
                Ok((l[0] * l[0] + l[1] * l[1] + l[2] * l[2] * (4.0 / 3.0)) * 0.5
                    + x1.sin() / x * x2.cos() * alpha
                    + S::cst(beta) / x)
            }
        }
    }

    /// `Q` split into its kinetic, `α` (or `χ0`) and `β` (or `β0`) groups.
    pub(crate) fn q_groups<S: Scalar>(&self, z: [S; 4]) -> Eval<[S; 3]> {
        let [x1, x2, p1, p2] = z;
        let zero = S::cst(0.0);
        match *self {
            System::Q0Zeta { f, chi0, beta0, .. } => {
                let sq = positive_sqrt(f.eval(x1), "F")?;
                let dsq = f.eval_derivative(x1) / (sq * 2.0);
                let qa = -(sq * x2.sin() * p1 + dsq * x2.cos() * p2) * (2.0 * chi0);
                Ok([p2 * p2 * p2, qa, p2 * (2.0 * beta0)])
            }
            System::Elliptic { k2, variant } => {
                let e = EllipticParts::new(x1, k2)?;
                let group = -(x2.sin() * p1 + e.dscd / e.scd * x2.cos() * p2);
                let cubic = p2 * p2 * p2 * 4.0;
                Ok(match variant {
                    Variant::Q0 { chi0, beta0 } => [cubic, group * chi0, p2 * (2.0 * beta0)],
                    Variant::Ppos { alpha, .. } => [cubic + self.h(z)? * p2 * 2.0, group * alpha, zero],
                    Variant::Pneg { alpha, .. } => [-cubic + self.h(z)? * p2 * 2.0, -group * alpha, zero],
                })
            }
            System::Hyperbolic { variant } => {
                let h = HyperbolicParts::new(x1, x2, p1, p2)?;
                let m3 = h.m[2];
                let group = -(h.m[0] - h.t * x2.cos() * m3 * 3.0);
                let cubic = m3 * m3 * m3 * 4.0;
                Ok(match variant {
                    Variant::Q0 { chi0, beta0 } => [cubic, group * chi0, m3 * (2.0 * beta0)],
                    Variant::Ppos { alpha, .. } => [cubic + self.h(z)? * m3 * 2.0, group * alpha, zero],
                    Variant::Pneg { alpha, .. } => [-cubic + self.h(z)? * m3 * 2.0, -group * alpha, zero],
                })
            }
            System::P0Hyperbolic { alpha, .. } => {
                let t = nonzero(x1.tanh(), "tanh u")?;
                let m = generators(t, x2, p1, p2);
                Ok([self.h(z)? * m[2], -m[0] * alpha, zero])
            }
            System::P0Sphere { alpha, .. } => {
                let t = nonzero(x1.tan(), "tan theta")?;
                let l = generators(t, x2, p1, p2);
                Ok([self.h(z)? * l[2], l[0] * alpha, zero])
            }
            System::P0Plane { alpha, .. } => {
                let lz = x1 * p2 - x2 * p1;
                Ok([self.h(z)? * lz, -p2 * alpha, zero])
            }
            System::Zeta { eps, f, alpha, .. } => {
                let sq = positive_sqrt(f.eval(x1), "F")?;
                let dsq = f.eval_derivative(x1) / (sq * 2.0);
                let qa = -(sq * x2.sin() * p1 + dsq * x2.cos() * p2) * (2.0 * alpha);
                Ok([p2 * p2 * p2 * eps + self.h(z)? * p2 * 2.0, qa, zero])
            }
            System::Trig { s, p, alpha, .. } => {
                let tr = TrigParts::new(x1, x2, p1, p2, s, p)?;
                let l = tr.l;
                let num = tr.x * tr.x - tr.x * s + p;
                let den = tr.x * tr.x + tr.x + 1.0;
                let df = ((tr.x * 2.0 - s) * den - num * (tr.x * 2.0 + 1.0)) / (den * den);
                let qa = tr.cb * tr.sqf * l[0] * (3.0 * alpha) - df * tr.sin / tr.sqf * x2.cos() * l[2] * alpha;
                Ok([-l[2] * l[2] * l[2] * (4.0 / 9.0) + self.h(z)? * l[2] * 2.0, qa, zero])
            }
            System::DullinMatveev { rho, alpha, .. } => {
                let mu = x1.cos();
                let sin = nonzero(x1.sin(), "sin theta")?;
                let su = positive_sqrt(mu + rho, "rho + cos theta")?;
                let qa = su * x2.sin() * p1 * (2.0 * alpha)
                    + (mu / sin * su - sin / (su * 2.0)) * x2.cos() * p2 * (2.0 * alpha);
                Ok([-p2 * p2 * p2 + self.h(z)? * p2 * 2.0, qa, zero])
            }
            System::GoryachevChaplygin { alpha, .. } => {
                let t = nonzero(x1.tan(), "tan theta")?;
                let l = generators(t, x2, p1, p2);
                let qa = (x1.cos() * l[0] - x1.sin() * x2.cos() * l[2] * 2.0) * alpha;
                Ok([-l[2] * l[2] * l[2] * 4.0 + self.h(z)? * l[2] * 2.0, qa, zero])
            }
            System::Goryachev { alpha, .. } => {
                let t = nonzero(x1.tan(), "tan theta")?;
                let l = generators(t, x2, p1, p2);
                let (cb, _) = two_thirds(x1.cos())?;
                Ok([-p2 * p2 * p2 * (4.0 / 9.0) + self.h(z)? * p2 * 2.0, cb * l[0] * (3.0 * alpha), zero])
            }
        }
    }
}

struct EllipticParts<S> {
    s2: S,
    scd: S,
    dd: S,
    dscd: S,
}

impl<S: Scalar> EllipticParts<S> {
    fn new(u: S, k2: f64) -> Eval<Self> {
        let [s, c, d] = jacobi_lifted(u, k2).map_err(|e| format!("{e}"))?;
        let scd = nonzero(s * c * d, "sn cn dn")?;
        let (s2, c2, d2) = (s * s, c * c, d * d);
        // (1 − k²s⁴)² − 4k²s⁴c²d² regrouped into non-negative terms.
        let n = 1.0 - k2;
        let s4 = s2 * s2;
        let dd = c2 * c2 * c2 * (S::cst(4.0) - c2 * 3.0)
            + c2 * c2 * s4 * (6.0 * n)
            + s4 * s2 * (c2 * 3.0 + 1.0) * (n * n);
        Ok(Self {
            s2,
            scd,
            dd,
            dscd: c2 * d2 - s2 * d2 - s2 * c2 * k2,
        })
    }
}

struct HyperbolicParts<S> {
    t: S,
    c: S,
    m: [S; 3],
}

impl<S: Scalar> HyperbolicParts<S> {
    fn new(u: S, phi: S, pu: S, pphi: S) -> Eval<Self> {
        let t = nonzero(u.tanh(), "tanh u")?;
        Ok(Self { t, c: u.cosh(), m: generators(t, phi, pu, pphi) })
    }
}

struct TrigParts<S> {
    mu: S,
    sin: S,
    cb: S,
    x: S,
    f: S,
    sqf: S,
    l: [S; 3],
}

impl<S: Scalar> TrigParts<S> {
    fn new(theta: S, phi: S, pth: S, pphi: S, s: f64, p: f64) -> Eval<Self> {
        let mu = theta.cos();
        let sin = nonzero(theta.sin(), "sin theta")?;
        let (cb, x) = two_thirds(mu)?;
        let f = (x * x - x * s + p) / (x * x + x + 1.0);
        let sqf = positive_sqrt(f, "f")?;
        let t = nonzero(theta.tan(), "tan theta")?;
        Ok(Self { mu, sin, cb, x, f, sqf, l: generators(t, phi, pth, pphi) })
    }
}
