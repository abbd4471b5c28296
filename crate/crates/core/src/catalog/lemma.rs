//! Residuals of the six determining relations on ζ-chart models.

use alloc::format;
use alloc::vec::Vec;

use super::system::System;
use super::Model;
use crate::dual::DualScalar;
use crate::error::{Error, Result};
use crate::poly::CubicPoly;
use crate::scalar::Scalar;

/// Largest absolute residual of each relation over the grid.
pub type LemmaResiduals = [f64; 6];

/// One coefficient function with its ζ-derivative.
#[derive(Clone, Copy)]
struct Fn1 {
    v: f64,
    d: f64,
}

impl From<DualScalar> for Fn1 {
    fn from(x: DualScalar) -> Self {
        Self { v: x.value, d: x.derivative[0] }
    }
}

enum Reconstruction {
    /// `q = 0`: `χ = 2χ0`, `f = χ0√F`, `g = −β0 ζ`.
    Flat { f: CubicPoly, chi0: f64, beta0: f64 },
    /// `q = 1`: `χ = 2α√ζ`, `f = α√F/ζ`, `g = β/ζ`.
    Curved { eps: f64, f: CubicPoly, alpha: f64, beta: f64 },
}

fn reconstruction(model: &Model) -> Result<Reconstruction> {
    match *model.system {
        System::Q0Zeta { f, chi0, beta0, .. } => Ok(Reconstruction::Flat { f, chi0, beta0 }),
        System::Zeta { eps, f, alpha, beta, .. } => Ok(Reconstruction::Curved { eps, f, alpha, beta }),
        _ => Err(Error::Argument(format!(
            "{} has no ζ-chart cubic; the determining relations need one",
            model.family()
        ))),
    }
}

/// Evenly spaced interior points of the model's ζ interval.
pub fn lemma_grid(model: &Model, n: usize) -> Vec<f64> {
    let w = model.domain().window_x1;
    let (lo, hi) = (w.lo.max(model.domain().x1.lo), w.hi.min(model.domain().x1.hi));
    (0..n).map(|i| lo + (i as f64 + 0.5) / n as f64 * (hi - lo)).collect()
}

/// Residuals of the determining relations at the given ζ values.
pub fn residual_lemma1(model: &Model, zetas: &[f64]) -> Result<LemmaResiduals> {
    residual_lemma1_perturbed(model, zetas, 0.0)
}

/// As [`residual_lemma1`], with `γ` shifted by `gamma_offset`.
pub fn residual_lemma1_perturbed(model: &Model, zetas: &[f64], gamma_offset: f64) -> Result<LemmaResiduals> {
    let rec = reconstruction(model)?;
    let mut worst = [0.0f64; 6];
    for &zeta in zetas {
        let r = relations(&rec, zeta, gamma_offset)?;
        for (w, x) in worst.iter_mut().zip(r) {
            *w = w.max(x.abs());
        }
    }
    Ok(worst)
}

fn relations(rec: &Reconstruction, zeta: f64, gamma_offset: f64) -> Result<[f64; 6]> {
    let z = DualScalar::variable(zeta, 0);
    let (p, q, a, f, g, chi, beta, gamma, dzeta);
    match *rec {
        Reconstruction::Flat { f: poly, chi0, beta0 } => {
            let fz = poly.eval(zeta);
            if !(fz > 0.0) {
                return Err(Error::Domain(format!("F({zeta}) = {fz} is not positive")));
            }
            let fd = poly.eval(z);
            let sq = fd.sqrt();
            let dsq = poly.eval_derivative(z) / (sq * 2.0);
            let gd = crate::poly::companion_g(&poly).eval(z);
            (p, q) = (1.0, 0.0);
            a = Fn1::from(gd / (fd * 4.0));
            f = Fn1::from(sq * chi0);
            g = Fn1::from(z * -beta0);
            chi = Fn1 { v: 2.0 * chi0, d: 0.0 };
            beta = Fn1 { v: 2.0 * beta0, d: 0.0 };
            gamma = Fn1::from(dsq * (-2.0 * chi0));
            dzeta = -libm::sqrt(fz);
        }
        Reconstruction::Curved { eps, f: poly, alpha, beta: b } => {
            let fz = poly.eval(zeta);
            if !(zeta * fz > 0.0) || !(zeta > 0.0) {
                return Err(Error::Domain(format!("ζF = {} is not positive at ζ = {zeta}", zeta * fz)));
            }
            let fd = poly.eval(z);
            let sq = fd.sqrt();
            let dsq = poly.eval_derivative(z) / (sq * 2.0);
            let gd = crate::poly::companion_g(&poly).eval(z);
            (p, q) = (eps, 1.0);
            a = Fn1::from(gd / (fd * z * 4.0));
            f = Fn1::from(sq / z * alpha);
            g = Fn1::from(z.recip() * b);
            chi = Fn1::from(z.sqrt() * (2.0 * alpha));
            beta = Fn1::from(z.recip() * (2.0 * b));
            gamma = Fn1::from((sq / z - dsq) * (2.0 * alpha));
            dzeta = -libm::sqrt(fz / zeta);
        }
    }
    let gamma = Fn1 { v: gamma.v + gamma_offset, d: gamma.d };
    let d = |x: Fn1| x.d * dzeta;
    Ok([
        chi.v * d(f) - gamma.v * f.v,
        chi.v * d(g) - beta.v * f.v,
        d(chi) + q * f.v,
        d(beta) - 2.0 * q * d(g),
        d(gamma) + chi.v * a.v - 2.0 * q * d(f),
        a.v * gamma.v + chi.v * d(a) / 2.0 - 3.0 * (p + q * a.v) * f.v,
    ])
}
