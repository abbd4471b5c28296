//! Canonical Poisson brackets on the four-dimensional phase space.

use crate::error::{Error, Result};
use crate::observable::Observable;
use crate::phase::PhaseState;

fn check(f: &Observable, g: &Observable, s: &PhaseState) -> Result<()> {
    for o in [f, g] {
        if o.chart() != s.chart {
            return Err(Error::ChartMismatch { expected: o.chart(), found: s.chart });
        }
    }
    Ok(())
}

fn combine(df: [f64; 4], dg: [f64; 4]) -> f64 {
    (df[0] * dg[2] - df[2] * dg[0]) + (df[1] * dg[3] - df[3] * dg[1])
}

/// `{f, g} = Σ ∂f/∂xⁱ ∂g/∂pᵢ − ∂f/∂pᵢ ∂g/∂xⁱ` from dual-number gradients.
pub fn poisson_bracket(f: &Observable, g: &Observable, s: &PhaseState) -> Result<f64> {
    check(f, g, s)?;
    Ok(combine(f.gradient(s)?, g.gradient(s)?))
}

fn central_gradient(f: &Observable, s: &PhaseState, h: f64) -> Result<[f64; 4]> {
    let z = s.to_array();
    let mut grad = [0.0; 4];
    for (i, g) in grad.iter_mut().enumerate() {
        let (mut up, mut down) = (z, z);
        up[i] += h;
        down[i] -= h;
        *g = (f.eval_raw(up)? - f.eval_raw(down)?) / (2.0 * h);
    }
    Ok(grad)
}

/// The same bracket with central differences of step `h`.
pub fn poisson_bracket_oracle(f: &Observable, g: &Observable, s: &PhaseState, h: f64) -> Result<f64> {
    check(f, g, s)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Argument(alloc::format!("finite-difference step must be positive, got {h}")));
    }
    Ok(combine(central_gradient(f, s, h)?, central_gradient(g, s, h)?))
}

fn norm(v: [f64; 4]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

/// `|{f, g}| / (1 + ‖∇f‖ ‖∇g‖)`, the magnitude compared against tolerances.
pub fn scaled_bracket(f: &Observable, g: &Observable, s: &PhaseState) -> Result<f64> {
    check(f, g, s)?;
    let (df, dg) = (f.gradient(s)?, g.gradient(s)?);
    Ok(combine(df, dg).abs() / (1.0 + norm(df) * norm(dg)))
}

/// `(∂H/∂p1, ∂H/∂p2, −∂H/∂x1, −∂H/∂x2)`.
pub fn hamiltonian_vector_field(h: &Observable, s: &PhaseState) -> Result<[f64; 4]> {
    let d = h.gradient(s)?;
    Ok([d[2], d[3], -d[0], -d[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observable::Kernel;
    use crate::phase::Chart;
    use crate::scalar::Scalar;
    use alloc::string::String;

    struct Free;

    impl Kernel for Free {
        fn eval<S: Scalar>(&self, z: [S; 4]) -> core::result::Result<S, String> {
            Ok((z[2] * z[2] + z[3] * z[3]) * 0.5)
        }
    }

    struct Mixed(f64);

    impl Kernel for Mixed {
        fn eval<S: Scalar>(&self, z: [S; 4]) -> core::result::Result<S, String> {
            Ok((z[0] * self.0).sin() * z[2] * z[3] + z[1].cos().square() * z[3].cube() + z[0].cosh())
        }
    }

    #[test]
    fn canonical_pair() {
        let s = PhaseState::new(Chart::Cartesian, 0.3, -1.0, 2.0, 7.0);
        let x2 = Observable::coordinate(Chart::Cartesian, 1);
        let p2 = Observable::coordinate(Chart::Cartesian, 3);
        assert_eq!(poisson_bracket(&x2, &p2, &s).unwrap(), 1.0);
        assert!((poisson_bracket_oracle(&x2, &p2, &s, 1e-4).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn self_bracket_vanishes_exactly() {
        let h = Observable::new("mixed", Chart::Cartesian, "test", Mixed(1.3));
        let s = PhaseState::new(Chart::Cartesian, 0.3, -1.0, 2.0, 7.0);
        assert_eq!(poisson_bracket(&h, &h, &s).unwrap(), 0.0);
    }

    #[test]
    fn free_flow_field() {
        let h = Observable::new("free", Chart::Cartesian, "test", Free);
        let s = PhaseState::new(Chart::Cartesian, 0.3, -1.0, 2.0, 7.0);
        assert_eq!(hamiltonian_vector_field(&h, &s).unwrap(), [2.0, 7.0, 0.0, 0.0]);
    }

    #[test]
    fn energy_orthogonality() {
        let h = Observable::new("mixed", Chart::Cartesian, "test", Mixed(0.4));
        let s = PhaseState::new(Chart::Cartesian, 0.8, 0.1, -0.6, 0.9);
        let grad = h.gradient(&s).unwrap();
        let field = hamiltonian_vector_field(&h, &s).unwrap();
        let dot: f64 = grad.iter().zip(field).map(|(a, b)| a * b).sum();
        assert_eq!(dot, 0.0);
    }

    #[test]
    fn chart_mismatch_rejected() {
        let f = Observable::coordinate(Chart::Cartesian, 0);
        let g = Observable::coordinate(Chart::ThetaPhi, 2);
        let s = PhaseState::new(Chart::Cartesian, 0.0, 0.0, 0.0, 0.0);
        assert!(matches!(poisson_bracket(&f, &g, &s), Err(Error::ChartMismatch { .. })));
    }

    #[test]
    fn oracle_step_must_be_positive() {
        let f = Observable::coordinate(Chart::Cartesian, 0);
        let s = PhaseState::new(Chart::Cartesian, 0.0, 0.0, 0.0, 0.0);
        assert!(poisson_bracket_oracle(&f, &f, &s, 0.0).is_err());
    }
}
