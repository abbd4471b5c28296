//! Implicit-midpoint integration with conservation monitoring.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::bracket::hamiltonian_vector_field;
use crate::catalog::{Domain, Model};
use crate::error::{Error, Result};
use crate::observable::Observable;
use crate::phase::PhaseState;

/// Fixed-point tolerance used by [`run`].
pub const RUN_TOL: f64 = 1e-14;
const FIXED_POINT_ITERS: usize = 50;
const NEWTON_ITERS: usize = 25;
const DAMPING: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhaseState>,
    pub h_values: Vec<f64>,
    pub q_values: Vec<f64>,
    /// Set when integration stopped at a domain boundary.
    pub halt: Option<Error>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DriftReport {
    pub max_abs_dh: f64,
    pub max_abs_dq: f64,
    pub steps: usize,
    pub rejected_steps: usize,
}

fn check_inside(domain: &Domain, z: [f64; 4]) -> Result<()> {
    let (distance, what) = domain.boundary_distance(z);
    if distance > domain.guard && z.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Boundary { distance, what })
    }
}

fn add(a: [f64; 4], b: [f64; 4], k: f64) -> [f64; 4] {
    [0, 1, 2, 3].map(|i| a[i] + k * b[i])
}

fn norm(a: [f64; 4]) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// One implicit-midpoint step of the flow of `h` restricted to `domain`.
pub fn step_flow(h: &Observable, domain: &Domain, s: &PhaseState, dt: f64, tol: f64) -> Result<PhaseState> {
    if !(dt != 0.0 && dt.is_finite()) || !(tol > 0.0) {
        return Err(Error::Argument(format!("need finite dt != 0 and tol > 0, got dt = {dt}, tol = {tol}")));
    }
    let chart = s.chart;
    let z = s.to_array();
    check_inside(domain, z)?;
    let field = |w: [f64; 4]| -> Result<[f64; 4]> {
        let mid = [0, 1, 2, 3].map(|i| 0.5 * (z[i] + w[i]));
        check_inside(domain, mid)?;
        hamiltonian_vector_field(h, &PhaseState::from_array(chart, mid))
    };
    // Fixed point w = z + dt X((z + w)/2).
    let map = |w: [f64; 4]| -> Result<[f64; 4]> { Ok(add(z, field(w)?, dt)) };
    let scale = |w: [f64; 4]| 1.0 + norm(w);
    let mut w = map(z)?;
    let mut residual = f64::INFINITY;
    let mut lambda = 1.0;
    for _ in 0..FIXED_POINT_ITERS {
        let t = map(w)?;
        let r = norm(add(t, w, -1.0));
        if r <= tol * scale(w) {
            return Ok(PhaseState::from_array(chart, t));
        }
        if r > residual {
            lambda = DAMPING;
        }
        residual = r;
        w = add(w, add(t, w, -1.0), lambda);
    }
    // Newton on R(w) = w − map(w) with a finite-difference Jacobian.
    for _ in 0..NEWTON_ITERS {
        let r = add(w, map(w)?, -1.0);
        residual = norm(r);
        if residual <= tol * scale(w) {
            return Ok(PhaseState::from_array(chart, w));
        }
        let mut jac = [[0.0; 4]; 4];
        for j in 0..4 {
            let e = 1e-7 * (1.0 + w[j].abs());
            let (mut wp, mut wm) = (w, w);
            wp[j] += e;
            wm[j] -= e;
            let (rp, rm) = (add(wp, map(wp)?, -1.0), add(wm, map(wm)?, -1.0));
            for i in 0..4 {
                jac[i][j] = (rp[i] - rm[i]) / (2.0 * e);
            }
        }
        let delta = solve4(jac, r).ok_or(Error::Step { iterations: FIXED_POINT_ITERS, residual })?;
        w = add(w, delta, -1.0);
    }
    Err(Error::Step { iterations: FIXED_POINT_ITERS + NEWTON_ITERS, residual })
}

/// Gaussian elimination with partial pivoting.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// One implicit-midpoint step of the model's flow.
pub fn step(model: &Model, s: &PhaseState, dt: f64, tol: f64) -> Result<PhaseState> {
    if s.chart != model.chart() {
        return Err(Error::ChartMismatch { expected: model.chart(), found: s.chart });
    }
    step_flow(model.h(), model.domain(), s, dt, tol)
}

/// Fixed-step integration from `s0` over `[0, t_end]`.
///
/// A boundary rejection ends the run early and is recorded in
/// [`Trajectory::halt`]; other step failures are returned as errors.
pub fn run(model: &Model, s0: &PhaseState, dt: f64, t_end: f64) -> Result<Trajectory> {
    if !(t_end >= 0.0 && t_end.is_finite()) || !(dt > 0.0) {
        return Err(Error::Argument(format!("need dt > 0 and t_end >= 0, got dt = {dt}, t_end = {t_end}")));
    }
    let n = libm::round(t_end / dt) as usize;
    let mut traj = Trajectory {
        times: Vec::with_capacity(n + 1),
        states: Vec::with_capacity(n + 1),
        h_values: Vec::with_capacity(n + 1),
        q_values: Vec::with_capacity(n + 1),
        halt: None,
    };
    let mut s = *s0;
    let record = |traj: &mut Trajectory, i: usize, s: PhaseState| -> Result<()> {
        traj.times.push(i as f64 * dt);
        traj.h_values.push(model.h().eval(&s)?);
        traj.q_values.push(model.q().eval(&s)?);
        traj.states.push(s);
        Ok(())
    };
    if let Err(e) = check_inside(model.domain(), s.to_array()) {
        traj.halt = Some(Error::Halted { step: 0, source: Box::new(e) });
        if model.h().eval(&s).is_ok() && model.q().eval(&s).is_ok() {
            record(&mut traj, 0, s)?;
        }
        return Ok(traj);
    }
    record(&mut traj, 0, s)?;
    for i in 1..=n {
        match step(model, &s, dt, RUN_TOL) {
            Ok(next) => {
                s = next;
                record(&mut traj, i, s)?;
            }
            Err(e @ Error::Boundary { .. }) => {
                traj.halt = Some(Error::Halted { step: i, source: Box::new(e) });
                break;
            }
            Err(e) => return Err(Error::Halted { step: i, source: Box::new(e) }),
        }
    }
    Ok(traj)
}

/// Largest deviations of `H` and `Q` from their initial values.
pub fn drift_report(traj: &Trajectory) -> Result<DriftReport> {
    let (Some(&h0), Some(&q0)) = (traj.h_values.first(), traj.q_values.first()) else {
        return Err(Error::Argument("empty trajectory".into()));
    };
    let max_dev = |v: &[f64], x0: f64| v.iter().fold(0.0f64, |m, x| m.max((x - x0).abs()));
    Ok(DriftReport {
        max_abs_dh: max_dev(&traj.h_values, h0),
        max_abs_dq: max_dev(&traj.q_values, q0),
        steps: traj.len() - 1,
        rejected_steps: usize::from(traj.halt.is_some()),
    })
}
