mod common;

use cubint_core::bracket::{poisson_bracket, poisson_bracket_oracle};
use cubint_core::catalog::*;
use cubint_core::phase::{Chart, PhaseState};
use cubint_core::Error;
use std::f64::consts::{FRAC_PI_2, PI};

#[test]
fn goryachev_chaplygin_energy_at_equator() {
    let m = build(&ModelSpec::GoryachevChaplygin { alpha: 1.0, beta: 0.0, half_domain: false }).unwrap();
    let h = m.h().eval(&PhaseState::new(Chart::ThetaPhi, FRAC_PI_2, 0.0, 0.0, 1.0)).unwrap();
    assert!((h - 3.0).abs() < 1e-12, "{h}");
}

#[test]
fn free_q0_zeta_energy() {
    let m = build(&ModelSpec::Q0Zeta { c0: 0.0, rho0: 0.0, chi0: 0.0, beta0: 0.0 }).unwrap();
    let h = m.h().eval(&PhaseState::new(Chart::ZetaPhi, 1.0, 0.0, 1.0, 0.0)).unwrap();
    assert!((h - 0.5).abs() < 1e-15, "{h}");
}

#[test]
fn goryachev_third_axis_coefficient() {
    // With no potential, H = ½(L1² + L2² + c L3²); at θ = π/2, L1 = sinφ Pθ,
    // L2 = cosφ Pθ, L3 = Pφ, so H(Pθ = 0, Pφ = 1) = c/2.
    let m = build(&ModelSpec::Goryachev { alpha: 0.0, beta: 0.0 }).unwrap();
    let at = |t: f64| m.h().eval(&PhaseState::new(Chart::ThetaPhi, t, 0.4, 0.0, 1.0)).unwrap();
    // cos^{2/3} θ vanishes at π/2, so probe just off it.
    let t = FRAC_PI_2 - 1e-9;
    let a = m.kinetic_matrix(t, 0.4).unwrap();
    let lie = 1.0 / (t.tan() * t.tan());
    assert!((a[1][1] - lie - 4.0 / 3.0).abs() < 1e-9, "{:?}", a);
    assert!((at(t) - 2.0 / 3.0 - lie / 2.0).abs() < 1e-9);
}

#[test]
fn presets() {
    assert_eq!(
        preset("goryachev-chaplygin").unwrap(),
        ModelSpec::GoryachevChaplygin { alpha: 1.0, beta: 0.1, half_domain: false }
    );
    assert_eq!(preset("dullin-matveev").unwrap(), ModelSpec::DullinMatveev { rho: 2.0, alpha: 1.0, beta: 0.1 });
    match preset("unknown") {
        Err(Error::Lookup { name, valid }) => {
            assert_eq!(name, "unknown");
            for p in PRESETS {
                assert!(valid.contains(p));
            }
        }
        other => panic!("{other:?}"),
    }
    for p in PRESETS {
        let m = build(&preset(p).unwrap()).unwrap();
        assert!(m.manifold().is_manifold(), "{p}");
    }
}

#[test]
fn demo_presets_land_in_named_regime() {
    assert_eq!(preset("q0-sphere-demo").unwrap(), ModelSpec::Q0Sphere { k2: 0.5, chi0: 1.0, beta0: 0.1 });
    assert_eq!(preset("p0-sphere-demo").unwrap(), ModelSpec::P0Sphere { rho: 0.5, alpha: 1.0, beta: 0.1 });
    assert_eq!(preset("q0-hyperbolic-demo").unwrap().family(), Family::Q0Hyperbolic);
    assert_eq!(preset("ppos-sphere-demo").unwrap().family(), Family::PposSphere);
    assert_eq!(preset("pneg-sphere-demo").unwrap().family(), Family::PnegSphereElliptic);
    assert_eq!(preset("pneg-hyperbolic-demo").unwrap().family(), Family::PnegHyperbolic);
}

#[test]
fn every_family_commutes_on_a_thousand_states() {
    for spec in common::one_per_family() {
        let m = build(&spec).unwrap();
        assert!(!m.provenance().fitted, "{:?}", spec.family());
        let states: Vec<_> = (0..1000).map(|i| m.domain().kronecker_state(i)).collect();
        let worst = m.max_scaled_bracket(&states).unwrap();
        assert!(worst <= BRACKET_TOL, "{:?}: {worst:e}", spec.family());
    }
}

#[test]
fn sampled_states_are_admissible() {
    for spec in common::one_per_family() {
        let m = build(&spec).unwrap();
        for i in 0..500 {
            let s = m.domain().kronecker_state(i);
            assert!(m.domain().contains(&s), "{:?} {s:?}", spec.family());
            m.h().eval(&s).unwrap();
            m.q().eval(&s).unwrap();
        }
    }
}

#[test]
fn kinetic_form_is_positive_definite() {
    for spec in common::one_per_family() {
        let m = build(&spec).unwrap();
        for i in 0..200 {
            let s = m.domain().kronecker_state(i);
            let a = m.kinetic_matrix(s.x1, s.x2).unwrap();
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            assert!(a[0][0] > 0.0 && det > 0.0, "{:?} at {s:?}: {a:?}", spec.family());
        }
    }
}

#[test]
fn q_is_cubic_in_momenta() {
    // Third differences in Pφ do not depend on where they are taken.
    for spec in common::one_per_family() {
        let m = build(&spec).unwrap();
        let s = m.domain().kronecker_state(7);
        let q = |p2: f64| m.q().eval(&PhaseState { p2, ..s }).unwrap();
        let third = |p: f64| q(p + 3.0) - 3.0 * q(p + 2.0) + 3.0 * q(p + 1.0) - q(p);
        let (a, b) = (third(-1.0), third(0.5));
        assert!((a - b).abs() <= 1e-8 * (1.0 + a.abs()), "{:?}: {a} vs {b}", spec.family());
        let fourth = third(0.0) - third(-1.0);
        assert!(fourth.abs() <= 1e-8 * (1.0 + a.abs()), "{:?}", spec.family());
    }
}

#[test]
fn broken_q_is_caught_and_refitted() {
    let m = build(&preset("goryachev-chaplygin").unwrap()).unwrap();
    let broken = m.with_q_scalings([1.3, 1.0]);
    let states: Vec<_> = (0..10).map(|i| m.domain().kronecker_state(i)).collect();
    assert!(broken.max_scaled_bracket(&states).unwrap() > 1e-4);
    let s = fit_q_scalings(broken.h(), &broken.q_groups(), &states).unwrap();
    assert!((s[0] - 1.0).abs() < 1e-9, "{s:?}");
}

#[test]
fn fit_leaves_inert_group_alone() {
    let m = build(&preset("dullin-matveev").unwrap()).unwrap();
    let states: Vec<_> = (0..10).map(|i| m.domain().kronecker_state(i)).collect();
    let s = fit_q_scalings(m.h(), &m.q_groups(), &states).unwrap();
    assert!((s[0] - 1.0).abs() < 1e-9 && s[1] == 1.0, "{s:?}");
}

#[test]
fn constraint_violations_name_the_inequality() {
    let cases = [
        (ModelSpec::PnegSphereElliptic { k2: 0.5, rho: 0.9, alpha: 1.0, beta: 0.0 }, "rho > 1"),
        (ModelSpec::P0Sphere { rho: 1.5, alpha: 1.0, beta: 0.0 }, "0 < rho < 1"),
        (ModelSpec::Q0Sphere { k2: 1.0, chi0: 1.0, beta0: 0.0 }, "0 < k2 < 1"),
        (ModelSpec::DullinMatveev { rho: 1.0, alpha: 1.0, beta: 0.0 }, "rho > 1"),
    ];
    for (spec, what) in cases {
        match build(&spec) {
            Err(Error::Build(msg)) => assert!(msg.contains(what), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn trigonometric_sphere_needs_vanishing_g0() {
    let spec = ModelSpec::PnegSphereTrig {
        roots: RootData::RealPair { z1: 1.0, z2: 2.0 },
        zeta0: 0.5,
        alpha: 1.0,
        beta: 0.0,
    };
    match build(&spec) {
        Err(Error::Build(msg)) => assert!(msg.contains("G(0) = 0"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn zeta_chart_without_positivity_interval_fails() {
    // F = −(ζ² + 1)(ζ + 1) is negative for ζ > 0.
    let spec = ModelSpec::PnegZeta { c0: 1.0, c1: 1.0, c2: 1.0, alpha: 1.0, beta: 0.0 };
    assert!(matches!(build(&spec), Err(Error::Build(_))));
}

#[test]
fn lie_generator_values() {
    let [l1, _, l3] = lie_generators(LieAlgebra::So3);
    let s = PhaseState::new(Chart::ThetaPhi, FRAC_PI_2, FRAC_PI_2, 2.0, 5.0);
    assert!((l1.eval(&s).unwrap() - 2.0).abs() < 1e-12);
    for i in 0..10 {
        let s = PhaseState::new(Chart::ThetaPhi, 0.3 + 0.2 * i as f64, i as f64, 1.5, -0.7 * i as f64);
        assert_eq!(l3.eval(&s).unwrap(), s.p2);
    }
    let [_, m2, _] = lie_generators(LieAlgebra::So21);
    let s = PhaseState::new(Chart::UPhi, 0.8, 0.0, 3.0, 0.0);
    assert!((m2.eval(&s).unwrap() - 3.0).abs() < 1e-15);
}

fn closure(kind: LieAlgebra, table: [(usize, usize, usize, f64); 3]) {
    let g = lie_generators(kind);
    let chart = g[0].chart();
    for i in 0..100 {
        let x1 = 0.1 + 2.9 * ((i as f64 * 0.618_033_988_7) % 1.0);
        let s = PhaseState::new(chart, x1, 0.37 * i as f64, (i as f64).sin() * 2.0, (i as f64).cos() * 2.0);
        for (a, b, c, sign) in table {
            let br = poisson_bracket(&g[a], &g[b], &s).unwrap();
            let fd = poisson_bracket_oracle(&g[a], &g[b], &s, 1e-5).unwrap();
            let want = sign * g[c].eval(&s).unwrap();
            assert!((br - want).abs() <= 1e-9 * (1.0 + want.abs()), "{kind:?} {a}{b}: {br} vs {want}");
            assert!((fd - want).abs() <= 1e-5 * (1.0 + want.abs()), "oracle {kind:?} {a}{b}: {fd} vs {want}");
        }
    }
}

#[test]
fn so3_closure() {
    closure(LieAlgebra::So3, [(0, 1, 2, -1.0), (2, 0, 1, -1.0), (1, 2, 0, -1.0)]);
}

#[test]
fn so21_closure() {
    closure(LieAlgebra::So21, [(0, 1, 2, 1.0), (2, 0, 1, -1.0), (1, 2, 0, -1.0)]);
}

#[test]
fn elliptic_sphere_degenerates_to_hyperbolic() {
    let (chi0, beta0) = (0.7, 0.3);
    let sphere = build(&ModelSpec::Q0Sphere { k2: 1.0 - 1e-8, chi0, beta0 }).unwrap();
    let hyper = build(&ModelSpec::Q0Hyperbolic { chi0, beta0 }).unwrap();
    for i in 0..100 {
        let mut s = hyper.domain().kronecker_state(i);
        s.x1 = 0.05 + 3.0 * ((i as f64 * 0.754_877_666) % 1.0);
        for (a, b) in [(sphere.h(), hyper.h()), (sphere.q(), hyper.q())] {
            let (x, y) = (a.eval(&s).unwrap(), b.eval(&s).unwrap());
            assert!((x - y).abs() <= 1e-6 * (1.0 + y.abs()), "{} at {s:?}: {x} vs {y}", a.name());
        }
    }
}

#[test]
fn domain_bounds() {
    let gc = build(&ModelSpec::GoryachevChaplygin { alpha: 1.0, beta: 0.5, half_domain: false }).unwrap();
    assert_eq!(gc.domain().excluded_x1, vec![FRAC_PI_2]);
    let s = PhaseState::new(Chart::ThetaPhi, FRAC_PI_2, 0.0, 0.0, 1.0);
    assert!(!gc.domain().contains(&s));
    let half = build(&ModelSpec::GoryachevChaplygin { alpha: 1.0, beta: 0.5, half_domain: true }).unwrap();
    assert_eq!(half.domain().x1.hi, FRAC_PI_2);
    assert_eq!(half.manifold().name(), "RP2");
    let dm = build(&preset("dullin-matveev").unwrap()).unwrap();
    assert_eq!((dm.domain().x1.lo, dm.domain().x1.hi), (0.0, PI));
    let k = cubint_core::complete_elliptic_k(0.5).unwrap();
    let sphere = build(&preset("q0-sphere-demo").unwrap()).unwrap();
    assert!((sphere.domain().x1.hi - k).abs() < 1e-15);
}

#[test]
fn conformal_factor_of_plane() {
    let m = build(&ModelSpec::P0Plane { rho: 2.0, alpha: 0.0, beta: 0.0 }).unwrap();
    assert_eq!(m.conformal_factor(1.0, 1.0).unwrap(), 9.0);
    // The kinetic form is the inverse of the conformal factor.
    let a = m.kinetic_matrix(1.0, 1.0).unwrap();
    assert!((a[0][0] - 1.0 / 9.0).abs() < 1e-15 && a[0][1].abs() < 1e-15);
}

/// Hyperbolic `q = 0` Hamiltonian without the ½ on its kinetic part.
struct UnhalvedHyperbolic {
    chi0: f64,
    beta0: f64,
}

impl cubint_core::Kernel for UnhalvedHyperbolic {
    fn eval<S: cubint_core::Scalar>(&self, z: [S; 4]) -> Result<S, String> {
        let [u, phi, pu, pphi] = z;
        let (t, c) = (u.tanh(), u.cosh());
        let m1 = phi.sin() * pu + phi.cos() / t * pphi;
        let m2 = phi.cos() * pu - phi.sin() / t * pphi;
        let kin = m1 * m1 + m2 * m2 - (S::cst(1.0) - (c * c).recip() * 3.0) * pphi * pphi;
        Ok(kin + t * (S::cst(1.0) - t * t) * phi.cos() * self.chi0 - t * t * self.beta0)
    }
}

#[test]
fn fit_recovers_halved_couplings() {
    let (chi0, beta0) = (0.7, 0.3);
    let m = build(&ModelSpec::Q0Hyperbolic { chi0, beta0 }).unwrap();
    let h = cubint_core::Observable::new("H", Chart::UPhi, "unhalved", UnhalvedHyperbolic { chi0, beta0 });
    let states: Vec<_> = (0..10).map(|i| m.domain().kronecker_state(i)).collect();
    let s = fit_q_scalings(&h, &m.q_groups(), &states).unwrap();
    assert!((s[0] - 0.5).abs() < 1e-9 && (s[1] - 0.5).abs() < 1e-9, "{s:?}");
}
