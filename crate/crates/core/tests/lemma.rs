use cubint_core::catalog::*;
use cubint_core::Error;

fn pneg() -> Model {
    // F = −(ζ − 0.1)(ζ − 0.2)(ζ − 1).
    build(&ModelSpec::PnegZeta { c0: -0.02, c1: 0.32, c2: -1.3, alpha: 0.7, beta: 0.3 }).unwrap()
}

#[test]
fn rescaled_chart_satisfies_relations() {
    let m = pneg();
    let grid = lemma_grid(&m, 50);
    assert_eq!(grid.len(), 50);
    let r = residual_lemma1(&m, &grid).unwrap();
    assert!(r.iter().all(|x| *x <= 1e-8), "{r:?}");
}

#[test]
fn other_component_of_the_same_cubic() {
    let m = pneg();
    let grid: Vec<f64> = (0..50).map(|i| 0.1 * (i as f64 + 0.5) / 50.0).collect();
    let r = residual_lemma1(&m, &grid).unwrap();
    assert!(r.iter().all(|x| *x <= 1e-8), "{r:?}");
}

#[test]
fn positive_branch_satisfies_relations() {
    let m = build(&ModelSpec::PposZeta { c0: -6.0, c1: 11.0, c2: -6.0, alpha: 1.3, beta: -0.4 }).unwrap();
    let r = residual_lemma1(&m, &lemma_grid(&m, 50)).unwrap();
    assert!(r.iter().all(|x| *x <= 1e-8), "{r:?}");
}

#[test]
fn flat_branch_satisfies_relations() {
    let m = build(&ModelSpec::Q0Zeta { c0: -1.0, rho0: 0.0, chi0: 0.7, beta0: 0.3 }).unwrap();
    let grid = lemma_grid(&m, 50);
    let root3 = 3f64.sqrt();
    assert!(grid.iter().all(|z| *z > -root3 && *z < 0.0));
    let r = residual_lemma1(&m, &grid).unwrap();
    assert!(r.iter().all(|x| *x <= 1e-8), "{r:?}");
}

#[test]
fn perturbed_gamma_is_detected() {
    for m in [pneg(), build(&ModelSpec::Q0Zeta { c0: -1.0, rho0: 0.0, chi0: 0.7, beta0: 0.3 }).unwrap()] {
        let r = residual_lemma1_perturbed(&m, &lemma_grid(&m, 50), 1e-3).unwrap();
        assert!(r.iter().any(|x| *x > 1e-4), "{r:?}");
    }
}

#[test]
fn points_outside_the_support_are_rejected() {
    let m = pneg();
    assert!(matches!(residual_lemma1(&m, &[0.15]), Err(Error::Domain(_))));
    assert!(matches!(residual_lemma1(&m, &[-0.5]), Err(Error::Domain(_))));
}

#[test]
fn needs_a_zeta_chart_family() {
    let m = build(&preset("goryachev").unwrap()).unwrap();
    assert!(matches!(residual_lemma1(&m, &[0.5]), Err(Error::Argument(_))));
}
