#![allow(dead_code)]

use cubint_core::catalog::{ModelSpec, RootData};
use cubint_core::classify::solve_zeta0;

/// One admissible spec per family, with generic couplings.
pub fn one_per_family() -> Vec<ModelSpec> {
    let (a, b) = (0.7, 0.3);
    let roots = RootData::RealPair { z1: 1.0, z2: 2.0 };
    let zeta0 = solve_zeta0(roots).unwrap()[0];
    vec![
        ModelSpec::Q0Zeta { c0: -1.0, rho0: 0.0, chi0: a, beta0: b },
        ModelSpec::Q0Sphere { k2: 0.5, chi0: a, beta0: b },
        ModelSpec::Q0Hyperbolic { chi0: a, beta0: b },
        ModelSpec::P0Hyperbolic { rho: 0.5, alpha: a, beta: b },
        ModelSpec::P0Sphere { rho: 0.5, alpha: a, beta: b },
        ModelSpec::P0Plane { rho: 0.8, alpha: a, beta: b },
        ModelSpec::PposZeta { c0: -6.0, c1: 11.0, c2: -6.0, alpha: a, beta: b },
        ModelSpec::PposSphere { k2: 0.5, rho: 0.5, alpha: a, beta: b },
        ModelSpec::PposHyperbolic { rho: 0.7, alpha: a, beta: b },
        ModelSpec::PnegZeta { c0: -0.02, c1: 0.32, c2: -1.3, alpha: a, beta: b },
        ModelSpec::PnegSphereElliptic { k2: 0.5, rho: 1.5, alpha: a, beta: b },
        ModelSpec::PnegSphereTrig { roots, zeta0, alpha: a, beta: b },
        ModelSpec::DullinMatveev { rho: 2.0, alpha: a, beta: b },
        ModelSpec::GoryachevChaplygin { alpha: a, beta: b, half_domain: false },
        ModelSpec::Goryachev { alpha: a, beta: b },
        ModelSpec::PnegHyperbolic { rho: 1.5, alpha: a, beta: b },
    ]
}
