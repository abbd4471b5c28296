//! Seeded draws of admissible specs and phase-space states.

use anyhow::{bail, Result};
use cubint_core::catalog::{build, Family, Model, ModelSpec, RootData};
use cubint_core::classify::solve_zeta0;
use cubint_core::phase::PhaseState;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent generator for `stream` under `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn monic(roots: [f64; 3]) -> (f64, f64, f64) {
    let [a, b, c] = roots;
    (-(a * b * c), a * b + b * c + a * c, -(a + b + c))
}

fn sorted_roots(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> [f64; 3] {
    // Gaps of at least 0.2 keep the draws away from double roots.
    let a = rng.gen_range(lo..hi);
    let b = a + rng.gen_range(0.2..1.5);
    let c = b + rng.gen_range(0.2..1.5);
    [a, b, c]
}

fn trig_spec(rng: &mut ChaCha8Rng, alpha: f64, beta: f64) -> Option<ModelSpec> {
    let roots = match rng.gen_range(0..3) {
        0 => {
            let z1 = rng.gen_range(0.3..2.0);
            RootData::RealPair { z1, z2: z1 + rng.gen_range(0.2..2.0) }
        }
        1 => RootData::Degenerate { z1: rng.gen_range(0.3..3.0) },
        _ => RootData::ComplexPair { re: rng.gen_range(-1.0..1.0), im: rng.gen_range(0.3..2.0) },
    };
    let zeta0 = *solve_zeta0(roots).ok()?.first()?;
    Some(ModelSpec::PnegSphereTrig { roots, zeta0, alpha, beta })
}

/// One admissible spec of `family` with couplings in `[-1, 1]`.
pub fn random_spec(family: Family, rng: &mut ChaCha8Rng) -> ModelSpec {
    let alpha = rng.gen_range(-1.0..1.0);
    let beta = rng.gen_range(-1.0..1.0);
    let k2 = rng.gen_range(0.05..0.95);
    match family {
        Family::Q0Zeta => ModelSpec::Q0Zeta {
            c0: rng.gen_range(-2.0..0.5),
            rho0: rng.gen_range(-1.0..1.0),
            chi0: alpha,
            beta0: beta,
        },
        Family::Q0Sphere => ModelSpec::Q0Sphere { k2, chi0: alpha, beta0: beta },
        Family::Q0Hyperbolic => ModelSpec::Q0Hyperbolic { chi0: alpha, beta0: beta },
        Family::P0Hyperbolic => ModelSpec::P0Hyperbolic { rho: rng.gen_range(-0.9..3.0), alpha, beta },
        Family::P0Sphere => ModelSpec::P0Sphere { rho: rng.gen_range(0.05..0.95), alpha, beta },
        Family::P0Plane => ModelSpec::P0Plane { rho: rng.gen_range(0.2..3.0), alpha, beta },
        Family::PposZeta => {
            let (c0, c1, c2) = monic(sorted_roots(rng, 0.1, 2.0));
            ModelSpec::PposZeta { c0, c1, c2, alpha, beta }
        }
        Family::PposSphere => ModelSpec::PposSphere { k2, rho: rng.gen_range(0.1..3.0), alpha, beta },
        Family::PposHyperbolic => ModelSpec::PposHyperbolic { rho: rng.gen_range(0.1..3.0), alpha, beta },
        Family::PnegZeta => {
            let (c0, c1, c2) = monic(sorted_roots(rng, -1.0, 1.0));
            ModelSpec::PnegZeta { c0, c1, c2, alpha, beta }
        }
        Family::PnegSphereElliptic => {
            ModelSpec::PnegSphereElliptic { k2, rho: rng.gen_range(1.1..4.0), alpha, beta }
        }
        Family::PnegSphereTrig => loop {
            if let Some(s) = trig_spec(rng, alpha, beta) {
                break s;
            }
        },
        Family::DullinMatveev => ModelSpec::DullinMatveev { rho: rng.gen_range(1.1..4.0), alpha, beta },
        Family::GoryachevChaplygin => {
            ModelSpec::GoryachevChaplygin { alpha, beta, half_domain: rng.gen_bool(0.5) }
        }
        Family::Goryachev => ModelSpec::Goryachev { alpha, beta },
        Family::PnegHyperbolic => ModelSpec::PnegHyperbolic { rho: rng.gen_range(1.1..4.0), alpha, beta },
    }
}

/// Draws specs until one builds.
pub fn random_model(family: Family, rng: &mut ChaCha8Rng) -> Result<Model> {
    let mut last = None;
    for _ in 0..100 {
        match build(&random_spec(family, rng)) {
            Ok(m) => return Ok(m),
            Err(e) => last = Some(e),
        }
    }
    bail!("no buildable {family} spec in 100 draws (last error: {last:?})")
}

pub fn random_states(model: &Model, n: usize, rng: &mut ChaCha8Rng) -> Vec<PhaseState> {
    (0..n).map(|_| model.sample_state(rng.gen())).collect()
}
