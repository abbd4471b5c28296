//! Sampled integrability check of a built model.

use anyhow::Result;
use cubint_core::bracket::{poisson_bracket, poisson_bracket_oracle};
use cubint_core::catalog::{Model, ModelSpec, Provenance};
use cubint_core::classify::Manifold;
use cubint_core::{Observable, PhaseState};
use rayon::prelude::*;
use serde::Serialize;

use crate::sampling;

/// Step of the central-difference oracle.
pub const ORACLE_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketSample {
    pub dual: f64,
    pub oracle: f64,
    /// `1 + ‖∇f‖‖∇g‖`.
    pub scale: f64,
}

impl BracketSample {
    /// `|dual − oracle| / (|dual| + ‖∇f‖‖∇g‖)`.
    pub fn disagreement(&self) -> f64 {
        let d = (self.dual - self.oracle).abs();
        if d == 0.0 {
            0.0
        } else {
            d / (self.dual.abs() + self.scale - 1.0)
        }
    }
}

pub fn bracket_sample(f: &Observable, g: &Observable, s: &PhaseState) -> cubint_core::Result<BracketSample> {
    let dual = poisson_bracket(f, g, s)?;
    let oracle = poisson_bracket_oracle(f, g, s, ORACLE_STEP)?;
    let norm = |v: [f64; 4]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = 1.0 + norm(f.gradient(s)?) * norm(g.gradient(s)?);
    Ok(BracketSample { dual, oracle, scale })
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub spec: ModelSpec,
    pub provenance: Provenance,
    pub manifold: Manifold,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    /// Largest `|{H,Q}| / (1 + ‖∇H‖‖∇Q‖)` with dual-number gradients.
    pub max_scaled_bracket: f64,
    /// The same with central differences.
    pub max_scaled_bracket_oracle: f64,
    pub max_oracle_disagreement: f64,
    pub worst_state: PhaseState,
    pub pass: bool,
}

pub fn verify(model: &Model, samples: usize, tol: f64, seed: u64) -> Result<VerifyReport> {
    let states = sampling::random_states(model, samples.max(1), &mut sampling::rng(seed, 0));
    let results: Vec<BracketSample> = states
        .par_iter()
        .map(|s| bracket_sample(model.h(), model.q(), s))
        .collect::<cubint_core::Result<_>>()?;
    let mut worst = (0.0f64, 0);
    let (mut oracle, mut disagreement) = (0.0f64, 0.0f64);
    for (i, r) in results.iter().enumerate() {
        let scaled = r.dual.abs() / r.scale;
        if scaled > worst.0 || i == 0 {
            worst = (scaled, i);
        }
        oracle = oracle.max(r.oracle.abs() / r.scale);
        disagreement = disagreement.max(r.disagreement());
    }
    Ok(VerifyReport {
        spec: *model.spec(),
        provenance: model.provenance().clone(),
        manifold: model.manifold(),
        samples: states.len(),
        tol,
        seed,
        max_scaled_bracket: worst.0,
        max_scaled_bracket_oracle: oracle,
        max_oracle_disagreement: disagreement,
        worst_state: states[worst.1],
        pass: worst.0 <= tol,
    })
}
