//! Two-dimensional integrable geodesic flows with a cubic first integral.
//!
//! The crate builds the explicit `(H, Q)` pairs of every family of
//! integrable systems of the form
//!
//! ```text
//! H = ½(P₁² + a(x)P₂²) + f(x) cos φ + g(x)
//! Q = p P₂³ + 2q K P₂ + χ(x) sin φ P₁ + (β(x) + γ(x) cos φ) P₂
//! ```
//!
//! checks `{H, Q} = 0` with forward-mode dual numbers, decides on which
//! surface (S², H², R², RP²) each parameter regime lives, and integrates the
//! flows with the implicit midpoint rule.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bracket;
pub mod catalog;
pub mod classify;
pub mod dual;
pub mod elliptic;
mod error;
pub mod observable;
pub mod phase;
pub mod poly;
pub mod scalar;
pub mod sim;

pub use bracket::{hamiltonian_vector_field, poisson_bracket, poisson_bracket_oracle, scaled_bracket};
pub use catalog::{build, lie_generators, preset, residual_lemma1, Domain, Family, LieAlgebra, Model, ModelSpec, RootData};
pub use sim::{drift_report, run, step, DriftReport, Trajectory};
pub use classify::{classify_general, classify_p0, classify_q0, positivity_interval, solve_zeta0, Classification};
pub use dual::DualScalar;
pub use elliptic::{complete_elliptic_k, jacobi, JacobiTriple};
pub use error::{Error, Result};
pub use observable::{Kernel, Observable};
pub use phase::{Chart, PhaseState};
pub use poly::{check_g_prime_identity, companion_g, cubic_real_roots, discriminant_q0, CubicPoly, QuarticPoly, RootSet, Sign};
pub use scalar::Scalar;
