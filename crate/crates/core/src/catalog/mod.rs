//! Explicit `(H, Q, domain)` triples of every family.

mod lemma;
mod system;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::bracket::{poisson_bracket, scaled_bracket};
use crate::classify::{classify_general, classify_q0, positivity_interval, Interval, Manifold, Weight};
use crate::elliptic::complete_elliptic_k;
use crate::error::{Error, Result};
use crate::observable::{Kernel, Observable};
use crate::phase::{Chart, PhaseState};
use crate::poly::{companion_g, CubicPoly, Sign};
use crate::scalar::Scalar;

pub use lemma::{lemma_grid, residual_lemma1, residual_lemma1_perturbed, LemmaResiduals};
use system::{System, Variant};

/// Tolerance of the integrability gate on `|{H,Q}| / (1 + ‖∇H‖‖∇Q‖)`.
pub const BRACKET_TOL: f64 = 1e-9;
/// Distance kept from domain endpoints and singular loci.
pub const GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Family {
    Q0Zeta,
    Q0Sphere,
    Q0Hyperbolic,
    P0Hyperbolic,
    P0Sphere,
    P0Plane,
    PposZeta,
    PposSphere,
    PposHyperbolic,
    PnegZeta,
    PnegSphereElliptic,
    PnegSphereTrig,
    DullinMatveev,
    GoryachevChaplygin,
    Goryachev,
    PnegHyperbolic,
}

impl Family {
    pub const ALL: [Family; 16] = [
        Family::Q0Zeta,
        Family::Q0Sphere,
        Family::Q0Hyperbolic,
        Family::P0Hyperbolic,
        Family::P0Sphere,
        Family::P0Plane,
        Family::PposZeta,
        Family::PposSphere,
        Family::PposHyperbolic,
        Family::PnegZeta,
        Family::PnegSphereElliptic,
        Family::PnegSphereTrig,
        Family::DullinMatveev,
        Family::GoryachevChaplygin,
        Family::Goryachev,
        Family::PnegHyperbolic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Q0Zeta => "q0-zeta",
            Family::Q0Sphere => "q0-sphere",
            Family::Q0Hyperbolic => "q0-hyperbolic",
            Family::P0Hyperbolic => "p0-hyperbolic",
            Family::P0Sphere => "p0-sphere",
            Family::P0Plane => "p0-plane",
            Family::PposZeta => "ppos-zeta",
            Family::PposSphere => "ppos-sphere",
            Family::PposHyperbolic => "ppos-hyperbolic",
            Family::PnegZeta => "pneg-zeta",
            Family::PnegSphereElliptic => "pneg-sphere-elliptic",
            Family::PnegSphereTrig => "pneg-sphere-trig",
            Family::DullinMatveev => "dullin-matveev",
            Family::GoryachevChaplygin => "goryachev-chaplygin",
            Family::Goryachev => "goryachev",
            Family::PnegHyperbolic => "pneg-hyperbolic",
        }
    }

    pub fn chart(self) -> Chart {
        match self {
            Family::Q0Zeta | Family::PposZeta | Family::PnegZeta => Chart::ZetaPhi,
            Family::Q0Sphere
            | Family::Q0Hyperbolic
            | Family::P0Hyperbolic
            | Family::PposSphere
            | Family::PposHyperbolic
            | Family::PnegSphereElliptic
            | Family::PnegHyperbolic => Chart::UPhi,
            Family::P0Sphere
            | Family::PnegSphereTrig
            | Family::DullinMatveev
            | Family::GoryachevChaplygin
            | Family::Goryachev => Chart::ThetaPhi,
            Family::P0Plane => Chart::Cartesian,
        }
    }

    /// Identifier of the closed form the family's observables transcribe.
    pub fn form(self) -> &'static str {
        match self {
            Family::Q0Zeta => "q0-zeta-chart",
            Family::Q0Sphere => "q0-sphere-elliptic",
            Family::Q0Hyperbolic => "q0-hyperbolic-so21",
            Family::P0Hyperbolic => "p0-hyperbolic-conformal",
            Family::P0Sphere => "p0-sphere-conformal",
            Family::P0Plane => "p0-plane-conformal",
            Family::PposZeta | Family::PnegZeta => "rescaled-zeta-chart",
            Family::PposSphere => "ppos-sphere-elliptic",
            Family::PposHyperbolic => "ppos-hyperbolic-so21",
            Family::PnegSphereElliptic => "pneg-sphere-elliptic",
            Family::PnegSphereTrig => "pneg-sphere-trigonometric",
            Family::DullinMatveev => "dullin-matveev",
            Family::GoryachevChaplygin => "goryachev-chaplygin",
            Family::Goryachev => "goryachev",
            Family::PnegHyperbolic => "pneg-hyperbolic-so21",
        }
    }
}

impl core::fmt::Display for Family {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::Lookup {
            name: s.to_string(),
            valid: Family::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join(", "),
        })
    }
}

/// Roots of the quadratic factor `(ζ − ζ1)(ζ − ζ̄1)` of the trigonometric
/// sphere charts.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "kebab-case"))]
pub enum RootData {
    RealPair { z1: f64, z2: f64 },
    Degenerate { z1: f64 },
    ComplexPair { re: f64, im: f64 },
}

impl RootData {
    /// `(ζ1 + ζ2, ζ1 ζ2)`.
    pub fn sum_product(self) -> (f64, f64) {
        match self {
            RootData::RealPair { z1, z2 } => (z1 + z2, z1 * z2),
            RootData::Degenerate { z1 } => (2.0 * z1, z1 * z1),
            RootData::ComplexPair { re, im } => (2.0 * re, re * re + im * im),
        }
    }

    /// `F = (ζ0 − ζ)(ζ − ζ1)(ζ − ζ2)`.
    pub fn cubic(self, zeta0: f64) -> CubicPoly {
        let (s, p) = self.sum_product();
        // −(ζ − ζ0)(ζ² − sζ + p)
        CubicPoly::new(zeta0 * p, -(p + zeta0 * s), s + zeta0, -1.0)
    }

    /// `G(0)` of [`RootData::cubic`], a quadratic in `ζ0`.
    pub fn g_at_zero(self, zeta0: f64) -> f64 {
        let (s, p) = self.sum_product();
        let c1 = p + zeta0 * s;
        c1 * c1 - 4.0 * zeta0 * p * (s + zeta0)
    }
}

/// Parameters of one family. Couplings are `(χ0, β0)` for the `q = 0`
/// families and `(α, β)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "kebab-case"))]
pub enum ModelSpec {
    /// `F = ζ³ + 3c0ζ − 2ρ0`.
    Q0Zeta { c0: f64, rho0: f64, chi0: f64, beta0: f64 },
    Q0Sphere { k2: f64, chi0: f64, beta0: f64 },
    Q0Hyperbolic { chi0: f64, beta0: f64 },
    P0Hyperbolic { rho: f64, alpha: f64, beta: f64 },
    P0Sphere { rho: f64, alpha: f64, beta: f64 },
    P0Plane { rho: f64, alpha: f64, beta: f64 },
    /// `F = ζ³ + c2ζ² + c1ζ + c0`.
    PposZeta { c0: f64, c1: f64, c2: f64, alpha: f64, beta: f64 },
    PposSphere { k2: f64, rho: f64, alpha: f64, beta: f64 },
    PposHyperbolic { rho: f64, alpha: f64, beta: f64 },
    /// `F = −(ζ³ + c2ζ² + c1ζ + c0)`.
    PnegZeta { c0: f64, c1: f64, c2: f64, alpha: f64, beta: f64 },
    PnegSphereElliptic { k2: f64, rho: f64, alpha: f64, beta: f64 },
    PnegSphereTrig { roots: RootData, zeta0: f64, alpha: f64, beta: f64 },
    DullinMatveev { rho: f64, alpha: f64, beta: f64 },
    /// `half_domain` restricts θ to `(0, π/2)`, the projective-plane reading.
    GoryachevChaplygin { alpha: f64, beta: f64, half_domain: bool },
    Goryachev { alpha: f64, beta: f64 },
    PnegHyperbolic { rho: f64, alpha: f64, beta: f64 },
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Build(format!("constraint violated: {what}")))
    }
}

impl ModelSpec {
    pub fn family(&self) -> Family {
        match self {
            ModelSpec::Q0Zeta { .. } => Family::Q0Zeta,
            ModelSpec::Q0Sphere { .. } => Family::Q0Sphere,
            ModelSpec::Q0Hyperbolic { .. } => Family::Q0Hyperbolic,
            ModelSpec::P0Hyperbolic { .. } => Family::P0Hyperbolic,
            ModelSpec::P0Sphere { .. } => Family::P0Sphere,
            ModelSpec::P0Plane { .. } => Family::P0Plane,
            ModelSpec::PposZeta { .. } => Family::PposZeta,
            ModelSpec::PposSphere { .. } => Family::PposSphere,
            ModelSpec::PposHyperbolic { .. } => Family::PposHyperbolic,
            ModelSpec::PnegZeta { .. } => Family::PnegZeta,
            ModelSpec::PnegSphereElliptic { .. } => Family::PnegSphereElliptic,
            ModelSpec::PnegSphereTrig { .. } => Family::PnegSphereTrig,
            ModelSpec::DullinMatveev { .. } => Family::DullinMatveev,
            ModelSpec::GoryachevChaplygin { .. } => Family::GoryachevChaplygin,
            ModelSpec::Goryachev { .. } => Family::Goryachev,
            ModelSpec::PnegHyperbolic { .. } => Family::PnegHyperbolic,
        }
    }

    /// The two couplings of the spec.
    pub fn couplings(&self) -> (f64, f64) {
        match *self {
            ModelSpec::Q0Zeta { chi0, beta0, .. }
            | ModelSpec::Q0Sphere { chi0, beta0, .. }
            | ModelSpec::Q0Hyperbolic { chi0, beta0 } => (chi0, beta0),
            ModelSpec::P0Hyperbolic { alpha, beta, .. }
            | ModelSpec::P0Sphere { alpha, beta, .. }
            | ModelSpec::P0Plane { alpha, beta, .. }
            | ModelSpec::PposZeta { alpha, beta, .. }
            | ModelSpec::PposSphere { alpha, beta, .. }
            | ModelSpec::PposHyperbolic { alpha, beta, .. }
            | ModelSpec::PnegZeta { alpha, beta, .. }
            | ModelSpec::PnegSphereElliptic { alpha, beta, .. }
            | ModelSpec::PnegSphereTrig { alpha, beta, .. }
            | ModelSpec::DullinMatveev { alpha, beta, .. }
            | ModelSpec::GoryachevChaplygin { alpha, beta, .. }
            | ModelSpec::Goryachev { alpha, beta }
            | ModelSpec::PnegHyperbolic { alpha, beta, .. } => (alpha, beta),
        }
    }

    /// Checks the family's parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.couplings();
        require(a.is_finite() && b.is_finite(), "couplings finite")?;
        match *self {
            ModelSpec::Q0Zeta { c0, rho0, .. } => require(c0.is_finite() && rho0.is_finite(), "c0, rho0 finite"),
            ModelSpec::PposZeta { c0, c1, c2, .. } | ModelSpec::PnegZeta { c0, c1, c2, .. } => {
                require(c0.is_finite() && c1.is_finite() && c2.is_finite(), "c0, c1, c2 finite")
            }
            ModelSpec::Q0Sphere { k2, .. } => require(k2 > 0.0 && k2 < 1.0, "0 < k2 < 1"),
            ModelSpec::Q0Hyperbolic { .. } | ModelSpec::GoryachevChaplygin { .. } | ModelSpec::Goryachev { .. } => {
                Ok(())
            }
            ModelSpec::P0Hyperbolic { rho, .. } => require(rho > -1.0 && rho.is_finite(), "rho > -1"),
            ModelSpec::P0Sphere { rho, .. } => require(rho > 0.0 && rho < 1.0, "0 < rho < 1"),
            ModelSpec::P0Plane { rho, .. } | ModelSpec::PposHyperbolic { rho, .. } => {
                require(rho > 0.0 && rho.is_finite(), "rho > 0")
            }
            ModelSpec::PposSphere { k2, rho, .. } => {
                require(k2 > 0.0 && k2 < 1.0, "0 < k2 < 1")?;
                require(rho > 0.0 && rho.is_finite(), "rho > 0")
            }
            ModelSpec::PnegSphereElliptic { k2, rho, .. } => {
                require(k2 > 0.0 && k2 < 1.0, "0 < k2 < 1")?;
                require(rho > 1.0 && rho.is_finite(), "rho > 1")
            }
            ModelSpec::DullinMatveev { rho, .. } | ModelSpec::PnegHyperbolic { rho, .. } => {
                require(rho > 1.0 && rho.is_finite(), "rho > 1")
            }
            ModelSpec::PnegSphereTrig { roots, zeta0, .. } => {
                require(zeta0 > 0.0 && zeta0.is_finite(), "zeta0 > 0")?;
                match roots {
                    RootData::RealPair { z1, z2 } => require(zeta0 < z1 && z1 < z2, "0 < zeta0 < z1 < z2")?,
                    RootData::Degenerate { z1 } => require(zeta0 < z1, "0 < zeta0 < z1")?,
                    RootData::ComplexPair { re, im } => {
                        require(im != 0.0 && im.is_finite() && re.is_finite(), "complex pair with im != 0")?
                    }
                }
                let f = roots.cubic(zeta0);
                let [c0, c1, c2, _] = f.coeffs;
                let scale = 1.0 + c1 * c1 + 4.0 * (c0 * c2).abs();
                require(roots.g_at_zero(zeta0).abs() <= 1e-10 * scale, "G(0) = 0")
            }
        }
    }
}

/// Admissible region of a model's chart.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Domain {
    pub chart: Chart,
    pub x1: Interval,
    /// `None` when `x2` is a periodic angle.
    pub x2: Option<Interval>,
    /// Singular loci inside `x1`'s interval.
    pub excluded_x1: Vec<f64>,
    /// Finite sampling windows.
    pub window_x1: Interval,
    pub window_x2: Interval,
    /// Momenta are sampled in `[-momentum, momentum]`.
    pub momentum: f64,
    pub guard: f64,
}

impl Domain {
    fn new(chart: Chart, x1: Interval, excluded_x1: Vec<f64>) -> Self {
        let window_x1 = match (x1.lo.is_finite(), x1.hi.is_finite()) {
            (true, true) => x1,
            (true, false) => Interval::new(x1.lo, x1.lo + 4.0_f64.max(x1.lo.abs())),
            (false, true) => Interval::new(x1.hi - 4.0_f64.max(x1.hi.abs()), x1.hi),
            (false, false) => Interval::new(-2.0, 2.0),
        };
        let (x2, window_x2) = if chart.angular_x2() {
            (None, Interval::new(0.0, 2.0 * PI))
        } else {
            (Some(Interval::new(f64::NEG_INFINITY, f64::INFINITY)), Interval::new(-2.0, 2.0))
        };
        Self { chart, x1, x2, excluded_x1, window_x1, window_x2, momentum: 1.0, guard: GUARD }
    }

    /// The whole chart, for flows outside the catalog.
    pub fn unbounded(chart: Chart) -> Self {
        Self::new(chart, Interval::new(f64::NEG_INFINITY, f64::INFINITY), Vec::new())
    }

    /// Distance to the nearest endpoint or excluded locus, with its name.
    pub fn boundary_distance(&self, z: [f64; 4]) -> (f64, String) {
        let mut best = (f64::INFINITY, String::from("interior"));
        let mut consider = |d: f64, what: String| {
            if d < best.0 {
                best = (d, what);
            }
        };
        if self.x1.lo.is_finite() {
            consider(z[0] - self.x1.lo, format!("x1 = {}", self.x1.lo));
        }
        if self.x1.hi.is_finite() {
            consider(self.x1.hi - z[0], format!("x1 = {}", self.x1.hi));
        }
        for &e in &self.excluded_x1 {
            consider((z[0] - e).abs(), format!("singular locus x1 = {e}"));
        }
        if let Some(iv) = self.x2 {
            if iv.lo.is_finite() {
                consider(z[1] - iv.lo, format!("x2 = {}", iv.lo));
            }
            if iv.hi.is_finite() {
                consider(iv.hi - z[1], format!("x2 = {}", iv.hi));
            }
        }
        best
    }

    /// True when the point keeps at least the guard margin from the boundary.
    pub fn contains(&self, s: &PhaseState) -> bool {
        s.chart == self.chart && s.is_finite() && self.boundary_distance(s.to_array()).0 > self.guard
    }

    /// Maps `u ∈ [0,1)⁴` onto an admissible state.
    pub fn sample(&self, u: [f64; 4]) -> PhaseState {
        let lo = self.window_x1.lo.max(self.x1.lo + self.guard);
        let hi = self.window_x1.hi.min(self.x1.hi - self.guard);
        // Pieces of (lo, hi) left after removing guard balls around the
        // excluded loci.
        let mut pieces: Vec<(f64, f64)> = Vec::new();
        let mut start = lo;
        let mut cuts: Vec<f64> = self.excluded_x1.iter().copied().filter(|e| *e > lo && *e < hi).collect();
        cuts.sort_by(f64::total_cmp);
        for e in cuts {
            pieces.push((start, e - 2.0 * self.guard));
            start = e + 2.0 * self.guard;
        }
        pieces.push((start, hi));
        let total: f64 = pieces.iter().map(|(a, b)| (b - a).max(0.0)).sum();
        let mut t = u[0] * total;
        let mut x1 = pieces[0].0;
        for (a, b) in &pieces {
            let len = (b - a).max(0.0);
            if t <= len {
                x1 = a + t;
                break;
            }
            t -= len;
            x1 = *b;
        }
        let x2 = self.window_x2.lo + u[1] * (self.window_x2.hi - self.window_x2.lo);
        let m = self.momentum;
        PhaseState::new(self.chart, x1, x2, m * (2.0 * u[2] - 1.0), m * (2.0 * u[3] - 1.0))
    }

    /// The `i`-th point of an additive-recurrence (Kronecker) sequence.
    pub fn kronecker_state(&self, i: u64) -> PhaseState {
        const STEPS: [f64; 4] = [
            0.414_213_562_373_095_1,
            0.732_050_807_568_877_2,
            0.236_067_977_499_789_7,
            0.645_751_311_064_590_6,
        ];
        let u = STEPS.map(|a| {
            let v = 0.5 + a * i as f64;
            v - libm::floor(v)
        });
        self.sample(u)
    }
}

/// Where a model's observables come from.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Provenance {
    pub family: Family,
    pub form: String,
    /// Scalings of the `α` (or `χ0`) and `β` (or `β0`) groups of `Q`.
    pub scalings: [f64; 2],
    /// True when the scalings were fitted because the literal form failed
    /// the bracket gate.
    pub fitted: bool,
}

struct HKernel(Arc<System>);

impl Kernel for HKernel {
    fn eval<S: Scalar>(&self, z: [S; 4]) -> core::result::Result<S, String> {
        self.0.h(z)
    }
}

struct QKernel {
    system: Arc<System>,
    scalings: [f64; 2],
}

impl Kernel for QKernel {
    fn eval<S: Scalar>(&self, z: [S; 4]) -> core::result::Result<S, String> {
        let [k, a, b] = self.system.q_groups(z)?;
        Ok(k + a * self.scalings[0] + b * self.scalings[1])
    }
}

struct GroupKernel {
    system: Arc<System>,
    index: usize,
}

impl Kernel for GroupKernel {
    fn eval<S: Scalar>(&self, z: [S; 4]) -> core::result::Result<S, String> {
        Ok(self.system.q_groups(z)?[self.index])
    }
}

/// A built integrable system.
#[derive(Debug, Clone)]
pub struct Model {
    spec: ModelSpec,
    h: Observable,
    q: Observable,
    domain: Domain,
    manifold: Manifold,
    provenance: Provenance,
    system: Arc<System>,
}

fn q_observable(system: &Arc<System>, family: Family, scalings: [f64; 2]) -> Observable {
    Observable::new("Q", family.chart(), family.form(), QKernel { system: system.clone(), scalings })
}

impl Model {
    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family()
    }

    pub fn chart(&self) -> Chart {
        self.family().chart()
    }

    pub fn h(&self) -> &Observable {
        &self.h
    }

    pub fn q(&self) -> &Observable {
        &self.q
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn manifold(&self) -> Manifold {
        self.manifold
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Kinetic, `α` and `β` groups of `Q`, unscaled.
    pub fn q_groups(&self) -> [Observable; 3] {
        let names = ["Q_kinetic", "Q_alpha", "Q_beta"];
        [0, 1, 2].map(|index| {
            Observable::new(
                names[index],
                self.chart(),
                self.family().form(),
                GroupKernel { system: self.system.clone(), index },
            )
        })
    }

    /// The same model with other group scalings in `Q`; used to perturb a
    /// model on purpose.
    pub fn with_q_scalings(&self, scalings: [f64; 2]) -> Model {
        let mut m = self.clone();
        m.q = q_observable(&self.system, self.family(), scalings);
        m.provenance.scalings = scalings;
        m
    }

    pub fn sample_state(&self, u: [f64; 4]) -> PhaseState {
        self.domain.sample(u)
    }

    /// Largest scaled bracket over `states`.
    pub fn max_scaled_bracket(&self, states: &[PhaseState]) -> Result<f64> {
        states.iter().try_fold(0.0f64, |m, s| Ok(m.max(scaled_bracket(&self.h, &self.q, s)?)))
    }

    /// Momentum matrix `A` of `H = ½ pᵀA p + V`.
    pub fn kinetic_matrix(&self, x1: f64, x2: f64) -> Result<[[f64; 2]; 2]> {
        let col = |p1: f64, p2: f64| -> Result<[f64; 2]> {
            let g = self.h.gradient(&PhaseState::new(self.chart(), x1, x2, p1, p2))?;
            let g0 = self.h.gradient(&PhaseState::new(self.chart(), x1, x2, 0.0, 0.0))?;
            Ok([g[2] - g0[2], g[3] - g0[3]])
        };
        let (a, b) = (col(1.0, 0.0)?, col(0.0, 1.0)?);
        Ok([[a[0], b[0]], [a[1], b[1]]])
    }

    /// Conformal factor of the metric at a position; `1` for families
    /// without one.
    pub fn conformal_factor(&self, x1: f64, x2: f64) -> Result<f64> {
        let v = match *self.system {
            System::P0Hyperbolic { rho, .. } => rho + libm::cosh(x1),
            System::P0Sphere { rho, .. } => 1.0 + rho * libm::cos(x1),
            System::P0Plane { rho, .. } => 1.0 + rho * rho * (x1 * x1 + x2 * x2),
            System::Zeta { .. } => x1,
            System::Elliptic { k2, variant: Variant::Ppos { rho, .. } } => {
                let sn = crate::elliptic::jacobi(x1, k2)?.sn;
                rho + k2 * sn * sn
            }
            System::Elliptic { k2, variant: Variant::Pneg { rho, .. } } => {
                let sn = crate::elliptic::jacobi(x1, k2)?.sn;
                k2 * (rho - sn * sn)
            }
            System::Hyperbolic { variant: Variant::Ppos { rho, .. } } => {
                let t = libm::tanh(x1);
                rho + t * t
            }
            System::Hyperbolic { variant: Variant::Pneg { rho, .. } } => {
                let t = libm::tanh(x1);
                rho - t * t
            }
            _ => 1.0,
        };
        Ok(v)
    }
}

fn zeta_domain(f: &CubicPoly, weight: Weight, classified: Option<Interval>) -> Result<Interval> {
    if let Some(iv) = classified {
        return Ok(iv);
    }
    if let Some(iv) = positivity_interval(f, &companion_g(f), weight).interval {
        return Ok(iv);
    }
    // No Riemannian interval: fall back to where the observables are real.
    let unit = crate::poly::QuarticPoly::new([1.0, 0.0, 0.0, 0.0, 0.0]);
    positivity_interval(f, &unit, weight)
        .interval
        .ok_or_else(|| Error::Build("no interval where F (and the ζ weight) is positive".into()))
}

fn system_and_domain(spec: &ModelSpec) -> Result<(System, Domain, Manifold)> {
    let theta = |excluded: Vec<f64>| Domain::new(Chart::ThetaPhi, Interval::new(0.0, PI), excluded);
    let half_line = Domain::new(Chart::UPhi, Interval::new(0.0, f64::INFINITY), Vec::new());
    let elliptic = |k2: f64| -> Result<Domain> {
        Ok(Domain::new(Chart::UPhi, Interval::new(0.0, complete_elliptic_k(k2)?), Vec::new()))
    };
    Ok(match *spec {
        ModelSpec::Q0Zeta { c0, rho0, chi0, beta0 } => {
            let f = CubicPoly::q0(c0, rho0);
            let c = classify_q0(c0, rho0);
            let iv = zeta_domain(&f, Weight::None, c.interval.filter(|_| c.manifold.is_manifold()))?;
            let sys = System::Q0Zeta { f, g: companion_g(&f), chi0, beta0 };
            (sys, Domain::new(Chart::ZetaPhi, iv, Vec::new()), c.manifold)
        }
        ModelSpec::PposZeta { c0, c1, c2, alpha, beta } | ModelSpec::PnegZeta { c0, c1, c2, alpha, beta } => {
            let eps = if matches!(spec, ModelSpec::PposZeta { .. }) { Sign::Positive } else { Sign::Negative };
            let e = eps.as_f64();
            let f = CubicPoly::new(e * c0, e * c1, e * c2, e);
            let c = classify_general(eps, c0, c1, c2);
            let iv = zeta_domain(&f, Weight::Zeta, c.interval.filter(|_| c.manifold.is_manifold()))?;
            let sys = System::Zeta { eps: e, f, g: companion_g(&f), alpha, beta };
            (sys, Domain::new(Chart::ZetaPhi, iv, Vec::new()), c.manifold)
        }
        ModelSpec::Q0Sphere { k2, chi0, beta0 } => {
            (System::Elliptic { k2, variant: Variant::Q0 { chi0, beta0 } }, elliptic(k2)?, Manifold::S2)
        }
        ModelSpec::PposSphere { k2, rho, alpha, beta } => {
            (System::Elliptic { k2, variant: Variant::Ppos { rho, alpha, beta } }, elliptic(k2)?, Manifold::S2)
        }
        ModelSpec::PnegSphereElliptic { k2, rho, alpha, beta } => {
            (System::Elliptic { k2, variant: Variant::Pneg { rho, alpha, beta } }, elliptic(k2)?, Manifold::S2)
        }
        ModelSpec::Q0Hyperbolic { chi0, beta0 } => {
            (System::Hyperbolic { variant: Variant::Q0 { chi0, beta0 } }, half_line, Manifold::H2)
        }
        ModelSpec::PposHyperbolic { rho, alpha, beta } => {
            (System::Hyperbolic { variant: Variant::Ppos { rho, alpha, beta } }, half_line, Manifold::H2)
        }
        ModelSpec::PnegHyperbolic { rho, alpha, beta } => {
            (System::Hyperbolic { variant: Variant::Pneg { rho, alpha, beta } }, half_line, Manifold::H2)
        }
        ModelSpec::P0Hyperbolic { rho, alpha, beta } => {
            (System::P0Hyperbolic { rho, alpha, beta }, half_line, Manifold::H2)
        }
        ModelSpec::P0Sphere { rho, alpha, beta } => (System::P0Sphere { rho, alpha, beta }, theta(vec![]), Manifold::S2),
        ModelSpec::P0Plane { rho, alpha, beta } => (
            System::P0Plane { rho, alpha, beta },
            Domain::new(Chart::Cartesian, Interval::new(f64::NEG_INFINITY, f64::INFINITY), Vec::new()),
            Manifold::R2,
        ),
        ModelSpec::PnegSphereTrig { roots, zeta0, alpha, beta } => {
            let (s, p) = roots.sum_product();
            let sys = System::Trig { s: s / zeta0, p: p / (zeta0 * zeta0), alpha, beta };
            (sys, theta(vec![FRAC_PI_2]), Manifold::S2)
        }
        ModelSpec::DullinMatveev { rho, alpha, beta } => {
            (System::DullinMatveev { rho, alpha, beta }, theta(vec![]), Manifold::S2)
        }
        ModelSpec::GoryachevChaplygin { alpha, beta, half_domain } => {
            let sys = System::GoryachevChaplygin { alpha, beta };
            if half_domain {
                (sys, Domain::new(Chart::ThetaPhi, Interval::new(0.0, FRAC_PI_2), Vec::new()), Manifold::RP2)
            } else {
                let excluded = if beta != 0.0 { vec![FRAC_PI_2] } else { vec![] };
                (sys, theta(excluded), Manifold::S2)
            }
        }
        ModelSpec::Goryachev { alpha, beta } => (System::Goryachev { alpha, beta }, theta(vec![FRAC_PI_2]), Manifold::S2),
    })
}

fn gate_states(domain: &Domain, range: core::ops::Range<u64>) -> Vec<PhaseState> {
    range.map(|i| domain.kronecker_state(i)).collect()
}

/// Least-squares scalings `(sα, sβ)` minimizing `Σ ({H,Q_k} + sα{H,Q_α} + sβ{H,Q_β})²`.
///
/// A group whose bracket vanishes at every state keeps scaling 1.
pub fn fit_q_scalings(h: &Observable, groups: &[Observable; 3], states: &[PhaseState]) -> Result<[f64; 2]> {
    let mut rows = Vec::with_capacity(states.len());
    for s in states {
        let b = [
            poisson_bracket(h, &groups[0], s)?,
            poisson_bracket(h, &groups[1], s)?,
            poisson_bracket(h, &groups[2], s)?,
        ];
        let w = 1.0 / (1.0 + b[0].abs() + b[1].abs() + b[2].abs());
        rows.push(b.map(|x| x * w));
    }
    let dot = |i: usize, j: usize| rows.iter().map(|r| r[i] * r[j]).sum::<f64>();
    let (a11, a12, a22) = (dot(1, 1), dot(1, 2), dot(2, 2));
    let (r1, r2) = (-dot(0, 1), -dot(0, 2));
    let tiny = 1e-24;
    let scal = match (a11 > tiny, a22 > tiny) {
        (true, true) => {
            let det = a11 * a22 - a12 * a12;
            if det.abs() <= 1e-12 * a11 * a22 {
                [r1 / a11, 1.0]
            } else {
                [(r1 * a22 - r2 * a12) / det, (a11 * r2 - a12 * r1) / det]
            }
        }
        (true, false) => [r1 / a11, 1.0],
        (false, true) => [1.0, r2 / a22],
        (false, false) => [1.0, 1.0],
    };
    if scal.iter().all(|s| s.is_finite()) {
        Ok(scal)
    } else {
        Err(Error::Build("scaling fit is singular".into()))
    }
}

/// Builds the model and runs the integrability gate on it.
pub fn build(spec: &ModelSpec) -> Result<Model> {
    spec.validate()?;
    let family = spec.family();
    let (system, domain, manifold) = system_and_domain(spec)?;
    let system = Arc::new(system);
    let h = Observable::new("H", family.chart(), family.form(), HKernel(system.clone()));
    let mut model = Model {
        spec: *spec,
        q: q_observable(&system, family, [1.0, 1.0]),
        h,
        domain,
        manifold,
        provenance: Provenance { family, form: family.form().to_string(), scalings: [1.0, 1.0], fitted: false },
        system,
    };
    let probe = gate_states(&model.domain, 1..11);
    if model.max_scaled_bracket(&probe)? <= BRACKET_TOL {
        return Ok(model);
    }
    let scalings = fit_q_scalings(&model.h, &model.q_groups(), &probe)?;
    model = model.with_q_scalings(scalings);
    model.provenance.fitted = true;
    let fresh = gate_states(&model.domain, 11..1011);
    let worst = model.max_scaled_bracket(&fresh)?;
    if worst > BRACKET_TOL {
        return Err(Error::Build(format!(
            "{} fails the bracket gate even with fitted scalings {scalings:?} (max scaled bracket {worst:e})",
            family.name()
        )));
    }
    Ok(model)
}

/// Names accepted by [`preset`].
pub const PRESETS: [&str; 9] = [
    "goryachev-chaplygin",
    "goryachev",
    "dullin-matveev",
    "q0-sphere-demo",
    "q0-hyperbolic-demo",
    "p0-sphere-demo",
    "ppos-sphere-demo",
    "pneg-sphere-demo",
    "pneg-hyperbolic-demo",
];

const ALPHA: f64 = 1.0;
const BETA: f64 = 0.1;

/// Named, fully parameterized specs with couplings `α = 1`, `β = 1/10`.
pub fn preset(name: &str) -> Result<ModelSpec> {
    let classified = |c: crate::classify::Classification| {
        c.to_spec(ALPHA, BETA)
            .ok_or_else(|| Error::Build(format!("preset `{name}` does not land on a manifold")))
    };
    match name {
        "goryachev-chaplygin" => Ok(ModelSpec::GoryachevChaplygin { alpha: ALPHA, beta: BETA, half_domain: false }),
        "goryachev" => Ok(ModelSpec::Goryachev { alpha: ALPHA, beta: BETA }),
        "dullin-matveev" => Ok(ModelSpec::DullinMatveev { rho: 2.0, alpha: ALPHA, beta: BETA }),
        // F = ζ³ − 3ζ: roots −√3, 0, √3.
        "q0-sphere-demo" => classified(classify_q0(-1.0, 0.0)),
        // F = (ζ − 1)²(ζ + 2).
        "q0-hyperbolic-demo" => classified(classify_q0(-1.0, -1.0)),
        // F = −(ζ − 1)(ζ − 3).
        "p0-sphere-demo" => classified(crate::classify::classify_p0(-3.0, 4.0, -1.0)),
        // F = (ζ − 1)(ζ − 2)(ζ − 3).
        "ppos-sphere-demo" => classified(classify_general(Sign::Positive, -6.0, 11.0, -6.0)),
        // F = −(ζ + 1)(ζ − 1)(ζ − 3).
        "pneg-sphere-demo" => classified(classify_general(Sign::Negative, 3.0, -1.0, -3.0)),
        // F = (ζ − 1)²(3 − ζ).
        "pneg-hyperbolic-demo" => classified(classify_general(Sign::Negative, -3.0, 7.0, -5.0)),
        _ => Err(Error::Lookup { name: name.to_string(), valid: PRESETS.join(", ") }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LieAlgebra {
    So3,
    So21,
}

struct Generator {
    index: usize,
    hyperbolic: bool,
}

impl Kernel for Generator {
    fn eval<S: Scalar>(&self, z: [S; 4]) -> core::result::Result<S, String> {
        let [x1, phi, p1, p2] = z;
        let t = if self.hyperbolic { x1.tanh() } else { x1.tan() };
        Ok(system::generators(t, phi, p1, p2)[self.index])
    }
}

/// `(L1, L2, L3)` on the θ-φ chart or `(M1, M2, M3)` on the u-φ chart.
pub fn lie_generators(kind: LieAlgebra) -> [Observable; 3] {
    let (chart, prefix, hyperbolic) = match kind {
        LieAlgebra::So3 => (Chart::ThetaPhi, "L", false),
        LieAlgebra::So21 => (Chart::UPhi, "M", true),
    };
    [0, 1, 2].map(|index| {
        Observable::new(format!("{prefix}{}", index + 1), chart, "lie-generator", Generator { index, hyperbolic })
    })
}

