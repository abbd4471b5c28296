//! Global geometry of the metric `ζ/F dζ² + 4ζF/G dφ²` (and its `q = 0`
//! counterpart): admissible interval, nature of its endpoints and the
//! surface the metric extends to.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::{Family, ModelSpec, RootData};
use crate::error::{Error, Result};
use crate::poly::{self, companion_g, cubic_real_roots, CubicPoly, QuarticPoly, Root, RootSet, Sign};

/// Tolerance for "G(0) = 0" relative to the size of its terms.
const G0_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Manifold {
    S2,
    H2,
    R2,
    RP2,
    #[cfg_attr(feature = "serde", serde(rename = "none"))]
    None,
}

impl Manifold {
    pub fn name(self) -> &'static str {
        match self {
            Manifold::S2 => "S2",
            Manifold::H2 => "H2",
            Manifold::R2 => "R2",
            Manifold::RP2 => "RP2",
            Manifold::None => "none",
        }
    }

    pub fn is_manifold(self) -> bool {
        self != Manifold::None
    }
}

/// How the metric behaves at an end of the admissible interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum EndpointKind {
    /// Simple root of `F` with `G = F'² > 0`: an apparent (polar) singularity.
    Pole,
    /// `G` vanishes while `F` does not.
    CurvatureSingularity,
    /// Infinite endpoint, or a multiple root of `F` at infinite distance.
    BoundaryAtInfinity,
    /// `ζ = 0` with `F(0) ≠ 0` and `G(0) ≠ 0`.
    OriginSingularity,
    /// `ζ = 0` where `F` or `G` vanishes, so the metric may extend across it.
    OriginExtension,
}

impl EndpointKind {
    /// Endpoints that do not obstruct a complete surface.
    pub fn is_regular(self) -> bool {
        matches!(self, EndpointKind::Pole | EndpointKind::BoundaryAtInfinity | EndpointKind::OriginExtension)
    }
}

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

/// Positivity weight applied to `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `F > 0, G > 0` (the `q = 0` metric).
    None,
    /// `ζF > 0, F > 0, G > 0`.
    Zeta,
}

/// Result of the sign analysis of `F` and `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct Positivity {
    /// Preferred component, `None` when the feasible set is empty.
    pub interval: Option<Interval>,
    pub endpoint_kinds: Vec<EndpointKind>,
    /// Every feasible component, left to right.
    pub components: Vec<Interval>,
}

impl Positivity {
    pub fn all_regular(&self) -> bool {
        self.interval.is_some() && self.endpoint_kinds.iter().all(|k| k.is_regular())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Discriminant {
    pub value: f64,
    /// Taken from the root structure: negative for three simple real
    /// roots, zero for a multiple root, positive for a complex pair.
    pub sign: Sign,
}

/// Derived quantities handed over to the model catalog.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChartParams {
    pub k2: Option<f64>,
    pub rho: Option<f64>,
    pub zeta0: Vec<f64>,
    pub root_data: Option<RootData>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Classification {
    pub discriminant: Discriminant,
    pub roots: RootSet,
    pub interval: Option<Interval>,
    pub endpoint_kinds: Vec<EndpointKind>,
    pub manifold: Manifold,
    pub chart_params: ChartParams,
    /// Model family realizing the verdict.
    pub regime: Option<Family>,
    pub notes: Vec<String>,
}

impl Classification {
    /// The model spec of the regime with couplings `(α, β)`; for the
    /// `q = 0` families these are `(χ0, β0)`.
    pub fn to_spec(&self, alpha: f64, beta: f64) -> Option<ModelSpec> {
        let p = &self.chart_params;
        let spec = match self.regime? {
            Family::Q0Sphere => ModelSpec::Q0Sphere { k2: p.k2?, chi0: alpha, beta0: beta },
            Family::Q0Hyperbolic => ModelSpec::Q0Hyperbolic { chi0: alpha, beta0: beta },
            Family::P0Hyperbolic => ModelSpec::P0Hyperbolic { rho: p.rho?, alpha, beta },
            Family::P0Sphere => ModelSpec::P0Sphere { rho: p.rho?.abs(), alpha, beta },
            Family::P0Plane => ModelSpec::P0Plane { rho: p.rho.unwrap_or(1.0), alpha, beta },
            Family::PposSphere => ModelSpec::PposSphere { k2: p.k2?, rho: p.rho?, alpha, beta },
            Family::PposHyperbolic => ModelSpec::PposHyperbolic { rho: p.rho?, alpha, beta },
            Family::PnegSphereElliptic => ModelSpec::PnegSphereElliptic { k2: p.k2?, rho: p.rho?, alpha, beta },
            Family::PnegSphereTrig => {
                ModelSpec::PnegSphereTrig { roots: p.root_data?, zeta0: *p.zeta0.first()?, alpha, beta }
            }
            Family::DullinMatveev => ModelSpec::DullinMatveev { rho: p.rho?, alpha, beta },
            Family::GoryachevChaplygin => ModelSpec::GoryachevChaplygin { alpha, beta, half_domain: false },
            Family::Goryachev => ModelSpec::Goryachev { alpha, beta },
            Family::PnegHyperbolic => ModelSpec::PnegHyperbolic { rho: p.rho?, alpha, beta },
            Family::Q0Zeta | Family::PposZeta | Family::PnegZeta => return None,
        };
        Some(spec)
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= poly::MULTIPLICITY_THRESHOLD * (1.0 + a.abs().max(b.abs()))
}

/// A breakpoint of the sign analysis and what vanishes there.
#[derive(Debug, Clone, Copy)]
struct Break {
    at: f64,
    f_mult: u8,
    g_root: bool,
    origin: bool,
}

fn breakpoints(f_roots: &[Root], g_roots: &[Root], weight: Weight) -> Vec<Break> {
    let mut out: Vec<Break> = Vec::new();
    let mut add = |at: f64, f_mult: u8, g_root: bool, origin: bool| {
        if let Some(b) = out.iter_mut().find(|b| close(b.at, at)) {
            b.f_mult = b.f_mult.max(f_mult);
            b.g_root |= g_root;
            b.origin |= origin;
            if origin {
                b.at = 0.0;
            }
        } else {
            out.push(Break { at, f_mult, g_root, origin });
        }
    };
    for r in f_roots {
        add(r.value, r.multiplicity, false, false);
    }
    for r in g_roots {
        add(r.value, 0, true, false);
    }
    if weight == Weight::Zeta {
        add(0.0, 0, false, true);
    }
    out.sort_by(|a, b| a.at.total_cmp(&b.at));
    out
}

fn feasible(f: &CubicPoly, g: &QuarticPoly, weight: Weight, x: f64) -> bool {
    let fx = f.eval(x);
    let w = match weight {
        Weight::None => true,
        Weight::Zeta => x > 0.0,
    };
    w && fx > 0.0 && g.eval(x) > 0.0
}

fn kind_at(b: &Break, f: &CubicPoly, g: &QuarticPoly, weight: Weight) -> EndpointKind {
    if weight == Weight::Zeta && b.origin {
        let (f0, g0) = (f.coeffs[0], g.coeffs[0]);
        return if f0 != 0.0 && g0.abs() > G0_TOL * (1.0 + g.max_abs_coeff()) && b.f_mult == 0 {
            EndpointKind::OriginSingularity
        } else {
            EndpointKind::OriginExtension
        };
    }
    match b.f_mult {
        0 => EndpointKind::CurvatureSingularity,
        1 => EndpointKind::Pole,
        _ => EndpointKind::BoundaryAtInfinity,
    }
}

/// Components of `{F > 0, G > 0}` (optionally weighted by `ζ`), split at
/// every root of `F`, `G` and, under the weight, at `ζ = 0`.
///
/// The preferred component is the first whose endpoints are all regular,
/// otherwise the leftmost one.
pub fn positivity_interval(f: &CubicPoly, g: &QuarticPoly, weight: Weight) -> Positivity {
    let f_roots = poly::real_roots(&f.coeffs);
    let g_roots = poly::real_roots(&g.coeffs);
    let breaks = breakpoints(&f_roots, &g_roots, weight);
    let mut comps: Vec<(Interval, [EndpointKind; 2])> = Vec::new();
    let n = breaks.len();
    for i in 0..=n {
        let lo = if i == 0 { None } else { Some(breaks[i - 1]) };
        let hi = if i == n { None } else { Some(breaks[i]) };
        let probe = match (lo, hi) {
            (Some(a), Some(b)) => 0.5 * (a.at + b.at),
            (Some(a), None) => a.at + 1.0 + a.at.abs(),
            (None, Some(b)) => b.at - 1.0 - b.at.abs(),
            (None, None) => 0.0,
        };
        if !feasible(f, g, weight, probe) {
            continue;
        }
        let kind = |b: Option<Break>| b.map_or(EndpointKind::BoundaryAtInfinity, |b| kind_at(&b, f, g, weight));
        let iv = Interval::new(lo.map_or(f64::NEG_INFINITY, |b| b.at), hi.map_or(f64::INFINITY, |b| b.at));
        comps.push((iv, [kind(lo), kind(hi)]));
    }
    let best = comps
        .iter()
        .find(|(_, k)| k.iter().all(|k| k.is_regular()))
        .or(comps.first())
        .cloned();
    Positivity {
        interval: best.map(|b| b.0),
        endpoint_kinds: best.map(|b| b.1.to_vec()).unwrap_or_default(),
        components: comps.into_iter().map(|c| c.0).collect(),
    }
}

/// `(p/3)³ + (q/2)²` of the depressed form of `ζ³ + c2ζ² + c1ζ + c0`.
pub fn monic_discriminant(c0: f64, c1: f64, c2: f64) -> f64 {
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    (p / 3.0) * (p / 3.0) * (p / 3.0) + 0.25 * q * q
}

fn structural_sign(roots: &RootSet) -> Sign {
    if roots.complex_pair.is_some() {
        Sign::Positive
    } else if roots.all_simple() && roots.real.len() >= 2 {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

struct Builder {
    f: CubicPoly,
    g: QuarticPoly,
    weight: Weight,
    c: Classification,
}

impl Builder {
    fn new(f: CubicPoly, weight: Weight, value: f64) -> Result<Self> {
        let roots = cubic_real_roots(&f)?;
        let sign = structural_sign(&roots);
        Ok(Self {
            g: companion_g(&f),
            f,
            weight,
            c: Classification {
                discriminant: Discriminant { value, sign },
                roots,
                interval: None,
                endpoint_kinds: Vec::new(),
                manifold: Manifold::None,
                chart_params: ChartParams::default(),
                regime: None,
                notes: Vec::new(),
            },
        })
    }

    fn endpoint(&self, x: f64) -> EndpointKind {
        if !x.is_finite() {
            return EndpointKind::BoundaryAtInfinity;
        }
        let f_mult = self.c.roots.real.iter().find(|r| close(r.value, x)).map_or(0, |r| r.multiplicity);
        let g_root = self.g.eval(x).abs() <= 1e-9 * (1.0 + self.g.max_abs_coeff()) * libm::pow(1.0 + x.abs(), 4.0);
        let b = Break { at: x, f_mult, g_root, origin: x == 0.0 };
        kind_at(&b, &self.f, &self.g, self.weight)
    }

    fn verdict(mut self, manifold: Manifold, family: Family, lo: f64, hi: f64) -> Classification {
        self.c.endpoint_kinds = vec![self.endpoint(lo), self.endpoint(hi)];
        self.c.interval = Some(Interval::new(lo, hi));
        self.c.manifold = manifold;
        self.c.regime = Some(family);
        self.c
    }

    /// No manifold: report the sign analysis for diagnostics.
    fn reject(mut self, note: impl Into<String>) -> Classification {
        let pos = positivity_interval(&self.f, &self.g, self.weight);
        self.c.interval = pos.interval;
        self.c.endpoint_kinds = pos.endpoint_kinds;
        if let Some(iv) = pos.interval {
            if let Some(at) = [iv.lo, iv.hi]
                .into_iter()
                .zip(self.c.endpoint_kinds.iter())
                .find(|(_, k)| **k == EndpointKind::CurvatureSingularity)
                .map(|(x, _)| x)
            {
                self.c.notes.push(format!("curvature singularity at zeta = {at}"));
            }
        }
        self.c.notes.push(note.into());
        self.c
    }

    fn note(&mut self, s: impl Into<String>) {
        self.c.notes.push(s.into());
    }
}

/// The `q = 0` family with `F = ζ³ + 3c0ζ − 2ρ0` and `Δ = c0³ + ρ0²`.
pub fn classify_q0(c0: f64, rho0: f64) -> Classification {
    let f = CubicPoly::q0(c0, rho0);
    let b = match Builder::new(f, Weight::None, poly::discriminant_q0(c0, rho0)) {
        Ok(b) => b,
        Err(e) => return invalid(e),
    };
    let roots = b.c.roots.clone();
    match (b.c.discriminant.sign, roots.real.as_slice()) {
        (Sign::Negative, [z0, z1, z2]) => {
            let (z0, z1, z2) = (z0.value, z1.value, z2.value);
            let mut b = b;
            b.c.chart_params.k2 = Some((z1 - z0) / (z2 - z0));
            b.verdict(Manifold::S2, Family::Q0Sphere, z0, z1)
        }
        (Sign::Zero, rs) => {
            let Some(double) = rs.iter().find(|r| r.multiplicity == 2) else {
                return b.reject("triple root: G ≤ 0 everywhere");
            };
            let z1 = double.value;
            if z1 > 0.0 {
                b.verdict(Manifold::H2, Family::Q0Hyperbolic, -2.0 * z1, z1)
            } else if z1 == 0.0 {
                b.reject("double root at the origin: G ≤ 0")
            } else {
                b.reject("double root below zero: positivity ends at a curvature singularity")
            }
        }
        _ => b.reject("single real root: positivity ends at a curvature singularity"),
    }
}

fn invalid(e: Error) -> Classification {
    Classification {
        discriminant: Discriminant { value: f64::NAN, sign: Sign::Zero },
        roots: RootSet { real: Vec::new(), complex_pair: None },
        interval: None,
        endpoint_kinds: Vec::new(),
        manifold: Manifold::None,
        chart_params: ChartParams::default(),
        regime: None,
        notes: vec![format!("{e}")],
    }
}

/// The `p = 0` family, `F = c0 + c1ζ + c2ζ²`, `G = c1² − 4c0c2`.
///
/// The discriminant reported here is `G` itself.
pub fn classify_p0(c0: f64, c1: f64, c2: f64) -> Classification {
    let f = CubicPoly::new(c0, c1, c2, 0.0);
    let g_const = c1 * c1 - 4.0 * c0 * c2;
    let mut b = match Builder::new(f, Weight::Zeta, g_const) {
        Ok(b) => b,
        Err(e) => return invalid(e),
    };
    // Sign tag of a quadratic follows the usual convention here.
    b.c.discriminant.sign = Sign::of(g_const);
    if g_const <= 0.0 {
        return b.reject("G = c1² − 4c0c2 ≤ 0");
    }
    let roots: Vec<f64> = b.c.roots.real.iter().map(|r| r.value).collect();
    if c2 > 0.0 {
        let (z1, z2) = (roots[0], roots[1]);
        if z2 > 0.0 {
            b.c.chart_params.rho = Some((z2 + z1) / (z2 - z1));
            return b.verdict(Manifold::H2, Family::P0Hyperbolic, z2, f64::INFINITY);
        }
        return b.reject("c2 > 0 needs the larger root positive");
    }
    if c2 < 0.0 {
        let (z1, z2) = (roots[0], roots[1]);
        if (z1 > 0.0) || (z2 < 0.0) {
            let rho = (z2 - z1) / (z2 + z1);
            if rho < 0.0 {
                b.note("both roots negative: rho < 0, the conformal factor uses |rho| after theta -> pi - theta");
            }
            b.c.chart_params.rho = Some(rho);
            // The endpoints are simple roots of F with G > 0.
            b.weight = Weight::None;
            return b.verdict(Manifold::S2, Family::P0Sphere, z1, z2);
        }
        return b.reject("c2 < 0 needs both roots on one side of zero");
    }
    // c2 = 0: F = c1(ζ − ζ1).
    let z1 = -c0 / c1;
    if c1 > 0.0 && z1 > 0.0 {
        return b.verdict(Manifold::R2, Family::P0Plane, z1, f64::INFINITY);
    }
    if c1 > 0.0 && z1 == 0.0 {
        return b.reject("root at the origin: the flat chart needs a half-angle potential");
    }
    b.reject("zeta = 0 is a curvature singularity")
}

fn g_at_zero_small(c0: f64, c1: f64, c2: f64) -> bool {
    (c1 * c1 - 4.0 * c0 * c2).abs() <= G0_TOL * (1.0 + c1 * c1 + 4.0 * (c0 * c2).abs())
}

/// The rescaled families `F = ε(ζ³ + c2ζ² + c1ζ + c0)` with `ε = ±1`;
/// `ε = 0` falls back to the quadratic family.
pub fn classify_general(eps: Sign, c0: f64, c1: f64, c2: f64) -> Classification {
    let e = match eps {
        Sign::Zero => return classify_p0(c0, c1, c2),
        s => s.as_f64(),
    };
    let f = CubicPoly::new(e * c0, e * c1, e * c2, e);
    let mut b = match Builder::new(f, Weight::Zeta, monic_discriminant(c0, c1, c2)) {
        Ok(b) => b,
        Err(e) => return invalid(e),
    };
    let roots = b.c.roots.clone();
    let real: Vec<(f64, u8)> = roots.real.iter().map(|r| (r.value, r.multiplicity)).collect();
    let g0_zero = g_at_zero_small(c0, c1, c2);

    if eps == Sign::Positive {
        return match real.as_slice() {
            [(z0, 1), (z1, 1), (z2, 1)] if *z0 > 0.0 => {
                b.c.chart_params.k2 = Some((z1 - z0) / (z2 - z0));
                b.c.chart_params.rho = Some(z0 / (z2 - z0));
                b.verdict(Manifold::S2, Family::PposSphere, *z0, *z1)
            }
            [(z0, 1), (z1, 2)] if *z0 > 0.0 && z0 < z1 => {
                b.c.chart_params.rho = Some(z0 / (z1 - z0));
                b.verdict(Manifold::H2, Family::PposHyperbolic, *z0, *z1)
            }
            _ => b.reject("no admissible ordering for eps = +1"),
        };
    }

    match (real.as_slice(), roots.complex_pair) {
        ([(r0, 1), (r1, 1), (r2, 1)], None) => {
            let (r0, r1, r2) = (*r0, *r1, *r2);
            if r0 == 0.0 && r1 > 0.0 {
                b.c.chart_params.rho = Some((r2 + r1) / (r2 - r1));
                return b.verdict(Manifold::S2, Family::DullinMatveev, r1, r2);
            }
            if r0 > 0.0 && g0_zero {
                b.note(format!("the elliptic chart on ({r1}, {r2}) is also a sphere"));
                b.c.chart_params.zeta0 = vec![r0];
                b.c.chart_params.root_data = Some(RootData::RealPair { z1: r1, z2: r2 });
                return b.verdict(Manifold::S2, Family::PnegSphereTrig, 0.0, r0);
            }
            if r1 > 0.0 {
                b.c.chart_params.k2 = Some((r2 - r1) / (r2 - r0));
                b.c.chart_params.rho = Some(r2 / (r2 - r1));
                return b.verdict(Manifold::S2, Family::PnegSphereElliptic, r1, r2);
            }
            b.reject("middle root not positive: no known regime for this ordering")
        }
        ([(z, 2), (r, 1)], None) | ([(r, 1), (z, 2)], None) => {
            let (z1, z0) = (*z, *r);
            if z1 == 0.0 && z0 > 0.0 {
                return b.verdict(Manifold::S2, Family::GoryachevChaplygin, 0.0, z0);
            }
            if z1 > 0.0 && z0 > 0.0 && z0 < z1 && g0_zero {
                b.c.chart_params.zeta0 = vec![z0];
                b.c.chart_params.root_data = Some(RootData::Degenerate { z1 });
                return b.verdict(Manifold::S2, Family::PnegSphereTrig, 0.0, z0);
            }
            if z1 > 0.0 && z1 < z0 {
                b.c.chart_params.rho = Some(z0 / (z0 - z1));
                return b.verdict(Manifold::H2, Family::PnegHyperbolic, z1, z0);
            }
            b.reject("no admissible ordering for a double root")
        }
        ([(z0, 1)], Some((re, im))) => {
            let z0 = *z0;
            if z0 > 0.0 && g0_zero {
                let m2 = re * re + im * im;
                b.c.chart_params.zeta0 = vec![z0];
                b.c.chart_params.root_data = Some(RootData::ComplexPair { re, im });
                let goryachev =
                    (z0 + 2.0 * re).abs() <= 1e-9 * (1.0 + z0) && (z0 * z0 - m2).abs() <= 1e-9 * (1.0 + m2);
                let family = if goryachev { Family::Goryachev } else { Family::PnegSphereTrig };
                return b.verdict(Manifold::S2, family, 0.0, z0);
            }
            b.reject("single real root without G(0) = 0")
        }
        _ => b.reject("triple root: no admissible interval"),
    }
}

/// Admissible `ζ0` making `G(0) = 0` for the trigonometric sphere charts.
pub fn solve_zeta0(roots: RootData) -> Result<Vec<f64>> {
    match roots {
        RootData::RealPair { z1, z2 } => {
            if !(0.0 < z1 && z1 < z2) {
                return Err(Error::Argument(format!("need 0 < z1 < z2, got ({z1}, {z2})")));
            }
            let s = libm::sqrt(z1) + libm::sqrt(z2);
            Ok(vec![z1 * z2 / (s * s)])
        }
        RootData::Degenerate { z1 } => {
            if !(z1 > 0.0) {
                return Err(Error::Argument(format!("need z1 > 0, got {z1}")));
            }
            Ok(vec![z1 / 4.0])
        }
        RootData::ComplexPair { re, im } => {
            if im == 0.0 || !im.is_finite() || !re.is_finite() {
                return Err(Error::Argument(format!("complex pair needs a finite nonzero imaginary part, got {im}")));
            }
            let m2 = re * re + im * im;
            let m = libm::sqrt(m2);
            let mut out: Vec<f64> = [2.0 * re + 2.0 * m, 2.0 * re - 2.0 * m]
                .into_iter()
                .map(|den| m2 / den)
                .filter(|v| v.is_finite() && *v > 0.0)
                .collect();
            out.sort_by(f64::total_cmp);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_three_roots() {
        let c = classify_q0(-1.0, 0.0);
        assert_eq!(c.manifold, Manifold::S2);
        let iv = c.interval.unwrap();
        assert!((iv.lo + 3f64.sqrt()).abs() < 1e-12 && iv.hi.abs() < 1e-12);
        assert!((c.chart_params.k2.unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(c.endpoint_kinds, vec![EndpointKind::Pole, EndpointKind::Pole]);
        assert_eq!(c.discriminant.sign, Sign::Negative);
    }

    #[test]
    fn q0_degenerate_and_single_root() {
        let c = classify_q0(-1.0, 1.0);
        assert_eq!(c.discriminant.value, 0.0);
        assert_eq!(c.manifold, Manifold::None);
        let c = classify_q0(-1.0, -1.0);
        assert_eq!(c.manifold, Manifold::H2);
        let iv = c.interval.unwrap();
        assert!((iv.lo + 2.0).abs() < 1e-9 && (iv.hi - 1.0).abs() < 1e-9);
        assert_eq!(c.endpoint_kinds, vec![EndpointKind::Pole, EndpointKind::BoundaryAtInfinity]);
        let c = classify_q0(1.0, 1.0);
        assert_eq!(c.manifold, Manifold::None);
        assert_eq!(c.endpoint_kinds[1], EndpointKind::CurvatureSingularity);
    }

    #[test]
    fn p0_cases() {
        let c = classify_p0(2.0, -3.0, 1.0);
        assert_eq!(c.manifold, Manifold::H2);
        assert!((c.chart_params.rho.unwrap() - 3.0).abs() < 1e-12);
        let c = classify_p0(-3.0, 4.0, -1.0);
        assert_eq!(c.manifold, Manifold::S2);
        assert!((c.chart_params.rho.unwrap() - 0.5).abs() < 1e-12);
        let c = classify_p0(1.0, 1.0, 0.0);
        assert_eq!(c.manifold, Manifold::None);
        let c = classify_p0(-1.0, 1.0, 0.0);
        assert_eq!(c.manifold, Manifold::R2);
    }

    #[test]
    fn general_named_regimes() {
        let c = classify_general(Sign::Negative, 0.0, 0.0, -1.0);
        assert_eq!(c.regime, Some(Family::GoryachevChaplygin));
        assert_eq!(c.interval, Some(Interval::new(0.0, 1.0)));
        assert_eq!(c.endpoint_kinds, vec![EndpointKind::OriginExtension, EndpointKind::Pole]);
        // roots {0, 1, 3}: monic ζ³ − 4ζ² + 3ζ
        let c = classify_general(Sign::Negative, 0.0, 3.0, -4.0);
        assert_eq!(c.regime, Some(Family::DullinMatveev));
        assert!((c.chart_params.rho.unwrap() - 2.0).abs() < 1e-12);
        let c = classify_general(Sign::Positive, -6.0, 11.0, -6.0);
        assert_eq!(c.regime, Some(Family::PposSphere));
        assert!((c.chart_params.k2.unwrap() - 0.5).abs() < 1e-12);
        assert!((c.chart_params.rho.unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zeta0_values() {
        let z = solve_zeta0(RootData::RealPair { z1: 1.0, z2: 4.0 }).unwrap();
        assert!((z[0] - 4.0 / 9.0).abs() < 1e-15);
        let (z1, z2, z0) = (1.0f64, 4.0f64, z[0]);
        let g0 = (z1 - z2).powi(2) * z0 * z0 - 2.0 * z1 * z2 * (z1 + z2) * z0 + z1 * z1 * z2 * z2;
        assert!(g0.abs() < 1e-12);
        assert_eq!(solve_zeta0(RootData::Degenerate { z1: 1.0 }).unwrap(), vec![0.25]);
        assert_eq!(solve_zeta0(RootData::ComplexPair { re: 0.0, im: 1.0 }).unwrap(), vec![0.5]);
        assert!(solve_zeta0(RootData::RealPair { z1: 2.0, z2: 1.0 }).is_err());
        assert!(solve_zeta0(RootData::ComplexPair { re: 1.0, im: 0.0 }).is_err());
    }

    #[test]
    fn positivity_examples() {
        let f = CubicPoly::new(0.0, -3.0, 0.0, 1.0);
        let p = positivity_interval(&f, &companion_g(&f), Weight::None);
        let iv = p.interval.unwrap();
        assert!((iv.lo + 3f64.sqrt()).abs() < 1e-12 && iv.hi.abs() < 1e-15);
        assert_eq!(p.endpoint_kinds, vec![EndpointKind::Pole, EndpointKind::Pole]);
        assert_eq!(p.components.len(), 2);

        let f = CubicPoly::new(0.0, 0.0, 1.0, -1.0);
        let p = positivity_interval(&f, &companion_g(&f), Weight::Zeta);
        assert_eq!(p.interval, Some(Interval::new(0.0, 1.0)));
        assert_eq!(p.endpoint_kinds, vec![EndpointKind::OriginExtension, EndpointKind::Pole]);

        // Δ > 0 in the q = 0 family: (ζ0, ζ̂) with ζ̂ a zero of G.
        let f = CubicPoly::q0(1.0, 1.0);
        let g = companion_g(&f);
        let p = positivity_interval(&f, &g, Weight::None);
        let iv = p.interval.unwrap();
        assert_eq!(p.endpoint_kinds, vec![EndpointKind::Pole, EndpointKind::CurvatureSingularity]);
        assert!(f.eval(iv.lo).abs() < 1e-12 && g.eval(iv.hi).abs() < 1e-9);
        assert!(!p.all_regular());
    }
}
