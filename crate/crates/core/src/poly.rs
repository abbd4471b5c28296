//! Cubic and quartic polynomials, real-root extraction and the companion
//! quartic `G = F'² − 2 F F''`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Roots closer than this (times `1 + max|root|`) are merged into one
/// multiple root.
pub const MULTIPLICITY_THRESHOLD: f64 = 1e-8;

/// Normalization sign `ε` of the cubic's leading coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }

    pub fn of(x: f64) -> Self {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// `F(ζ) = c0 + c1 ζ + c2 ζ² + c3 ζ³`; `c3` may vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CubicPoly {
    pub coeffs: [f64; 4],
}

/// `G(ζ) = g0 + g1 ζ + g2 ζ² + g3 ζ³ + g4 ζ⁴`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuarticPoly {
    pub coeffs: [f64; 5],
}

fn horner<S: Scalar>(coeffs: &[f64], x: S) -> S {
    let mut acc = S::cst(*coeffs.last().unwrap_or(&0.0));
    for &c in coeffs.iter().rev().skip(1) {
        acc = acc * x + c;
    }
    acc
}

impl CubicPoly {
    pub const fn new(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Self { coeffs: [c0, c1, c2, c3] }
    }

    /// `lead · (ζ − r0)(ζ − r1)(ζ − r2)`.
    pub fn from_roots(lead: f64, roots: [f64; 3]) -> Self {
        let [a, b, c] = roots;
        Self::new(-lead * a * b * c, lead * (a * b + b * c + a * c), -lead * (a + b + c), lead)
    }

    /// The q = 0 normalization `ζ³ + 3 c0 ζ − 2 ρ0`.
    pub fn q0(c0: f64, rho0: f64) -> Self {
        Self::new(-2.0 * rho0, 3.0 * c0, 0.0, 1.0)
    }

    pub fn eval<S: Scalar>(&self, x: S) -> S {
        horner(&self.coeffs, x)
    }

    pub fn derivative(&self) -> [f64; 3] {
        let [_, c1, c2, c3] = self.coeffs;
        [c1, 2.0 * c2, 3.0 * c3]
    }

    pub fn eval_derivative<S: Scalar>(&self, x: S) -> S {
        horner(&self.derivative(), x)
    }

    pub fn eval_second_derivative<S: Scalar>(&self, x: S) -> S {
        let [_, _, c2, c3] = self.coeffs;
        x * (6.0 * c3) + 2.0 * c2
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl QuarticPoly {
    pub const fn new(coeffs: [f64; 5]) -> Self {
        Self { coeffs }
    }

    pub fn eval<S: Scalar>(&self, x: S) -> S {
        horner(&self.coeffs, x)
    }

    pub fn derivative(&self) -> [f64; 4] {
        let g = self.coeffs;
        [g[1], 2.0 * g[2], 3.0 * g[3], 4.0 * g[4]]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// A real root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Root {
    pub value: f64,
    pub multiplicity: u8,
}

/// Real roots in ascending order plus an optional complex-conjugate pair
/// `re ± i·im` with `im > 0`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RootSet {
    pub real: Vec<Root>,
    pub complex_pair: Option<(f64, f64)>,
}

impl RootSet {
    pub fn degree(&self) -> usize {
        self.real.iter().map(|r| r.multiplicity as usize).sum::<usize>() + 2 * self.complex_pair.is_some() as usize
    }

    /// Root values repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.real
            .iter()
            .flat_map(|r| core::iter::repeat_n(r.value, r.multiplicity as usize))
            .collect()
    }

    pub fn all_simple(&self) -> bool {
        self.real.iter().all(|r| r.multiplicity == 1)
    }
}

/// `a·b − c·d` with one rounding (Kahan's difference of products).
fn diff_of_products(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let cd = c * d;
    let err = libm::fma(-c, d, cd);
    libm::fma(a, b, -cd) + err
}

fn trimmed(c: &[f64]) -> &[f64] {
    let end = c.iter().rposition(|&x| x != 0.0).map_or(0, |i| i + 1);
    &c[..end]
}

/// Running rounding-error bound of a Horner evaluation at `x`.
fn eval_error_bound(c: &[f64], x: f64) -> f64 {
    let ax = x.abs();
    let mut acc = 0.0;
    let mut pow = 1.0;
    for &ci in c {
        acc += ci.abs() * pow;
        pow *= ax;
    }
    8.0 * c.len() as f64 * f64::EPSILON * acc
}

fn derivative_of(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, &ci)| i as f64 * ci).collect()
}

fn merge_close(mut roots: Vec<Root>) -> Vec<Root> {
    roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    let scale = 1.0 + roots.iter().fold(0.0f64, |m, r| m.max(r.value.abs()));
    let mut merged: Vec<Root> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last_mut() {
            Some(last) if (r.value - last.value).abs() < MULTIPLICITY_THRESHOLD * scale => {
                let (m1, m2) = (last.multiplicity as f64, r.multiplicity as f64);
                last.value = (last.value * m1 + r.value * m2) / (m1 + m2);
                last.multiplicity += r.multiplicity;
            }
            _ => merged.push(r),
        }
    }
    merged
}

fn bisect_and_polish(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let slo = horner(c, lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = horner(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let dc = derivative_of(c);
    let mut x = 0.5 * (lo + hi);
    let mut fx = horner(c, x).abs();
    for _ in 0..3 {
        let d = horner(&dc, x);
        if d == 0.0 {
            break;
        }
        let next = x - horner(c, x) / d;
        let fnext = horner(c, next).abs();
        if !(lo..=hi).contains(&next) || fnext >= fx {
            break;
        }
        x = next;
        fx = fnext;
    }
    x
}

/// Real roots of a polynomial of degree ≤ 4 (coefficients low to high).
///
/// Critical points split the line into monotone segments, so each segment
/// holds at most one sign change. A critical point where the polynomial
/// vanishes to rounding accuracy is a multiple root.
pub(crate) fn real_roots(coeffs: &[f64]) -> Vec<Root> {
    let c = trimmed(coeffs);
    if c.len() <= 1 {
        return Vec::new();
    }
    // Exact roots at the origin.
    let zeros = c.iter().position(|&x| x != 0.0).unwrap_or(0);
    if zeros > 0 {
        let mut roots = real_roots(&c[zeros..]);
        roots.push(Root { value: 0.0, multiplicity: zeros as u8 });
        return merge_close(roots);
    }
    let deg = c.len() - 1;
    match deg {
        1 => alloc::vec![Root { value: -c[0] / c[1], multiplicity: 1 }],
        2 => {
            let (a, b, cc) = (c[2], c[1], c[0]);
            let disc = diff_of_products(b, b, 4.0 * a, cc);
            if disc.abs() <= 8.0 * f64::EPSILON * (b * b + (4.0 * a * cc).abs()) {
                return alloc::vec![Root { value: -b / (2.0 * a), multiplicity: 2 }];
            }
            if disc < 0.0 {
                return Vec::new();
            }
            let q = -0.5 * (b + libm::copysign(libm::sqrt(disc), b));
            let roots = alloc::vec![Root { value: q / a, multiplicity: 1 }, Root { value: cc / q, multiplicity: 1 }];
            merge_close(roots)
        }
        _ => {
            let critical = real_roots(&derivative_of(c));
            let lead = c[deg];
            let bound = 1.0 + c[..deg].iter().fold(0.0f64, |m, &x| m.max((x / lead).abs()));
            let mut roots = Vec::new();
            // (position, sign) breakpoints; sign 0 marks a tangential root.
            let mut marks: Vec<(f64, f64)> = Vec::with_capacity(critical.len() + 2);
            marks.push((-bound, horner(c, -bound).signum()));
            for r in &critical {
                let v = horner(c, r.value);
                if v.abs() <= eval_error_bound(c, r.value) {
                    roots.push(Root { value: r.value, multiplicity: r.multiplicity + 1 });
                    marks.push((r.value, 0.0));
                } else {
                    marks.push((r.value, v.signum()));
                }
            }
            marks.push((bound, horner(c, bound).signum()));
            for w in marks.windows(2) {
                let ((a, sa), (b, sb)) = (w[0], w[1]);
                if sa * sb < 0.0 && a < b {
                    roots.push(Root { value: bisect_and_polish(c, a, b), multiplicity: 1 });
                }
            }
            merge_close(roots)
        }
    }
}

/// Real roots (with multiplicities) and the complex pair of a cubic.
pub fn cubic_real_roots(f: &CubicPoly) -> Result<RootSet> {
    let Some(deg) = f.degree() else {
        return Err(Error::Argument("zero polynomial has no root set".into()));
    };
    if f.coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Argument("non-finite polynomial coefficient".into()));
    }
    let real = real_roots(&f.coeffs[..=deg]);
    let found: usize = real.iter().map(|r| r.multiplicity as usize).sum();
    let complex_pair = if deg >= 2 && found + 2 == deg {
        // Deflate the real roots to the quadratic factor.
        let mut q: Vec<f64> = f.coeffs[..=deg].to_vec();
        for r in real.iter().flat_map(|r| core::iter::repeat_n(r.value, r.multiplicity as usize)) {
            let n = q.len() - 1;
            let mut out = alloc::vec![0.0; n];
            out[n - 1] = q[n];
            for i in (0..n - 1).rev() {
                out[i] = q[i + 1] + r * out[i + 1];
            }
            q = out;
        }
        let (a, b, c) = (q[2], q[1], q[0]);
        let re = -b / (2.0 * a);
        let im = libm::sqrt((4.0 * a * c - b * b).max(0.0)) / (2.0 * a.abs());
        Some((re, im))
    } else {
        None
    };
    Ok(RootSet { real, complex_pair })
}

/// `Δ = c0³ + ρ0²` for the q = 0 cubic `ζ³ + 3 c0 ζ − 2 ρ0`.
pub fn discriminant_q0(c0: f64, rho0: f64) -> f64 {
    c0 * c0 * c0 + rho0 * rho0
}

/// `G = F'² − 2 F F''` by coefficient algebra.
pub fn companion_g(f: &CubicPoly) -> QuarticPoly {
    let [c0, c1, c2, c3] = f.coeffs;
    QuarticPoly::new([
        diff_of_products(c1, c1, 4.0 * c0, c2),
        -12.0 * c0 * c3,
        -6.0 * c1 * c3,
        -4.0 * c2 * c3,
        -3.0 * c3 * c3,
    ])
}

/// True iff `G' + 12 ε F` vanishes coefficient-wise (relative 1e-13).
pub fn check_g_prime_identity(f: &CubicPoly, g: &QuarticPoly, eps: Sign) -> bool {
    let dg = g.derivative();
    let e = eps.as_f64();
    let scale = 1.0 + f.max_abs_coeff().max(g.max_abs_coeff());
    dg.iter()
        .zip(f.coeffs.iter())
        .all(|(&d, &c)| (d + 12.0 * e * c).abs() <= 1e-13 * scale * (1.0 + d.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn values(r: &RootSet) -> Vec<(f64, u8)> {
        r.real.iter().map(|r| (r.value, r.multiplicity)).collect()
    }

    /// Independent oracle: dense sign-change scan plus bisection.
    fn scan_roots(f: &CubicPoly, lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let mut out = vec![];
        let h = (hi - lo) / n as f64;
        for i in 0..n {
            let (mut a, mut b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
            let (fa, fb) = (f.eval(a), f.eval(b));
            if fa == 0.0 {
                out.push(a);
                continue;
            }
            if fa * fb < 0.0 {
                for _ in 0..100 {
                    let m = 0.5 * (a + b);
                    if f.eval(m) * f.eval(a) <= 0.0 {
                        b = m
                    } else {
                        a = m
                    }
                }
                out.push(0.5 * (a + b));
            }
        }
        out
    }

    #[test]
    fn three_simple_roots() {
        let r = cubic_real_roots(&CubicPoly::new(0.0, -3.0, 0.0, 1.0)).unwrap();
        let v = values(&r);
        assert_eq!(v.len(), 3);
        let s3 = 3f64.sqrt();
        for (got, want) in v.iter().zip([-s3, 0.0, s3]) {
            assert!((got.0 - want).abs() < 1e-14 && got.1 == 1);
        }
        assert!(r.complex_pair.is_none());
    }

    #[test]
    fn triple_root_at_origin() {
        let r = cubic_real_roots(&CubicPoly::new(0.0, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(values(&r), vec![(0.0, 3)]);
    }

    #[test]
    fn double_root_detected() {
        // (ζ − 1)²(ζ − 4)
        let f = CubicPoly::new(-4.0, 9.0, -6.0, 1.0);
        let r = cubic_real_roots(&f).unwrap();
        let v = values(&r);
        assert_eq!(v.len(), 2);
        assert!((v[0].0 - 1.0).abs() < 1e-12 && v[0].1 == 2);
        assert!((v[1].0 - 4.0).abs() < 1e-12 && v[1].1 == 1);
        // Oracle: the scan sees only the sign change at 4; the double root
        // is a touch point where F and F' vanish together.
        let scanned = scan_roots(&f, -10.0, 10.0, 1000);
        assert_eq!(scanned.len(), 2, "{scanned:?}");
        assert!((scanned[1] - 4.0).abs() < 1e-12);
        assert!(f.eval(1.0) == 0.0 && f.eval_derivative(1.0) == 0.0);
    }

    #[test]
    fn one_real_root_and_complex_pair() {
        // Δ = 1 + 1 = 2 > 0 for c0 = 1, ρ0 = 1: ζ³ + 3ζ − 2.
        assert_eq!(discriminant_q0(1.0, 1.0), 2.0);
        let f = CubicPoly::q0(1.0, 1.0);
        let r = cubic_real_roots(&f).unwrap();
        assert_eq!(r.real.len(), 1);
        assert_eq!(r.real[0].multiplicity, 1);
        let scanned = scan_roots(&f, -10.0, 10.0, 997);
        assert_eq!(scanned.len(), 1);
        assert!((scanned[0] - r.real[0].value).abs() < 1e-12);
        let (re, im) = r.complex_pair.unwrap();
        assert!(im > 0.0);
        // Vieta: sum of roots is zero.
        assert!((r.real[0].value + 2.0 * re).abs() < 1e-12);
    }

    #[test]
    fn discriminant_values() {
        assert_eq!(discriminant_q0(0.0, 0.0), 0.0);
        assert_eq!(discriminant_q0(-1.0, 0.0), -1.0);
    }

    #[test]
    fn quadratic_and_linear_cases() {
        let r = cubic_real_roots(&CubicPoly::new(-2.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(r.real.len(), 2);
        let r = cubic_real_roots(&CubicPoly::new(1.0, 0.0, 1.0, 0.0)).unwrap();
        assert!(r.real.is_empty());
        assert_eq!(r.complex_pair, Some((0.0, 1.0)));
        let r = cubic_real_roots(&CubicPoly::new(1.0, -2.0, 1.0, 0.0)).unwrap();
        assert_eq!(values(&r), vec![(1.0, 2)]);
        let r = cubic_real_roots(&CubicPoly::new(3.0, 1.5, 0.0, 0.0)).unwrap();
        assert_eq!(values(&r), vec![(-2.0, 1)]);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(matches!(cubic_real_roots(&CubicPoly::new(0.0, 0.0, 0.0, 0.0)), Err(Error::Argument(_))));
    }

    #[test]
    fn companion_of_pure_cube() {
        let g = companion_g(&CubicPoly::new(0.0, 0.0, 0.0, 1.0));
        assert_eq!(g.coeffs, [0.0, 0.0, 0.0, 0.0, -3.0]);
    }

    #[test]
    fn companion_reproduces_q0_quartic() {
        // F = ζ³ + 3ζ, i.e. c0 = 1, ρ0 = 0: G = 9 − 18ζ² − 3ζ⁴.
        let g = companion_g(&CubicPoly::q0(1.0, 0.0));
        assert_eq!(g.coeffs, [9.0, 0.0, -18.0, 0.0, -3.0]);
        assert!(check_g_prime_identity(&CubicPoly::q0(1.0, 0.0), &g, Sign::Positive));
    }

    #[test]
    fn companion_of_quadratic_is_constant() {
        // F = ζ(ζ − 2): G = c1² − 4 c0 c2 = 4.
        let g = companion_g(&CubicPoly::new(0.0, -2.0, 1.0, 0.0));
        assert_eq!(g.coeffs, [4.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn g_prime_identity_sign_convention() {
        let monic = CubicPoly::from_roots(1.0, [0.5, 1.0, 2.0]);
        let g = companion_g(&monic);
        assert!(check_g_prime_identity(&monic, &g, Sign::Positive));
        assert!(!check_g_prime_identity(&monic, &g, Sign::Negative));
        let flipped = CubicPoly::from_roots(-1.0, [0.5, 1.0, 2.0]);
        assert!(check_g_prime_identity(&flipped, &companion_g(&flipped), Sign::Negative));
    }

    #[test]
    fn wrong_sign_quartic_fails() {
        let f = CubicPoly::new(0.0, 0.0, 0.0, 1.0);
        let g = QuarticPoly::new([0.0, 0.0, 0.0, 0.0, 3.0]);
        assert!(!check_g_prime_identity(&f, &g, Sign::Positive));
    }

    #[test]
    fn quartic_roots_through_critical_points() {
        // (x² − 1)(x² − 4)
        let r = real_roots(&[4.0, 0.0, -5.0, 0.0, 1.0]);
        let v: Vec<f64> = r.iter().map(|r| r.value).collect();
        assert_eq!(v.len(), 4);
        for (a, b) in v.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-13);
        }
        // (x − 1)³(x + 2): triple root through a double critical point.
        let r = real_roots(&[-2.0, 5.0, -3.0, -1.0, 1.0]);
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].multiplicity, 3);
    }

    proptest::proptest! {
        #[test]
        fn companion_satisfies_identity(c in proptest::array::uniform4(-10.0f64..10.0), neg in proptest::bool::ANY) {
            let lead = if neg { -1.0 } else { 1.0 };
            let f = CubicPoly::new(c[0], c[1], c[2], lead * c[3].abs().max(0.1));
            let g = companion_g(&f);
            let eps = if f.coeffs[3] > 0.0 { Sign::Positive } else { Sign::Negative };
            // G' = −12 c3 F, so rescale F to unit |c3| for the ε form.
            let unit = CubicPoly { coeffs: f.coeffs.map(|x| x / f.coeffs[3].abs()) };
            proptest::prop_assert!(check_g_prime_identity(&unit, &companion_g(&unit), eps));
            proptest::prop_assert_eq!(g.coeffs[4], -3.0 * f.coeffs[3] * f.coeffs[3]);
        }

        #[test]
        fn well_separated_roots_are_polished(r in proptest::array::uniform3(-5.0f64..5.0), lead in 0.2f64..4.0) {
            let mut r = r;
            r.sort_by(f64::total_cmp);
            proptest::prop_assume!(r[1] - r[0] > 1e-3 && r[2] - r[1] > 1e-3);
            let f = CubicPoly::from_roots(lead, r);
            let set = cubic_real_roots(&f).unwrap();
            proptest::prop_assert_eq!(set.real.len(), 3);
            let scale = 1.0 + f.max_abs_coeff();
            for root in &set.real {
                proptest::prop_assert!(f.eval(root.value).abs() <= 1e-12 * scale * scale);
            }
        }

        #[test]
        fn double_root_is_a_zero_of_g(a in -3.0f64..3.0, b in -3.0f64..3.0) {
            proptest::prop_assume!((a - b).abs() > 1e-2);
            let f = CubicPoly::from_roots(1.0, [a, a, b]);
            let set = cubic_real_roots(&f).unwrap();
            let double = set.real.iter().find(|r| r.multiplicity == 2);
            proptest::prop_assert!(double.is_some(), "{:?}", set);
            let g = companion_g(&f);
            let z = double.unwrap().value;
            proptest::prop_assert!(g.eval(z).abs() <= 1e-9 * (1.0 + g.max_abs_coeff()));
        }
    }
}
