//! Appell's F1: double series with jet arguments, the Euler integral by
//! Gauss–Jacobi quadrature, the Picard period integral and the K-integrals of
//! the Picard curve.
//!
//! Quadrature rules are built once per `(exponents, nodes)` and cached
//! process-wide.  Integrals are refined by doubling the node count until two
//! successive estimates agree.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{compose, Jet, MultiIndex};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Hard cap on the number of double-series terms.
pub const SERIES_TERM_CAP: usize = 10_000;
/// Relative size of three consecutive anti-diagonals that ends the series.
pub const SERIES_TAIL_TOL: f64 = 1e-17;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z) for complex `z`, by the Lanczos approximation with reflection.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole("gamma at a nonpositive integer"));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi / ((pi * z).sin() * gamma_unchecked(ONE - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: Complex64, n: usize) -> Complex64 {
    (0..n).fold(ONE, |acc, k| acc * (a + k as f64))
}

fn is_nonpositive_integer(c: Complex64) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round()
}

/// The parameters `(a; b, b′; c)` of F1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct F1Params {
    pub a: Complex64,
    pub b: Complex64,
    pub bprime: Complex64,
    pub c: Complex64,
}

impl F1Params {
    pub fn new(a: Complex64, b: Complex64, bprime: Complex64, c: Complex64) -> Self {
        Self { a, b, bprime, c }
    }

    pub fn real(a: f64, b: f64, bprime: f64, c: f64) -> Self {
        let r = |v| Complex64::new(v, 0.0);
        Self::new(r(a), r(b), r(bprime), r(c))
    }

    /// Parameters of the `(i, j)`-th partial derivative.
    fn shifted(&self, i: usize, j: usize) -> Self {
        let k = (i + j) as f64;
        Self::new(
            self.a + k,
            self.b + i as f64,
            self.bprime + j as f64,
            self.c + k,
        )
    }
}

/// Node count and stopping tolerance for the adaptive quadratures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Starting node count; rounded up to an even number of at least 8.
    pub nodes: usize,
    /// Largest node count tried before giving up.
    pub max_nodes: usize,
    /// Relative agreement required between successive refinements.
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes: 32,
            max_nodes: 1024,
            tol: 1e-13,
        }
    }
}

type Rule = Arc<Vec<(f64, f64)>>;
type RuleCache = Mutex<HashMap<(u64, u64, usize), Rule>>;

fn jacobi_rule(alpha: f64, beta: f64, n: usize) -> Result<Rule> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let key = (alpha.to_bits(), beta.to_bits(), n);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("quadrature cache").get(&key) {
        return Ok(r.clone());
    }
    let fa = FiniteAboveNegOneF64::new(alpha)
        .ok_or_else(|| Error::Domain(format!("Jacobi exponent {alpha} ≤ −1")))?;
    let fb = FiniteAboveNegOneF64::new(beta)
        .ok_or_else(|| Error::Domain(format!("Jacobi exponent {beta} ≤ −1")))?;
    let deg = NonZeroUsize::new(n).ok_or_else(|| Error::Invalid("zero quadrature nodes".into()))?;
    let rule: Rule = Arc::new(
        GaussJacobi::new(deg, fa, fb)
            .iter()
            .map(|&(x, w)| (x, w))
            .collect(),
    );
    cache
        .lock()
        .expect("quadrature cache")
        .insert(key, rule.clone());
    Ok(rule)
}

/// Nodes in `(0, 1)` and weights for `∫₀¹ t^p (1−t)^q f(t) dt`, with the
/// endpoint powers absorbed in the weights.
///
/// The Jacobi recurrence degenerates when `p + q = −1`; the interval is
/// then split at ½ and each half carries only one endpoint power.
pub fn jacobi_nodes(p: f64, q: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    if (p + q + 1.0).abs() < 1e-6 {
        let left_scale = 4f64.powf(-(p + 1.0));
        let right_scale = 4f64.powf(-(q + 1.0));
        let (left_rule, right_rule) = (jacobi_rule(0.0, p, n)?, jacobi_rule(q, 0.0, n)?);
        let left = left_rule.iter().map(|&(s, w)| {
            let t = 0.25 * (1.0 + s);
            (t, w * (1.0 - t).powf(q) * left_scale)
        });
        let right = right_rule.iter().map(|&(s, w)| {
            let t = 0.75 + 0.25 * s;
            (t, w * t.powf(p) * right_scale)
        });
        return Ok(left.chain(right).collect());
    }
    let scale = 2f64.powf(-(p + q + 1.0));
    Ok(jacobi_rule(q, p, n)?
        .iter()
        .map(|&(s, w)| (0.5 * (1.0 + s), w * scale))
        .collect())
}

/// Values that quadrature can accumulate: complex numbers and jets.
pub trait Quadrature: Sized {
    fn weighted(&self, w: f64) -> Self;
    fn plus(self, other: Self) -> Self;
    fn distance(&self, other: &Self) -> f64;
    fn size(&self) -> f64;
}

impl Quadrature for Complex64 {
    fn weighted(&self, w: f64) -> Self {
        self * w
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
    fn size(&self) -> f64 {
        self.norm()
    }
}

impl Quadrature for Jet {
    fn weighted(&self, w: f64) -> Self {
        self.scale(Complex64::new(w, 0.0))
    }
    fn plus(self, other: Self) -> Self {
        &self + &other
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }
    fn size(&self) -> f64 {
        self.max_abs()
    }
}

/// `∫₀¹ t^p (1−t)^q f(t) dt`, doubling the node count until two estimates
/// agree to `spec.tol`.
pub fn jacobi_integral_with<T: Quadrature>(
    p: f64,
    q: f64,
    spec: &QuadratureSpec,
    f: impl Fn(f64) -> Result<T>,
) -> Result<T> {
    let estimate = |n: usize| -> Result<T> {
        let mut acc: Option<T> = None;
        for (t, w) in jacobi_nodes(p, q, n)? {
            let term = f(t)?.weighted(w);
            acc = Some(match acc {
                Some(a) => a.plus(term),
                None => term,
            });
        }
        acc.ok_or_else(|| Error::Invalid("empty quadrature rule".into()))
    };
    let mut n = spec.nodes.max(8);
    n += n % 2;
    let mut prev = estimate(n)?;
    while n * 2 <= spec.max_nodes {
        n *= 2;
        let next = estimate(n)?;
        if next.distance(&prev) <= spec.tol * next.size().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureNotConverged {
        nodes: n,
        tol: spec.tol,
    })
}

/// `∫₀¹ t^p (1−t)^q f(t) dt` for a scalar integrand.
pub fn jacobi_integral(
    p: f64,
    q: f64,
    spec: &QuadratureSpec,
    f: impl Fn(f64) -> Complex64,
) -> Result<Complex64> {
    jacobi_integral_with(p, q, spec, |t| Ok(f(t)))
}

/// F1 at a point, by the double series.
pub fn f1_value(p: &F1Params, x: Complex64, y: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(p.c) {
        return Err(Error::Pole("c is a nonpositive integer"));
    }
    if x.norm() >= 1.0 || y.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "series needs |x|, |y| < 1, got ({x}, {y})"
        )));
    }
    // diagonal[m] holds the term with indices (m, N − m)
    let mut diagonal = vec![ONE];
    let mut sum = ONE;
    let mut terms = 1usize;
    let mut quiet = 0;
    let mut n_total = 0usize;
    while quiet < 3 {
        let nn = n_total as f64;
        let mut next = Vec::with_capacity(diagonal.len() + 1);
        for (m, t) in diagonal.iter().enumerate() {
            let n = (n_total - m) as f64;
            let mf = m as f64;
            next.push(t * (p.a + mf + n) * (p.bprime + n) / ((p.c + mf + n) * (n + 1.0)) * y);
        }
        let last = diagonal[n_total];
        next.push(last * (p.a + nn) * (p.b + nn) / ((p.c + nn) * (nn + 1.0)) * x);
        let block: Complex64 = next.iter().sum();
        let size: f64 = next.iter().map(|t| t.norm()).sum();
        sum += block;
        terms += next.len();
        if terms > SERIES_TERM_CAP {
            return Err(Error::SeriesNotConverged(SERIES_TERM_CAP));
        }
        if size <= SERIES_TAIL_TOL * sum.norm() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        diagonal = next;
        n_total += 1;
    }
    Ok(sum)
}

/// F1 composed with jet arguments; the result carries every partial up to
/// the common order of `x` and `y`.
pub fn f1_series(p: &F1Params, x: &Jet, y: &Jet) -> Result<Jet> {
    if x.dim() != y.dim() || x.order() != y.order() {
        return Err(Error::ShapeMismatch(x.dim(), x.order(), y.dim(), y.order()));
    }
    let order = x.order();
    let (x0, y0) = (x.value(), y.value());
    let mut outer = Jet::zero(2, order);
    for i in 0..=order {
        for j in 0..=(order - i) {
            let k = i + j;
            let factor = pochhammer(p.a, k) * pochhammer(p.b, i) * pochhammer(p.bprime, j)
                / pochhammer(p.c, k);
            let m = MultiIndex::new(&[i as u8, j as u8]);
            let value = if factor == ZERO {
                ZERO
            } else {
                factor * f1_value(&p.shifted(i, j), x0, y0)?
            };
            outer.set_coeff(m, value / m.factorial())?;
        }
    }
    compose(&outer, &[x.clone(), y.clone()])
}

/// F1 by its Euler integral.
pub fn f1_euler(
    p: &F1Params,
    x: Complex64,
    y: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !(p.a.re > 0.0 && (p.c - p.a).re > 0.0) {
        return Err(Error::Domain(
            "Euler integral needs Re(c) > Re(a) > 0".into(),
        ));
    }
    for v in [x, y] {
        if v.im == 0.0 && v.re >= 1.0 {
            return Err(Error::Domain(format!("argument {v} on the cut [1, ∞)")));
        }
    }
    let pa = p.a.re - 1.0;
    let pb = (p.c - p.a).re - 1.0;
    let (ia, ib) = (
        Complex64::new(0.0, p.a.im),
        Complex64::new(0.0, (p.c - p.a).im),
    );
    let integral = jacobi_integral(pa, pb, spec, |t| {
        let tt = Complex64::new(t, 0.0);
        let mut v = (ONE - tt * x).powc(-p.b) * (ONE - tt * y).powc(-p.bprime);
        if ia != ZERO {
            v *= tt.powc(ia);
        }
        if ib != ZERO {
            v *= (ONE - tt).powc(ib);
        }
        v
    })?;
    Ok(gamma(p.c)? / (gamma(p.a)? * gamma(p.c - p.a)?) * integral)
}

/// Residuals of the two second-order equations satisfied by F1, evaluated on
/// the series.
pub fn f1_pde_residual(p: &F1Params, x: Complex64, y: Complex64) -> Result<(Complex64, Complex64)> {
    let v = Jet::variables(2, &[x, y]);
    let z = f1_series(p, &v[0], &v[1])?;
    Ok(appell_pde_residual(p, &z, x, y))
}

/// Residuals of the Appell system for an arbitrary order-2 jet `z` at `(x, y)`.
pub fn appell_pde_residual(
    p: &F1Params,
    z: &Jet,
    x: Complex64,
    y: Complex64,
) -> (Complex64, Complex64) {
    let (zx, zy) = (z.d(0), z.d(1));
    let (zxx, zxy, zyy) = (z.d2(0, 0), z.d2(0, 1), z.d2(1, 1));
    let f = z.value();
    let (a, b, bp, c) = (p.a, p.b, p.bprime, p.c);
    let r1 = x * (ONE - x) * zxx + y * (ONE - x) * zxy + (c - (a + b + 1.0) * x) * zx
        - b * y * zy
        - a * b * f;
    let r2 = y * (ONE - y) * zyy + x * (ONE - y) * zxy + (c - (a + bp + 1.0) * y) * zy
        - bp * x * zx
        - a * bp * f;
    (r1, r2)
}

fn on_unit_interval(v: Complex64) -> bool {
    v.im == 0.0 && (0.0..=1.0).contains(&v.re)
}

/// `∫₀¹ dt / ∛(t(t−1)(t−x)(t−y))`, each linear factor on its principal
/// cube-root branch.
pub fn picard_integral(x: Complex64, y: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    if on_unit_interval(x) || on_unit_interval(y) {
        return Err(Error::Domain("branch point on the path [0, 1]".into()));
    }
    let third = Complex64::new(-1.0 / 3.0, 0.0);
    // (t − 1)^{−1/3} = e^{−iπ/3} (1 − t)^{−1/3} on the principal branch
    let phase = Complex64::from_polar(1.0, -PI / 3.0);
    jacobi_integral(-1.0 / 3.0, -1.0 / 3.0, spec, |t| {
        let tt = Complex64::new(t, 0.0);
        phase * (tt - x).powc(third) * (tt - y).powc(third)
    })
}

/// `−Γ(2/3)²/Γ(4/3) · x^{−1/3} y^{−1/3} · F1(2/3; 1/3, 1/3; 4/3; 1/x, 1/y)`,
/// the closed form of the Picard integral (principal branches).
pub fn picard_closed_form(x: Complex64, y: Complex64) -> Result<Complex64> {
    let r = |v: f64| Complex64::new(v, 0.0);
    let pre = -gamma(r(2.0 / 3.0))?.powi(2) / gamma(r(4.0 / 3.0))?;
    let p = F1Params::real(2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0);
    Ok(pre * x.powc(r(-1.0 / 3.0)) * y.powc(r(-1.0 / 3.0)) * f1_value(&p, ONE / x, ONE / y)?)
}

fn check_modulus(k: Complex64) -> Result<()> {
    if k.im == 0.0 && k.re >= 1.0 {
        Err(Error::Domain(format!("modulus {k} on the cut [1, ∞)")))
    } else {
        Ok(())
    }
}

/// `∫₀¹ dx / ∛(x²(1−x)(1−k_i x)(1−k_j x))`.
pub fn k_integral(ki: Complex64, kj: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    check_modulus(ki)?;
    check_modulus(kj)?;
    let third = Complex64::new(-1.0 / 3.0, 0.0);
    jacobi_integral(-2.0 / 3.0, -1.0 / 3.0, spec, |x| {
        let xx = Complex64::new(x, 0.0);
        (ONE - ki * xx).powc(third) * (ONE - kj * xx).powc(third)
    })
}

/// The same integral after `x = t³`:
/// `3 ∫₀¹ dt / ∛((1−t³)(1−k_i t³)(1−k_j t³))`.
pub fn k_integral_substituted(
    ki: Complex64,
    kj: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    check_modulus(ki)?;
    check_modulus(kj)?;
    let third = Complex64::new(-1.0 / 3.0, 0.0);
    let v = jacobi_integral(0.0, -1.0 / 3.0, spec, |t| {
        let t3 = Complex64::new(t * t * t, 0.0);
        // 1 − t³ = (1 − t)(1 + t + t²); the first factor is in the rule
        Complex64::new(1.0 + t + t * t, 0.0).powc(third)
            * (ONE - ki * t3).powc(third)
            * (ONE - kj * t3).powc(third)
    })?;
    Ok(v * 3.0)
}

/// `Γ(1/3)Γ(2/3) · F1(1/3; 1/3, 1/3; 1; k1, k2)`.
pub fn k3_closed_form(k1: Complex64, k2: Complex64) -> Result<Complex64> {
    let r = |v: f64| Complex64::new(v, 0.0);
    let p = F1Params::real(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0);
    Ok(gamma(r(1.0 / 3.0))? * gamma(r(2.0 / 3.0))? * f1_value(&p, k1, k2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(r(1.0)).unwrap() - ONE).norm() < 1e-14);
        assert!((gamma(r(0.5)).unwrap() - r(PI.sqrt())).norm() < 1e-14);
        let g13 = gamma(r(1.0 / 3.0)).unwrap();
        assert!((g13 * gamma(r(2.0 / 3.0)).unwrap() - r(2.0 * PI / 3f64.sqrt())).norm() < 1e-13);
        assert!((gamma(r(4.0 / 3.0)).unwrap() - g13 / 3.0).norm() < 1e-14);
        assert_eq!(
            gamma(r(-2.0)),
            Err(Error::Pole("gamma at a nonpositive integer"))
        );
    }

    #[test]
    fn series_at_origin_is_one() {
        let p = F1Params::real(0.3, 0.7, -0.2, 1.4);
        assert_eq!(f1_value(&p, ZERO, ZERO).unwrap(), ONE);
    }

    #[test]
    fn series_rejects_divergent_arguments() {
        let p = F1Params::real(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0);
        assert!(matches!(f1_value(&p, r(1.0), ZERO), Err(Error::Domain(_))));
        let bad = F1Params::real(1.0, 1.0, 1.0, -2.0);
        assert!(matches!(f1_value(&bad, r(0.1), ZERO), Err(Error::Pole(_))));
    }

    #[test]
    fn euler_closed_form() {
        let p = F1Params::real(1.0, 1.0, 0.0, 2.0);
        let v = f1_euler(&p, r(0.5), ZERO, &QuadratureSpec::default()).unwrap();
        assert!((v - r(-2.0 * 0.5f64.ln())).norm() < 1e-12);
    }

    #[test]
    fn beta_case_of_the_k_integral() {
        let v = k_integral(ZERO, ZERO, &QuadratureSpec::default()).unwrap();
        assert!((v - r(2.0 * PI / 3f64.sqrt())).norm() < 1e-10);
    }
}
