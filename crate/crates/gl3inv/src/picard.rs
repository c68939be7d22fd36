//! Moduli arithmetic for the Picard curves `y³ = x(x−1)(x−λ1)(x−λ2)`.
//!
//! The module covers the two J-invariants and their orbit under the
//! anharmonic-type group generated by `T`, `S1` and `S2`, the modular
//! equation between source moduli `u = (κ1³, κ2³)` and target moduli
//! `v = (λ1³, λ2³)`, the order-five rational transform attached to a solution
//! of that equation, and the transport of the rational coefficient fields
//! along the orbit.
//!
//! Every identity involving cube roots is checked in cubed form so that no
//! branch has to be chosen.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use crate::derivs::{second_arg_transform, DerivQuad};
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::lft::{Gl3Matrix, Point};
use crate::pde_verify::{field_quad_at, ParamTriple};
use crate::sampling::disc_around;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative tolerance on the modular equation accepted by [`transform_abg`].
pub const MODULAR_TOL: f64 = 1e-10;

/// Minimum distance kept from every radicand zero and pole when sampling.
pub const SAFE_MARGIN: f64 = 0.05;

fn rel_gap(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// A pair of cubed moduli, either `(u1, u2) = (κ1³, κ2³)` or
/// `(v1, v2) = (λ1³, λ2³)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModuliPair {
    pub m1: Complex64,
    pub m2: Complex64,
}

impl ModuliPair {
    /// Checked constructor: the moduli must be distinct and avoid 0 and 1.
    pub fn new(m1: Complex64, m2: Complex64) -> Result<Self> {
        let gaps = [m1, m2, m1 - ONE, m2 - ONE, m1 - m2];
        if gaps.iter().any(|g| g.norm() < 1e-14) {
            return Err(Error::Domain(format!(
                "degenerate moduli ({m1}, {m2}): need distinct values outside {{0, 1}}"
            )));
        }
        Ok(Self { m1, m2 })
    }

    pub fn real(m1: f64, m2: f64) -> Result<Self> {
        Self::new(Complex64::new(m1, 0.0), Complex64::new(m2, 0.0))
    }

    pub fn to_point(&self) -> Point {
        [self.m1, self.m2]
    }

    /// The cubic form `(m1−1)(m2−1)(m1−m2)` on which the modular equation is
    /// built.
    pub fn modular_form(&self) -> Complex64 {
        modular_form(self.m1, self.m2)
    }

    /// `(1−m1·x)(1−m2·x)(1−x)`, the moduli-dependent part of the radicand.
    pub fn radicand(&self, x: Complex64) -> Complex64 {
        (ONE - x) * (ONE - self.m1 * x) * (ONE - self.m2 * x)
    }
}

/// `(m1−1)(m2−1)(m1−m2)`.
pub fn modular_form(m1: Complex64, m2: Complex64) -> Complex64 {
    (m1 - ONE) * (m2 - ONE) * (m1 - m2)
}

/// The two J-invariants
/// `J1 = λ2²(λ2−1)² / (λ1²(λ1−1)²(λ1−λ2)²)` and `J2(λ1, λ2) = J1(λ2, λ1)`.
pub fn j_invariants(l1: Complex64, l2: Complex64) -> Result<(Complex64, Complex64)> {
    ModuliPair::new(l1, l2)?;
    let j1 = |a: Complex64, b: Complex64| {
        let num = b * (b - ONE);
        let den = a * (a - ONE) * (a - b);
        (num * num) / (den * den)
    };
    Ok((j1(l1, l2), j1(l2, l1)))
}

/// Elements of the orbit group generated by `T`, `S1`, `S2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OrbitElement {
    T,
    S1,
    S2,
    S1T,
    TS1,
    S1TS1,
    S2T,
    TS2,
    S2TS2,
}

impl OrbitElement {
    pub const ALL: [OrbitElement; 9] = [
        Self::T,
        Self::S1,
        Self::S2,
        Self::S1T,
        Self::TS1,
        Self::S1TS1,
        Self::S2T,
        Self::TS2,
        Self::S2TS2,
    ];

    /// The five non-trivial elements of the family fixing `J1`.
    pub const FIRST_FAMILY: [OrbitElement; 5] =
        [Self::T, Self::S1, Self::S1T, Self::TS1, Self::S1TS1];

    /// The five non-trivial elements of the family fixing `J2`.
    pub const SECOND_FAMILY: [OrbitElement; 5] =
        [Self::T, Self::S2, Self::S2T, Self::TS2, Self::S2TS2];

    pub fn name(&self) -> &'static str {
        match self {
            Self::T => "T",
            Self::S1 => "S1",
            Self::S2 => "S2",
            Self::S1T => "S1T",
            Self::TS1 => "TS1",
            Self::S1TS1 => "S1TS1",
            Self::S2T => "S2T",
            Self::TS2 => "TS2",
            Self::S2TS2 => "S2TS2",
        }
    }

    /// The 3×3 matrix whose linear fractional action is this element.
    /// Words read right to left: `S1T` applies `T` first.
    pub fn matrix(&self) -> Gl3Matrix {
        let t = Gl3Matrix::from_real([[-1.0, 0.0, 1.0], [0.0, -1.0, 1.0], [0.0, 0.0, 1.0]]);
        let s1 = Gl3Matrix::from_real([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]);
        let s2 = Gl3Matrix::from_real([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]);
        match self {
            Self::T => t,
            Self::S1 => s1,
            Self::S2 => s2,
            Self::S1T => s1.mul(&t),
            Self::TS1 => t.mul(&s1),
            Self::S1TS1 => s1.mul(&t).mul(&s1),
            Self::S2T => s2.mul(&t),
            Self::TS2 => t.mul(&s2),
            Self::S2TS2 => s2.mul(&t).mul(&s2),
        }
    }
}

impl fmt::Display for OrbitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrbitElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Invalid(format!("unknown orbit element {s:?}")))
    }
}

/// The image of `(x, y)` under `g`.
pub fn s3_orbit(g: OrbitElement, z: Point) -> Result<Point> {
    g.matrix().act(z)
}

/// Worst relative change of `(J1, J2)` along the orbit of `l`: `J1` against
/// the first family and `J2` against the second.
pub fn j_orbit_residual(l: Point) -> Result<f64> {
    let (j1, j2) = j_invariants(l[0], l[1])?;
    let mut worst = 0.0_f64;
    for (family, pick) in [
        (OrbitElement::FIRST_FAMILY, 0usize),
        (OrbitElement::SECOND_FAMILY, 1usize),
    ] {
        for g in family {
            let [a, b] = s3_orbit(g, l)?;
            let (k1, k2) = j_invariants(a, b)?;
            let gap = if pick == 0 {
                rel_gap(k1, j1)
            } else {
                rel_gap(k2, j2)
            };
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}

/// The roots in `v1` of `(v1−1)(v2−1)(v1−v2) = (u1−1)(u2−1)(u1−u2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModularRoots {
    pub u: ModuliPair,
    pub v2: Complex64,
    pub roots: [Complex64; 2],
    /// Relative residual of the modular equation at each root.
    pub residuals: [f64; 2],
    /// Set when the discriminant is negligible and the two roots coincide.
    pub double_root: bool,
}

impl ModularRoots {
    /// The target moduli built from root `k`; fails when that root collides
    /// with 0, 1 or `v2`.
    pub fn target(&self, k: usize) -> Result<ModuliPair> {
        ModuliPair::new(self.roots[k], self.v2)
    }
}

/// Solves the modular equation for `v1` given the source moduli and `v2`.
///
/// With `K = (u1−1)(u2−1)(u1−u2)` the equation is the quadratic
/// `(v2−1)·v1² − (v2−1)(v2+1)·v1 + (v2−1)·v2 − K = 0`.
pub fn modular_solve(u: ModuliPair, v2: Complex64) -> Result<ModularRoots> {
    if v2.norm() < 1e-14 || (v2 - ONE).norm() < 1e-14 {
        return Err(Error::Domain(format!("v2 = {v2} must avoid 0 and 1")));
    }
    let k = u.modular_form();
    let a = v2 - ONE;
    let b = -(v2 - ONE) * (v2 + ONE);
    let c = (v2 - ONE) * v2 - k;
    let disc = b * b - 4.0 * a * c;
    let sq = disc.sqrt();
    // Pick the sign that avoids cancellation, then use Vieta for the other root.
    let q = if (b.conj() * sq).re >= 0.0 {
        -(b + sq) / 2.0
    } else {
        -(b - sq) / 2.0
    };
    let roots = if q.norm() == 0.0 {
        [Complex64::new(0.0, 0.0); 2]
    } else {
        [q / a, c / q]
    };
    let residuals = roots.map(|v1| rel_gap(modular_form(v1, v2), k));
    let double_root = disc.norm() <= 1e-12 * (b * b).norm().max(1.0);
    Ok(ModularRoots {
        u,
        v2,
        roots,
        residuals,
        double_root,
    })
}

/// Relative violation of the modular equation by the pair `(u, v)`.
pub fn modular_residual(u: &ModuliPair, v: &ModuliPair) -> f64 {
    let (fu, fv) = (u.modular_form(), v.modular_form());
    (fu - fv).norm() / fu.norm().max(fv.norm()).max(1.0)
}

/// The coefficients `(α, β, γ)` of the order-five transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransformAbg {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl TransformAbg {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// `|(α+β+γ)·γ − 1|`.
    pub fn constraint_residual(&self) -> f64 {
        ((self.alpha + self.beta + self.gamma) * self.gamma - ONE).norm()
    }
}

/// The transform coefficients attached to moduli satisfying the modular
/// equation:
///
/// ```text
/// α = [V(v1+v2−2) − U(u1+u2−2)] / (2UV)
/// β = [−V(2v1v2−v1−v2) + U(2u1u2−u1−u2)] / (2UV)
/// γ = V / U
/// ```
///
/// with `U = (u1−1)(u2−1)` and `V = (v1−1)(v2−1)`.
pub fn transform_abg(u: &ModuliPair, v: &ModuliPair) -> Result<TransformAbg> {
    let r = modular_residual(u, v);
    if r > MODULAR_TOL {
        return Err(Error::Domain(format!(
            "moduli violate the modular equation (relative residual {r:e})"
        )));
    }
    let (u1, u2, v1, v2) = (u.m1, u.m2, v.m1, v.m2);
    let cu = (u1 - ONE) * (u2 - ONE);
    let cv = (v1 - ONE) * (v2 - ONE);
    let den = 2.0 * cu * cv;
    let alpha = (cv * (v1 + v2 - 2.0) - cu * (u1 + u2 - 2.0)) / den;
    let beta = (-cv * (2.0 * v1 * v2 - v1 - v2) + cu * (2.0 * u1 * u2 - u1 - u2)) / den;
    Ok(TransformAbg::new(alpha, beta, cv / cu))
}

fn order5_parts(abg: &TransformAbg, t1: &Jet) -> (Jet, Jet) {
    let num = t1.scale(abg.beta + abg.gamma).add_scalar(abg.alpha);
    let den = t1.scale(abg.beta).add_scalar(abg.alpha + abg.gamma);
    (num, den)
}

/// The order-five transform on jets:
/// `w1 = ((β+γ)t1 + α)/(βt1 + α+γ)`,
/// `w2 = t1((β+γ)t1 + α)²(βt1 + α+γ)/t2⁵`.
pub fn order5_map_jets(abg: &TransformAbg, t: &[Jet; 2]) -> Result<[Jet; 2]> {
    let (num, den) = order5_parts(abg, &t[0]);
    let w1 = num
        .checked_div(&den)
        .map_err(|_| Error::VanishingDenominator("β t1 + α + γ"))?;
    let t2_5 = t[1]
        .powi(5)
        .and_then(|p| p.recip())
        .map_err(|_| Error::VanishingDenominator("t2"))?;
    let w2 = &(&(&t[0] * &(&num * &num)) * &den) * &t2_5;
    Ok([w1, w2])
}

/// The order-five transform at a point.
pub fn order5_map(abg: &TransformAbg, t: Point) -> Result<Point> {
    let vars = Jet::variables(0, &t);
    let [w1, w2] = order5_map_jets(abg, &[vars[0].clone(), vars[1].clone()])?;
    Ok([w1.value(), w2.value()])
}

/// The two sides of a cubed differential-form identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FormIdentity {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl FormIdentity {
    /// `|lhs − rhs| / max(|lhs|, |rhs|)`, zero when both sides vanish.
    pub fn residual(&self) -> f64 {
        rel_gap(self.lhs, self.rhs)
    }
}

fn jacobian2(w: &[Jet; 2]) -> Complex64 {
    w[0].d(0) * w[1].d(1) - w[0].d(1) * w[1].d(0)
}

fn check_radicand(x: Complex64, what: &'static str) -> Result<()> {
    if x.norm() < 1e-14 {
        return Err(Error::Domain(format!("radicand vanishes: {what}")));
    }
    Ok(())
}

/// The cubed pullback identity of the order-five transform at `t`:
///
/// ```text
/// Jac³ · t1²t2²(1−t1)(1−u1t1)(1−u2t1) = (−5t1/t2²)³ · w1²w2²(1−w1)(1−v1w1)(1−v2w1)
/// ```
///
/// where `Jac = ∂(w1, w2)/∂(t1, t2)` is taken from jets.
pub fn pullback_identity_check(u: &ModuliPair, v: &ModuliPair, t: Point) -> Result<FormIdentity> {
    let abg = transform_abg(u, v)?;
    pullback_with(&abg, u, v, t)
}

/// As [`pullback_identity_check`] with explicitly supplied coefficients, so
/// that moduli off the modular equation can be used as a negative control.
pub fn pullback_with(
    abg: &TransformAbg,
    u: &ModuliPair,
    v: &ModuliPair,
    t: Point,
) -> Result<FormIdentity> {
    let vars = Jet::variables(1, &t);
    let w = order5_map_jets(abg, &[vars[0].clone(), vars[1].clone()])?;
    let (w1, w2) = (w[0].value(), w[1].value());
    let [t1, t2] = t;
    let ft = t1 * t1 * t2 * t2 * u.radicand(t1);
    let fw = w1 * w1 * w2 * w2 * v.radicand(w1);
    check_radicand(ft, "t-side")?;
    check_radicand(fw, "w-side")?;
    let factor = -5.0 * t1 / (t2 * t2);
    Ok(FormIdentity {
        lhs: jacobian2(&w).powi(3) * ft,
        rhs: factor.powi(3) * fw,
    })
}

/// The cubed pullback identity after the substitution `t = x³`, `w = y³`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CubedSubstitution {
    /// `Jac_y³ · (1−x1³)(1−u1x1³)(1−u2x1³)` against
    /// `(−5x1³/x2⁶)³ · (1−y1³)(1−v1y1³)(1−v2y1³)`.
    pub identity: FormIdentity,
    /// Relative gap between `Jac_y³` from jets in `x` and the value predicted
    /// from the `t`-Jacobian, `Jac_w³ · x1⁶x2⁶ / (w1²w2²)`.
    pub chain_mismatch: f64,
}

impl CubedSubstitution {
    pub fn residual(&self) -> f64 {
        self.identity.residual().max(self.chain_mismatch)
    }
}

/// Checks the consequence of the pullback identity in the variables `x` with
/// `t_i = x_i³` and `y_i = w_i^{1/3}`. The principal cube root is used for
/// `y`; the cubed Jacobian does not depend on that choice.
pub fn cubed_substitution_check(
    u: &ModuliPair,
    v: &ModuliPair,
    x: Point,
) -> Result<CubedSubstitution> {
    let abg = transform_abg(u, v)?;
    let xs = Jet::variables(1, &x);
    let t = [xs[0].powi(3)?, xs[1].powi(3)?];
    let w = order5_map_jets(&abg, &t)?;
    let third = Ratio::new(1, 3);
    let y = [w[0].powq(third)?, w[1].powq(third)?];
    let jac_y3 = jacobian2(&y).powi(3);

    let (x1, x2) = (x[0], x[1]);
    let (w1, w2) = (w[0].value(), w[1].value());
    let rt = u.radicand(x1.powi(3));
    let rw = v.radicand(y[0].value().powi(3));
    check_radicand(rt, "x-side")?;
    check_radicand(rw, "y-side")?;
    let factor = -5.0 * x1.powi(3) / x2.powi(6);

    let tv = Jet::variables(1, &[t[0].value(), t[1].value()]);
    let wt = order5_map_jets(&abg, &[tv[0].clone(), tv[1].clone()])?;
    let predicted = jacobian2(&wt).powi(3) * x1.powi(6) * x2.powi(6) / (w1 * w1 * w2 * w2);
    Ok(CubedSubstitution {
        identity: FormIdentity {
            lhs: jac_y3 * rt,
            rhs: factor.powi(3) * rw,
        },
        chain_mismatch: rel_gap(jac_y3, predicted),
    })
}

/// Residuals of the two algebraic surfaces attached to the moduli at a point
/// `(w1, w2)`: the affine surface `w3³ = w1²w2²(1−w1)(1−v1w1)(1−v2w1)` with
/// `w3` the principal cube root, and its degree-seven homogenisation
/// `w3³w4⁴ = w1²w2²(w4−w1)(w4−v1w1)(w4−v2w1)` at the rescaled point
/// `(s·w1, s·w2, s·w3, s)`.
pub fn surface_witness(v: &ModuliPair, w: Point, s: Complex64) -> [f64; 2] {
    let [w1, w2] = w;
    let rhs = w1 * w1 * w2 * w2 * v.radicand(w1);
    let w3 = rhs.powf(1.0 / 3.0);
    let affine = rel_gap(w3.powi(3), rhs);
    let (h1, h2, h3, h4) = (s * w1, s * w2, s * w3, s);
    let hom_lhs = h3.powi(3) * h4.powi(4);
    let hom_rhs = h1 * h1 * h2 * h2 * (h4 - h1) * (h4 - v.m1 * h1) * (h4 - v.m2 * h1);
    [affine, rel_gap(hom_lhs, hom_rhs)]
}

/// A random instance `(u, v)` of the modular equation: `u` and `v2` are
/// drawn from discs around real anchors and `v1` is one of the two roots.
pub fn random_moduli_instance<R: Rng + ?Sized>(rng: &mut R) -> (ModuliPair, ModuliPair) {
    loop {
        let u1 = disc_around(rng, Complex64::new(2.0, 0.0), 0.8);
        let u2 = disc_around(rng, Complex64::new(-1.5, 0.0), 0.8);
        let v2 = disc_around(rng, Complex64::new(3.0, 0.0), 0.8);
        let Ok(u) = ModuliPair::new(u1, u2) else {
            continue;
        };
        let far = |z: Complex64| [z, z - ONE].iter().all(|g| g.norm() > 0.2);
        if !far(u1) || !far(u2) || !far(v2) || (u1 - u2).norm() < 0.2 {
            continue;
        }
        let Ok(roots) = modular_solve(u, v2) else {
            continue;
        };
        let k = rng.gen_range(0..2);
        let v1 = roots.roots[k];
        if !far(v1) || (v1 - v2).norm() < 0.2 || roots.residuals[k] > 1e-13 {
            continue;
        }
        if let Ok(v) = ModuliPair::new(v1, v2) {
            return (u, v);
        }
    }
}

/// A point `t` with `|t1|, |t2| ∈ [0.3, 2]` whose images keep
/// [`SAFE_MARGIN`] away from every radicand zero and pole on both sides.
pub fn safe_t_point<R: Rng + ?Sized>(
    rng: &mut R,
    u: &ModuliPair,
    v: &ModuliPair,
    abg: &TransformAbg,
) -> Point {
    let annulus = |rng: &mut R| {
        let r = rng.gen_range(0.3..2.0);
        Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
    };
    loop {
        let t = [annulus(rng), annulus(rng)];
        let Ok([w1, w2]) = order5_map(abg, t) else {
            continue;
        };
        let t_zeros = [ONE, ONE / u.m1, ONE / u.m2];
        let w_zeros = [Complex64::new(0.0, 0.0), ONE, ONE / v.m1, ONE / v.m2];
        let den = abg.beta * t[0] + abg.alpha + abg.gamma;
        let ok = t_zeros.iter().all(|z| (t[0] - z).norm() >= SAFE_MARGIN)
            && w_zeros.iter().all(|z| (w1 - z).norm() >= SAFE_MARGIN)
            && w2.norm() >= SAFE_MARGIN
            && den.norm() >= SAFE_MARGIN
            && w1.is_finite()
            && w2.is_finite();
        if ok {
            return t;
        }
    }
}

/// `f1(x, y) = y(y−1) / (x(x−1)(x−y))`; the brace field `F1` is `−γ·f1`.
pub fn f1_weight(z: Point) -> Complex64 {
    let [x, y] = z;
    y * (y - ONE) / (x * (x - ONE) * (x - y))
}

/// `f2(x, y) = x(x−1) / (y(y−1)(y−x))`.
pub fn f2_weight(z: Point) -> Complex64 {
    let [x, y] = z;
    x * (x - ONE) / (y * (y - ONE) * (y - x))
}

/// `P1(α, β, γ; x, y) = α/x + β/(x−1) + γ/(x−y)`.
pub fn p1_field(p: &ParamTriple, z: Point) -> Complex64 {
    let [x, y] = z;
    p.alpha / x + p.beta / (x - ONE) + p.gamma / (x - y)
}

/// `P2(α, β, γ; x, y) = α/y + β/(y−1) + γ/(y−x)`.
pub fn p2_field(p: &ParamTriple, z: Point) -> Complex64 {
    let [x, y] = z;
    p.alpha / y + p.beta / (y - ONE) + p.gamma / (y - x)
}

/// One evaluated orbit identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitIdentity {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl OrbitIdentity {
    /// `|lhs − rhs| / max(|rhs|, 1)`.
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.rhs.norm().max(1.0)
    }
}

/// The sign rules of `f1`, `f2` and the weight rules of `P1`, `P2` along the
/// orbit, evaluated at `z`:
///
/// ```text
/// f1∘T = −f1   f1∘S1 = −f1   f1∘S1T = f1   f1∘TS1 = f1   f1∘S1TS1 = −f1
/// P1(α,β,γ)∘T     = −P1(β,α,γ)        P1(α,β,γ)∘S1    = y·P1(α,γ,β)
/// P1(α,β,γ)∘S1T   = (y−1)·P1(γ,α,β)   P1(α,β,γ)∘TS1   = −y·P1(β,γ,α)
/// P1(α,β,γ)∘S1TS1 = (1−y)·P1(γ,β,α)
/// ```
///
/// and the mirror rules for `f2`, `P2` with the `S2` family and `x` in place
/// of `y`.
pub fn orbit_identities(p: &ParamTriple, z: Point) -> Result<Vec<OrbitIdentity>> {
    use OrbitElement as G;
    let (a, b, g) = (p.alpha, p.beta, p.gamma);
    let perm = |x, y, w| ParamTriple::new(x, y, w);
    let [x, y] = z;
    let mut out = Vec::new();
    let families = [
        (
            [G::T, G::S1, G::S1T, G::TS1, G::S1TS1],
            f1_weight as fn(Point) -> Complex64,
            p1_field as fn(&ParamTriple, Point) -> Complex64,
            y,
            "1",
        ),
        (
            [G::T, G::S2, G::S2T, G::TS2, G::S2TS2],
            f2_weight,
            p2_field,
            x,
            "2",
        ),
    ];
    for (family, weight, field, s, idx) in families {
        let signs = [-1.0, -1.0, 1.0, 1.0, -1.0];
        let rules = [
            (-ONE, perm(b, a, g)),
            (s, perm(a, g, b)),
            (s - ONE, perm(g, a, b)),
            (-s, perm(b, g, a)),
            (ONE - s, perm(g, b, a)),
        ];
        for ((elem, sign), (coef, q)) in family.into_iter().zip(signs).zip(rules) {
            let gz = s3_orbit(elem, z)?;
            out.push(OrbitIdentity {
                name: format!("f{idx}∘{elem}"),
                lhs: weight(gz),
                rhs: sign * weight(z),
            });
            out.push(OrbitIdentity {
                name: format!("P{idx}∘{elem}"),
                lhs: field(p, gz),
                rhs: coef * field(&q, z),
            });
        }
    }
    if out.iter().any(|o| !o.lhs.is_finite() || !o.rhs.is_finite()) {
        return Err(Error::Pole("orbit identity evaluated at a pole"));
    }
    Ok(out)
}

/// The five rows of the parameter transformation table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParamRow {
    /// `T` on both components: brackets become `P(β, α, γ)`.
    T,
    /// `S1`/`S2`: brackets become `P(α, −2γ, β+3γ)`.
    S,
    /// `S1T`/`S2T`: brackets become `P(−2γ, α, β+3γ)`.
    ST,
    /// `TS1`/`TS2`: brackets become `P(β, −2γ, α+3γ)`.
    TS,
    /// `S1TS1`/`S2TS2`: brackets become `P(−2γ, β, α+3γ)`.
    STS,
}

impl ParamRow {
    pub const ALL: [ParamRow; 5] = [Self::T, Self::S, Self::ST, Self::TS, Self::STS];

    /// Row by its 1-based table index.
    pub fn from_index(row: usize) -> Result<Self> {
        Self::ALL
            .get(row.wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Invalid(format!("parameter table row {row} is not in 1..=5")))
    }

    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|r| r == self).unwrap_or(0) + 1
    }

    /// The orbit elements transporting the first and the second component.
    pub fn elements(&self) -> (OrbitElement, OrbitElement) {
        use OrbitElement as G;
        match self {
            Self::T => (G::T, G::T),
            Self::S => (G::S1, G::S2),
            Self::ST => (G::S1T, G::S2T),
            Self::TS => (G::TS1, G::TS2),
            Self::STS => (G::S1TS1, G::S2TS2),
        }
    }

    /// The bracket parameters claimed by the row; the brace fields keep `γ`.
    pub fn claimed(&self, p: &ParamTriple) -> ParamTriple {
        let (a, b, g) = (p.alpha, p.beta, p.gamma);
        match self {
            Self::T => ParamTriple::new(b, a, g),
            Self::S => ParamTriple::new(a, -2.0 * g, b + 3.0 * g),
            Self::ST => ParamTriple::new(-2.0 * g, a, b + 3.0 * g),
            Self::TS => ParamTriple::new(b, -2.0 * g, a + 3.0 * g),
            Self::STS => ParamTriple::new(-2.0 * g, b, a + 3.0 * g),
        }
    }
}

/// Outcome of one parameter-table row at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RowReport {
    pub row: ParamRow,
    /// `(F1, F2, P1, P2)` transported back from the orbit image.
    pub transported: [Complex64; 4],
    /// `(F1(γ), F2(γ), P1(claimed), P2(claimed))` at the original point.
    pub expected: [Complex64; 4],
}

impl RowReport {
    /// Largest entrywise gap relative to `max(|expected|, 1)`.
    pub fn residual(&self) -> f64 {
        self.transported
            .iter()
            .zip(&self.expected)
            .map(|(a, b)| (a - b).norm() / b.norm().max(1.0))
            .fold(0.0, f64::max)
    }
}

/// Transports the fields `(F1, F2, P1, P2)(α, β, γ)` evaluated at `g(v)` back
/// to `v` with the second-argument rule of the four derivatives, and compares
/// with the fields at `v` whose parameters the row predicts. The first
/// component pair `(F1, P1)` is carried by the `S1` family and the second
/// pair `(F2, P2)` by the `S2` family.
pub fn param_table_check(row: ParamRow, p: &ParamTriple, v: Point) -> Result<RowReport> {
    let (g1, g2) = row.elements();
    let carry = |g: OrbitElement| -> Result<DerivQuad> {
        let m = g.matrix();
        let q = field_quad_at(p, m.act(v)?)?;
        second_arg_transform(&q, &m, v)
    };
    let first = carry(g1)?.to_array();
    let second = carry(g2)?.to_array();
    let base = field_quad_at(p, v)?.to_array();
    let claimed = field_quad_at(&row.claimed(p), v)?.to_array();
    Ok(RowReport {
        row,
        transported: [first[0], second[1], first[2], second[3]],
        expected: [base[0], base[1], claimed[2], claimed[3]],
    })
}
