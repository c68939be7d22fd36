//! The linear systems behind the four derivatives.
//!
//! For any locally invertible map `w(v)`, the cube root of the inverse
//! Jacobian `z = det(Dw)^{−1/3}` solves a three-equation system whose
//! coefficients are the four derivatives of `w`. When those derivatives are
//! the rational fields
//!
//! ```text
//! P1 = α/v1 + β/(v1−1) + γ/(v1−v2)      F1 = −γ v2(v2−1) / (v1(v1−1)(v1−v2))
//! P2 = α/v2 + β/(v2−1) + γ/(v2−v1)      F2 = −γ v1(v1−1) / (v2(v2−1)(v2−v1))
//! ```
//!
//! the substitution `z = v1^{α/3} v2^{α/3} (v1−1)^{β/3} (v2−1)^{β/3}
//! (v1−v2)^{−2γ/3} w` turns the system into the Appell F1 system with
//! `a = α+β−1`, `b = b′ = −γ`, `c = α−γ`.

use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use crate::appell::{f1_series, jacobi_integral_with, F1Params, QuadratureSpec};
use crate::derivs::{deriv_quad, deriv_quad_jet, DerivQuad, MapJet2};
use crate::eisenstein::omega_c;
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::lft::Point;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Distance below which a base point counts as sitting on a pole.
pub const POLE_MARGIN: f64 = 1e-12;

/// The exponent parameters `(α, β, γ)` of the rational coefficient fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParamTriple {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl ParamTriple {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn real(alpha: f64, beta: f64, gamma: f64) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        Self::new(c(alpha), c(beta), c(gamma))
    }

    /// The parameters `(α+β−1; −γ, −γ; α−γ)` of the solution regular at the
    /// origin.
    pub fn first_branch(&self) -> F1Params {
        F1Params::new(
            self.alpha + self.beta - 1.0,
            -self.gamma,
            -self.gamma,
            self.alpha - self.gamma,
        )
    }

    /// The parameters `(α+β−1; −γ, −γ; β−γ)` of the solution regular at
    /// `(1, 1)`, to be evaluated at `(1−v1, 1−v2)`.
    pub fn second_branch(&self) -> F1Params {
        F1Params::new(
            self.alpha + self.beta - 1.0,
            -self.gamma,
            -self.gamma,
            self.beta - self.gamma,
        )
    }
}

/// Which F1 solution of the reduced system to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `F1(α+β−1; −γ, −γ; α−γ; v1, v2)`, needs `|v1|, |v2| < 1`.
    First,
    /// `F1(α+β−1; −γ, −γ; β−γ; 1−v1, 1−v2)`, needs `|1−v1|, |1−v2| < 1`.
    Second,
}

/// The rational fields `(F1, F2, P1, P2)` as jets.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldQuad {
    pub f1: Jet,
    pub f2: Jet,
    pub p1: Jet,
    pub p2: Jet,
}

impl FieldQuad {
    pub fn to_array(&self) -> [&Jet; 4] {
        [&self.f1, &self.f2, &self.p1, &self.p2]
    }

    pub fn value(&self) -> DerivQuad {
        DerivQuad::new(self.to_array().map(|j| j.value()))
    }
}

fn check_off_poles(v: Point) -> Result<()> {
    let [v1, v2] = v;
    let gaps = [v1, v2, v1 - ONE, v2 - ONE, v1 - v2];
    if gaps.iter().any(|g| g.norm() < POLE_MARGIN) {
        return Err(Error::Pole("v1, v2 ∈ {0, 1} or v1 = v2"));
    }
    Ok(())
}

/// The coefficient fields at the jets `v`.
pub fn field_quad(p: &ParamTriple, v: &[Jet; 2]) -> Result<FieldQuad> {
    check_off_poles([v[0].value(), v[1].value()])?;
    let [v1, v2] = v;
    let v1m = v1.add_scalar(-ONE);
    let v2m = v2.add_scalar(-ONE);
    let d12 = v1 - v2;
    let d21 = -&d12;
    let ratio = |num: &Jet, den: &Jet| num.checked_div(den);
    let f1 = ratio(
        &(&(v2 * &v2m) * &Jet::constant(v1.dim(), v1.order(), -p.gamma)),
        &(&(v1 * &v1m) * &d12),
    )?;
    let f2 = ratio(
        &(&(v1 * &v1m) * &Jet::constant(v1.dim(), v1.order(), -p.gamma)),
        &(&(v2 * &v2m) * &d21),
    )?;
    let pole_sum = |a: &Jet, am: &Jet, d: &Jet| -> Result<Jet> {
        let terms = [
            a.recip()?.scale(p.alpha),
            am.recip()?.scale(p.beta),
            d.recip()?.scale(p.gamma),
        ];
        Ok(&(&terms[0] + &terms[1]) + &terms[2])
    };
    Ok(FieldQuad {
        f1,
        f2,
        p1: pole_sum(v1, &v1m, &d12)?,
        p2: pole_sum(v2, &v2m, &d21)?,
    })
}

/// The fields at a point.
pub fn field_quad_at(p: &ParamTriple, v: Point) -> Result<DerivQuad> {
    let vars = Jet::variables(1, &v);
    Ok(field_quad(p, &[vars[0].clone(), vars[1].clone()])?.value())
}

/// An equation residual together with the size of its largest term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub value: Complex64,
    pub scale: f64,
}

impl Residual {
    pub fn from_terms(terms: &[Complex64]) -> Self {
        Self {
            value: terms.iter().sum(),
            scale: terms.iter().map(|t| t.norm()).fold(0.0, f64::max),
        }
    }

    pub fn abs(&self) -> f64 {
        self.value.norm()
    }

    /// `|residual| / max(largest term, 1)`.
    pub fn relative(&self) -> f64 {
        self.abs() / self.scale.max(1.0)
    }
}

/// Largest relative residual of a batch.
pub fn worst(res: &[Residual]) -> f64 {
    res.iter().map(Residual::relative).fold(0.0, f64::max)
}

/// Residuals of the three second-order equations for `z` with coefficient
/// jets `(F1, F2, P1, P2)` in the variables `(v1, v2)`.
pub fn z_system_residuals(fields: [&Jet; 4], z: &Jet) -> [Residual; 3] {
    let [f1, f2, p1, p2] = fields;
    let (f1v, f2v, p1v, p2v) = (f1.value(), f2.value(), p1.value(), p2.value());
    let third = 1.0 / 3.0;
    let (z0, z1, z2) = (z.value(), z.d(0), z.d(1));
    let e1 = [
        z.d2(0, 0),
        p1v * third * z1,
        -f1v * z2,
        (f1.d(1) - p1.d(0) * third - p1v * p1v * (2.0 / 9.0) - f1v * p2v * (2.0 / 3.0)) * z0,
    ];
    let e2 = [
        z.d2(0, 1),
        -p2v * third * z1,
        -p1v * third * z2,
        (p2.d(0) * third + p1.d(1) * third + p1v * p2v / 9.0 - f1v * f2v) * z0,
    ];
    let e3 = [
        z.d2(1, 1),
        p2v * third * z2,
        -f2v * z1,
        (f2.d(0) - p2.d(1) * third - p2v * p2v * (2.0 / 9.0) - f2v * p1v * (2.0 / 3.0)) * z0,
    ];
    [e1, e2, e3].map(|t| Residual::from_terms(&t))
}

/// Outcome of the map-supplied check of the `z`-system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mt1Report {
    pub residuals: [Residual; 3],
    /// The value of `z = det(Dw)^{−1/3}` on the chosen branch.
    pub z: Complex64,
    pub quad: DerivQuad,
}

/// Builds the four derivatives and `z = det(Dw)^{−1/3}` from order-3 jets of
/// `w(v)` and returns the residuals of the `z`-system.
pub fn mt1_residuals(w: &MapJet2) -> Result<Mt1Report> {
    mt1_residuals_on_branch(w, 0)
}

/// As [`mt1_residuals`], with `z` multiplied by `ω^branch`.
pub fn mt1_residuals_on_branch(w: &MapJet2, branch: u32) -> Result<Mt1Report> {
    if w.order() != 3 || w.u1.dim() != 2 || w.vars != (0, 1) {
        return Err(Error::Invalid(
            "the z-system needs order-3 jets in two variables".into(),
        ));
    }
    let quad = deriv_quad_jet(w)?;
    let det = &(&w.u1.partial(0) * &w.u2.partial(1)) - &(&w.u1.partial(1) * &w.u2.partial(0));
    let z = det.powq(Ratio::new(-1, 3))?.scale(omega_c().powu(branch));
    Ok(Mt1Report {
        residuals: z_system_residuals(quad.to_array(), &z),
        z: z.value(),
        quad: quad.value(),
    })
}

/// `v1^{α/3} v2^{α/3} (v1−1)^{β/3} (v2−1)^{β/3} (v1−v2)^{−2γ/3}`, each factor
/// on its principal branch.
pub fn z_prefactor(p: &ParamTriple, v: &[Jet; 2]) -> Result<Jet> {
    let [v1, v2] = v;
    let (a3, b3) = (p.alpha / 3.0, p.beta / 3.0);
    let factors = [
        v1.powc(a3)?,
        v2.powc(a3)?,
        v1.add_scalar(-ONE).powc(b3)?,
        v2.add_scalar(-ONE).powc(b3)?,
        (v1 - v2).powc(p.gamma * (-2.0 / 3.0))?,
    ];
    Ok(factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| &acc * f))
}

/// The F1 solution of the reduced system on the chosen branch.
pub fn mt2_w(p: &ParamTriple, v: &[Jet; 2], branch: Branch) -> Result<Jet> {
    match branch {
        Branch::First => f1_series(&p.first_branch(), &v[0], &v[1]),
        Branch::Second => {
            let flip = |j: &Jet| j.scale(-ONE).add_scalar(ONE);
            f1_series(&p.second_branch(), &flip(&v[0]), &flip(&v[1]))
        }
    }
}

/// Residuals of the reduced (Appell-type) system for `w` at `v`.
pub fn w_system_residuals(p: &ParamTriple, v: Point, w: &Jet) -> [Residual; 3] {
    let [v1, v2] = v;
    let (a, b, g) = (p.alpha, p.beta, p.gamma);
    let (w0, w1, w2) = (w.value(), w.d(0), w.d(1));
    let d = v1 - v2;
    let e1 = [
        w.d2(0, 0),
        (a / v1 + b / (v1 - 1.0) - g / d) * w1,
        g * v2 * (v2 - 1.0) / (v1 * (v1 - 1.0) * d) * w2,
        (ONE - a - b) * g / (v1 * (v1 - 1.0)) * w0,
    ];
    let e2 = [
        w.d2(1, 1),
        (a / v2 + b / (v2 - 1.0) + g / d) * w2,
        -g * v1 * (v1 - 1.0) / (v2 * (v2 - 1.0) * d) * w1,
        (ONE - a - b) * g / (v2 * (v2 - 1.0)) * w0,
    ];
    let e3 = [w.d2(0, 1), g / d * w1, -g / d * w2];
    [
        Residual::from_terms(&e1),
        Residual::from_terms(&e2),
        Residual::from_terms(&e3),
    ]
}

/// Residuals of both systems for one F1 solution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mt2Report {
    pub branch: Branch,
    pub w_residuals: [Residual; 3],
    pub z_residuals: [Residual; 3],
}

impl Mt2Report {
    pub fn worst(&self) -> f64 {
        worst(&self.w_residuals).max(worst(&self.z_residuals))
    }
}

fn check_branch_domain(v: Point, branch: Branch) -> Result<()> {
    let ok = match branch {
        Branch::First => v.iter().all(|x| x.norm() < 1.0),
        Branch::Second => v.iter().all(|x| (ONE - x).norm() < 1.0),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{branch:?} branch series diverges at ({}, {})",
            v[0], v[1]
        )))
    }
}

/// Builds `w` from the F1 series, `z` from the prefactor, and returns the
/// residuals of the reduced system for `w` and of the `z`-system with the
/// rational fields.
pub fn mt2_solution_residuals(p: &ParamTriple, v: Point, branch: Branch) -> Result<Mt2Report> {
    check_off_poles(v)?;
    check_branch_domain(v, branch)?;
    let vars = Jet::variables(2, &v);
    let vj = [vars[0].clone(), vars[1].clone()];
    let w = mt2_w(p, &vj, branch)?;
    let z = &z_prefactor(p, &vj)? * &w;
    let fields = field_quad(p, &vj)?;
    Ok(Mt2Report {
        branch,
        w_residuals: w_system_residuals(p, v, &w),
        z_residuals: z_system_residuals(fields.to_array(), &z),
    })
}

/// The Picard-modular parameters `(3/4, 1/2, −1/4)`.
pub fn picard_modular_params() -> ParamTriple {
    ParamTriple::real(0.75, 0.5, -0.25)
}

/// `v1^{1/4} v2^{1/4} (v1−1)^{1/6} (v2−1)^{1/6} (v1−v2)^{1/6}
/// [c1 F1(1/4; 1/4, 1/4; 1; v1, v2) + c2 F1(1/4; 1/4, 1/4; 3/4; 1−v1, 1−v2)]`.
pub fn picard_modular_z(v: &[Jet; 2], consts: [Complex64; 2]) -> Result<Jet> {
    let [v1, v2] = v;
    let q = |n: i64, d: i64| Ratio::new(n, d);
    let pre = [
        v1.powq(q(1, 4))?,
        v2.powq(q(1, 4))?,
        v1.add_scalar(-ONE).powq(q(1, 6))?,
        v2.add_scalar(-ONE).powq(q(1, 6))?,
        (v1 - v2).powq(q(1, 6))?,
    ];
    let pre = pre.iter().skip(1).fold(pre[0].clone(), |acc, f| &acc * f);
    let flip = |j: &Jet| j.scale(-ONE).add_scalar(ONE);
    let s1 = f1_series(&F1Params::real(0.25, 0.25, 0.25, 1.0), v1, v2)?;
    let s2 = f1_series(
        &F1Params::real(0.25, 0.25, 0.25, 0.75),
        &flip(v1),
        &flip(v2),
    )?;
    Ok(&pre * &(&s1.scale(consts[0]) + &s2.scale(consts[1])))
}

/// Residuals of the `z`-system with the Picard-modular fields, on the
/// closed-form two-constant solution.
pub fn picard_modular_residuals(v: Point, consts: [Complex64; 2]) -> Result<[Residual; 3]> {
    check_off_poles(v)?;
    check_branch_domain(v, Branch::First)?;
    check_branch_domain(v, Branch::Second)?;
    let vars = Jet::variables(2, &v);
    let vj = [vars[0].clone(), vars[1].clone()];
    let z = picard_modular_z(&vj, consts)?;
    let fields = field_quad(&picard_modular_params(), &vj)?;
    Ok(z_system_residuals(fields.to_array(), &z))
}

/// A third solution of the reduced system, the Euler integral of the F1
/// integrand over the segment from `1/v2` to `1/v1`.
///
/// Needs real `γ > −1` and `Re(1/v1), Re(1/v2) > 1`, so that the segment
/// stays inside `Re t > 1` where every factor is on its principal branch.
pub fn euler_segment_solution(p: &ParamTriple, v: &[Jet; 2], spec: &QuadratureSpec) -> Result<Jet> {
    let [x, y] = v;
    let (x0, y0) = (x.value(), y.value());
    if p.gamma.im != 0.0 || p.gamma.re <= -1.0 {
        return Err(Error::Domain("segment integral needs real γ > −1".into()));
    }
    if (ONE / x0).re <= 1.0 || (ONE / y0).re <= 1.0 || (x0 - y0).norm() < POLE_MARGIN {
        return Err(Error::Domain(format!(
            "segment from 1/v2 to 1/v1 leaves Re t > 1 at ({x0}, {y0})"
        )));
    }
    let f = p.first_branch();
    let inv_x = x.recip()?;
    let inv_y = y.recip()?;
    let h = &inv_x - &inv_y;
    let x_over_y = x.checked_div(y)?;
    let y_over_x = y.checked_div(x)?;
    let pre = &(&h * &x_over_y.scale(-ONE).add_scalar(ONE).powc(-f.b)?)
        * &y_over_x.add_scalar(-ONE).powc(-f.bprime)?;
    let integral = jacobi_integral_with(-f.bprime.re, -f.b.re, spec, |s| {
        let t = &inv_y + &h.scale(Complex64::new(s, 0.0));
        Ok(&t.powc(f.a - 1.0)? * &t.add_scalar(-ONE).powc(f.c - f.a - 1.0)?)
    })?;
    Ok(&pre * &integral)
}

/// The map built from three solutions of the `z`-system, its derivatives,
/// and the `z`-system check run on it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossOracle {
    /// The four derivatives of `(z1/z3, z2/z3)`.
    pub quad_of_quotients: DerivQuad,
    /// The rational fields at the same point.
    pub fields: DerivQuad,
    pub mt1: Mt1Report,
}

impl CrossOracle {
    pub fn quad_mismatch(&self) -> f64 {
        self.quad_of_quotients.max_abs_diff(&self.fields) / (1.0 + self.fields.max_abs())
    }
}

/// Feeds the quotient map of three independent F1-built solutions back
/// through the map-supplied check: its derivatives must reproduce the
/// rational fields and its `det^{−1/3}` must solve the same system.
pub fn mt1_mt2_cross_oracle(
    p: &ParamTriple,
    v: Point,
    spec: &QuadratureSpec,
) -> Result<CrossOracle> {
    check_off_poles(v)?;
    check_branch_domain(v, Branch::First)?;
    check_branch_domain(v, Branch::Second)?;
    let vars = Jet::variables(3, &v);
    let vj = [vars[0].clone(), vars[1].clone()];
    let pre = z_prefactor(p, &vj)?;
    let z1 = &pre * &mt2_w(p, &vj, Branch::First)?;
    let z2 = &pre * &mt2_w(p, &vj, Branch::Second)?;
    let z3 = &pre * &euler_segment_solution(p, &vj, spec)?;
    let map = MapJet2::new(z1.checked_div(&z3)?, z2.checked_div(&z3)?)?;
    Ok(CrossOracle {
        quad_of_quotients: deriv_quad(&map)?,
        fields: field_quad_at(p, v)?,
        mt1: mt1_residuals(&map)?,
    })
}
