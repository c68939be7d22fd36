//! The GL(3)-invariant evolution system in `(x, y; t1, t2)`.
//!
//! A pair `u = (u1, u2)` evolves by
//!
//! ```text
//! |u_t1; u_x| / |u_y; u_x| = {u1, u2; x, y}_x     |u_t1; u_y| / |u_y; u_x| = [u1, u2; x, y]_x
//! |u_t2; u_x| / |u_x; u_y| = [u1, u2; x, y]_y     |u_t2; u_y| / |u_x; u_y| = {u1, u2; x, y}_y
//! ```
//!
//! which is equivalent to the transport relations `u_t1 = v1 u_y − w1 u_x`
//! and `u_t2 = v2 u_x − w2 u_y` with `v1 = {}_x`, `w1 = []_x`, `v2 = {}_y`,
//! `w2 = []_y`. Compatibility of the two flows forces the field equations
//! `R1 = R2 = 0` computed by [`mt4_residuals`].
//!
//! All jets here live in four variables ordered `x, y, t1, t2`.

use num_complex::Complex64;
use serde::Serialize;

use crate::derivs::{deriv_quad, deriv_quad_jet, DerivQuad, MapJet2};
use crate::error::{Error, Result};
use crate::jets::{Jet, Polynomial};
use crate::lft::Gl3Matrix;

pub const X: usize = 0;
pub const Y: usize = 1;
pub const T1: usize = 2;
pub const T2: usize = 3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A point `(x, y, t1, t2)`.
pub type SpaceTime = [Complex64; 4];

/// Which time flow a quotient refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TimeVar {
    T1,
    T2,
}

fn det2(a: [Complex64; 2], b: [Complex64; 2]) -> Complex64 {
    a[0] * b[1] - a[1] * b[0]
}

fn check_dim(u: &[Jet; 2]) -> Result<()> {
    if u[0].dim() != 4 || u[1].dim() != 4 {
        return Err(Error::Invalid(
            "evolution jets must be in the four variables (x, y, t1, t2)".into(),
        ));
    }
    Ok(())
}

/// The two determinant quotients of the chosen flow. For `t1` they are
/// `(|u_t1; u_x|, |u_t1; u_y|) / |u_y; u_x|`, to be compared with
/// `({}_x, []_x)`; for `t2` they are `(|u_t2; u_x|, |u_t2; u_y|) / |u_x; u_y|`,
/// to be compared with `([]_y, {}_y)`.
pub fn evo_quotients(u: &[Jet; 2], which: TimeVar) -> Result<[Complex64; 2]> {
    check_dim(u)?;
    let grad = |v: usize| [u[0].d(v), u[1].d(v)];
    let (ux, uy) = (grad(X), grad(Y));
    let jac = det2(ux, uy);
    if jac.norm() == 0.0 {
        return Err(Error::SingularJacobian);
    }
    Ok(match which {
        TimeVar::T1 => {
            let ut = grad(T1);
            [det2(ut, ux) / -jac, det2(ut, uy) / -jac]
        }
        TimeVar::T2 => {
            let ut = grad(T2);
            [det2(ut, ux) / jac, det2(ut, uy) / jac]
        }
    })
}

/// The spatial derivative quad of `u` with `(x, y)` active.
pub fn spatial_quad(u: &[Jet; 2]) -> Result<DerivQuad> {
    check_dim(u)?;
    deriv_quad(&MapJet2::with_vars(u[0].clone(), u[1].clone(), (X, Y))?)
}

/// The quotient minus its matching derivative for both equations of a flow;
/// both vanish exactly when `u` satisfies that half of the system.
pub fn evo_membership(u: &[Jet; 2], which: TimeVar) -> Result<[Complex64; 2]> {
    let q = evo_quotients(u, which)?;
    let d = spatial_quad(u)?;
    Ok(match which {
        TimeVar::T1 => [q[0] - d.brace_x, q[1] - d.bracket_x],
        TimeVar::T2 => [q[0] - d.bracket_y, q[1] - d.brace_y],
    })
}

/// The fields `v1, v2, w1, w2` as jets at a common base point.
#[derive(Clone, Debug, PartialEq)]
pub struct EvoFields {
    pub v1: Jet,
    pub v2: Jet,
    pub w1: Jet,
    pub w2: Jet,
}

impl EvoFields {
    /// The fields of a pair `u`: `v1 = {}_x`, `w1 = []_x`, `v2 = {}_y`,
    /// `w2 = []_y`, as jets two orders below `u`.
    pub fn from_map(u: &[Jet; 2]) -> Result<Self> {
        check_dim(u)?;
        let q = deriv_quad_jet(&MapJet2::with_vars(u[0].clone(), u[1].clone(), (X, Y))?)?;
        Ok(Self {
            v1: q.brace_x,
            v2: q.brace_y,
            w1: q.bracket_x,
            w2: q.bracket_y,
        })
    }

    /// Constant fields.
    pub fn constant(c: [Complex64; 4], order: usize) -> Self {
        let k = |v| Jet::constant(4, order, v);
        Self {
            v1: k(c[0]),
            v2: k(c[1]),
            w1: k(c[2]),
            w2: k(c[3]),
        }
    }

    /// The family `v1 = c1`, `v2 = −λ t1`, `w1 = λ t2`, `w2 = c2` at `base`.
    pub fn linear_family(
        c1: Complex64,
        c2: Complex64,
        lambda: Complex64,
        base: SpaceTime,
        order: usize,
    ) -> Self {
        let vars = Jet::variables(order, &base);
        Self {
            v1: Jet::constant(4, order, c1),
            v2: vars[T1].scale(-lambda),
            w1: vars[T2].scale(lambda),
            w2: Jet::constant(4, order, c2),
        }
    }
}

/// `(R1, R2)` with `v1, w1` taken from `a` and `v2, w2` from `b`.
fn residuals_mixed(a: &EvoFields, b: &EvoFields) -> [Complex64; 2] {
    let (v1, w1, v2, w2) = (&a.v1, &a.w1, &b.v2, &b.w2);
    let r1 = w1.d(T2) + v2.d(T1) - v1.value() * v2.d(Y) - v2.value() * w1.d(X)
        + w1.value() * v2.d(X)
        + w2.value() * w1.d(Y);
    let r2 = w2.d(T1) + v1.d(T2) - v1.value() * w2.d(Y) - v2.value() * v1.d(X)
        + w1.value() * w2.d(X)
        + w2.value() * v1.d(Y);
    [r1, r2]
}

/// The two field equations at the base point:
///
/// ```text
/// R1 = ∂w1/∂t2 + ∂v2/∂t1 − v1 ∂v2/∂y − v2 ∂w1/∂x + w1 ∂v2/∂x + w2 ∂w1/∂y
/// R2 = ∂w2/∂t1 + ∂v1/∂t2 − v1 ∂w2/∂y − v2 ∂v1/∂x + w1 ∂w2/∂x + w2 ∂v1/∂y
/// ```
pub fn mt4_residuals(f: &EvoFields) -> [Complex64; 2] {
    residuals_mixed(f, f)
}

/// Polynomial fields in `(x, y, t1, t2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFields {
    pub v1: Polynomial,
    pub v2: Polynomial,
    pub w1: Polynomial,
    pub w2: Polynomial,
}

/// The shifts `v_i(x − a_i t1, y − b_i t2)` with offsets `a2` on `w1` and
/// `b1` on `w2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GalileanShift {
    pub a1: Complex64,
    pub a2: Complex64,
    pub b1: Complex64,
    pub b2: Complex64,
}

impl GalileanShift {
    /// The argument `(x − a t1, y − b t2, t1, t2)` for the first or second
    /// field pair.
    fn argument(&self, z: SpaceTime, second: bool) -> SpaceTime {
        let (a, b) = if second {
            (self.a2, self.b2)
        } else {
            (self.a1, self.b1)
        };
        [z[X] - a * z[T1], z[Y] - b * z[T2], z[T1], z[T2]]
    }
}

impl PolyFields {
    pub fn jets(&self, base: SpaceTime, order: usize) -> EvoFields {
        let vars = Jet::variables(order, &base);
        EvoFields {
            v1: self.v1.eval_jets(&vars),
            v2: self.v2.eval_jets(&vars),
            w1: self.w1.eval_jets(&vars),
            w2: self.w2.eval_jets(&vars),
        }
    }

    /// Jets at `base` of the shifted fields, built by composing each
    /// polynomial with the affine change of variables.
    pub fn shifted_jets(&self, s: &GalileanShift, base: SpaceTime, order: usize) -> EvoFields {
        let vars = Jet::variables(order, &base);
        let arg = |a: Complex64, b: Complex64| {
            vec![
                &vars[X] - &vars[T1].scale(a),
                &vars[Y] - &vars[T2].scale(b),
                vars[T1].clone(),
                vars[T2].clone(),
            ]
        };
        let (p, q) = (arg(s.a1, s.b1), arg(s.a2, s.b2));
        EvoFields {
            v1: self.v1.eval_jets(&p),
            v2: self.v2.eval_jets(&q),
            w1: self.w1.eval_jets(&p).add_scalar(s.a2),
            w2: self.w2.eval_jets(&q).add_scalar(s.b1),
        }
    }
}

/// Both sides of the covariance identity at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CovarianceCheck {
    /// `R_i` of the shifted fields at `z`.
    pub transformed: [Complex64; 2],
    /// `R_i` of the original fields with `v1, w1` and their partials taken
    /// at `(x − a1 t1, y − b1 t2)` and `v2, w2` at `(x − a2 t1, y − b2 t2)`.
    pub original: [Complex64; 2],
}

impl CovarianceCheck {
    pub fn residual(&self) -> f64 {
        self.transformed
            .iter()
            .zip(&self.original)
            .map(|(a, b)| (a - b).norm() / (1.0 + b.norm()))
            .fold(0.0, f64::max)
    }
}

/// The residuals of the shifted fields equal those of the original fields
/// with each pair read at its own shifted point. The offsets on `w1` and `w2`
/// cancel the chain-rule terms exactly, so the identity holds for arbitrary
/// fields. When `a1 = a2` and `b1 = b2` both pairs are read at one point and
/// the shift maps solutions to solutions.
pub fn galilean_covariance_check(
    f: &PolyFields,
    s: &GalileanShift,
    z: SpaceTime,
) -> CovarianceCheck {
    let transformed = mt4_residuals(&f.shifted_jets(s, z, 1));
    let at_p = f.jets(s.argument(z, false), 1);
    let at_q = f.jets(s.argument(z, true), 1);
    CovarianceCheck {
        transformed,
        original: residuals_mixed(&at_p, &at_q),
    }
}

/// Differences of the quotients and of the spatial quad under `u ↦ γ(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvarianceCheck {
    pub quotients_t1: f64,
    pub quotients_t2: f64,
    pub quad: f64,
}

impl InvarianceCheck {
    pub fn worst(&self) -> f64 {
        self.quotients_t1.max(self.quotients_t2).max(self.quad)
    }
}

/// Compares the evolution quotients and the spatial derivatives of `u` and
/// of `γ(u)`.
pub fn gl3_invariance_check(u: &[Jet; 2], g: &Gl3Matrix) -> Result<InvarianceCheck> {
    let gu = g.act_jets(u)?;
    let diff =
        |a: [Complex64; 2], b: [Complex64; 2]| (a[0] - b[0]).norm().max((a[1] - b[1]).norm());
    Ok(InvarianceCheck {
        quotients_t1: diff(
            evo_quotients(u, TimeVar::T1)?,
            evo_quotients(&gu, TimeVar::T1)?,
        ),
        quotients_t2: diff(
            evo_quotients(u, TimeVar::T2)?,
            evo_quotients(&gu, TimeVar::T2)?,
        ),
        quad: spatial_quad(u)?.max_abs_diff(&spatial_quad(&gu)?),
    })
}

/// The compatibility combination of the two flows and its closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransportConsistency {
    /// `∂t1(u_t2) − ∂t2(u_t1)` with the time derivatives of `u` replaced by
    /// the transport relations at every step.
    pub combination: Complex64,
    /// `R1 u_x − R2 u_y`.
    pub expected: Complex64,
}

impl TransportConsistency {
    pub fn residual(&self) -> f64 {
        (self.combination - self.expected).norm() / (1.0 + self.expected.norm())
    }
}

/// Expands `∂t1(v2 u_x − w2 u_y) − ∂t2(v1 u_y − w1 u_x)` for a scalar `u`
/// whose time derivatives are given by the transport relations, and compares
/// it with `R1 u_x − R2 u_y`. Only spatial derivatives of `u` enter, so any
/// `u` and any fields can be used.
pub fn transport_consistency(f: &EvoFields, u: &Jet) -> Result<TransportConsistency> {
    if u.order() < 2 || f.v1.order() < 2 {
        return Err(Error::Invalid(
            "the compatibility combination needs jets of order at least 2".into(),
        ));
    }
    let o = u.order().min(f.v1.order());
    let t = |j: &Jet| j.truncate(o);
    let (v1, v2, w1, w2, u) = (t(&f.v1), t(&f.v2), t(&f.w1), t(&f.w2), t(u));
    let flow1 = |h: &Jet| &(&v1 * &h.partial(Y).pad(o)) - &(&w1 * &h.partial(X).pad(o));
    let flow2 = |h: &Jet| &(&v2 * &h.partial(X).pad(o)) - &(&w2 * &h.partial(Y).pad(o));
    let (ux, uy) = (u.d(X), u.d(Y));
    let (f1u, f2u) = (flow1(&u), flow2(&u));
    // ∂t1 acts on the coefficients directly and on u through the first flow.
    let d_t1_of_flow2 =
        v2.d(T1) * ux - w2.d(T1) * uy + v2.value() * f1u.d(X) - w2.value() * f1u.d(Y);
    let d_t2_of_flow1 =
        v1.d(T2) * uy - w1.d(T2) * ux + v1.value() * f2u.d(Y) - w1.value() * f2u.d(X);
    let [r1, r2] = mt4_residuals(f);
    Ok(TransportConsistency {
        combination: d_t1_of_flow2 - d_t2_of_flow1,
        expected: r1 * ux - r2 * uy,
    })
}

/// Residuals of the transport relations `u_t1 = v1 u_y − w1 u_x` and
/// `u_t2 = v2 u_x − w2 u_y` for both components of `u`.
pub fn transport_residuals(u: &[Jet; 2]) -> Result<[Complex64; 4]> {
    let d = spatial_quad(u)?;
    let mut out = [ZERO; 4];
    for (k, c) in u.iter().enumerate() {
        out[k] = c.d(T1) - (d.brace_x * c.d(Y) - d.bracket_x * c.d(X));
        out[2 + k] = c.d(T2) - (d.brace_y * c.d(X) - d.bracket_y * c.d(Y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn time_independent_maps_have_zero_quotients() {
        let v = Jet::variables(3, &[c(0.2), c(0.3), c(0.0), c(0.0)]);
        let u = [&v[X] + &(&v[Y] * &v[Y]), v[Y].clone()];
        assert_eq!(evo_quotients(&u, TimeVar::T1).unwrap(), [ZERO; 2]);
        assert_eq!(evo_quotients(&u, TimeVar::T2).unwrap(), [ZERO; 2]);
    }

    #[test]
    fn quotients_of_a_simple_flow() {
        let v = Jet::variables(3, &[c(0.2), c(0.3), c(0.0), c(0.0)]);
        let u = [&v[X] + &(&v[T1] * &(&v[X] * &v[X])), v[Y].clone()];
        let q = evo_quotients(&u, TimeVar::T1).unwrap();
        assert!(q[0].norm() < 1e-15);
        assert!((q[1] - c(-0.04)).norm() < 1e-15);
    }

    #[test]
    fn three_variable_jets_are_refused() {
        let v = Jet::variables(2, &[c(0.1), c(0.2), c(0.3)]);
        assert!(evo_quotients(&[v[0].clone(), v[1].clone()], TimeVar::T1).is_err());
    }
}
