//! The four GL(3) derivatives of a planar map and the transport machinery
//! relating them under changes of variables.
//!
//! For a map `(u1, u2)` of `(x, y)` with Jacobian
//! `J = u1_x u2_y − u2_x u1_y`, and writing `|p; q| = p1 q2 − p2 q1` for
//! vectors indexed by the two components, the derivatives are
//!
//! ```text
//! {u1,u2;x,y}_x = |u_x; u_xx| / J
//! {u1,u2;x,y}_y = |u_y; u_yy| / (−J)
//! [u1,u2;x,y]_x = (|u_y; u_xx| + 2|u_x; u_xy|) / J
//! [u1,u2;x,y]_y = (|u_x; u_yy| + 2|u_y; u_xy|) / (−J)
//! ```
//!
//! All four vanish exactly on linear fractional maps and are unchanged by
//! post-composition with one.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jets::{compose, invert_map2, Jet};
use crate::lft::{Gl3Matrix, Point};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative size below which a Jacobian counts as singular.
const SINGULAR_JACOBIAN: f64 = 1e-14;

/// The pair `(u1, u2)` as jets, differentiated in two chosen variables.
#[derive(Clone, Debug, PartialEq)]
pub struct MapJet2 {
    pub u1: Jet,
    pub u2: Jet,
    /// The two active variables playing the roles of `x` and `y`.
    pub vars: (usize, usize),
}

impl MapJet2 {
    /// A map whose active variables are the first two.
    pub fn new(u1: Jet, u2: Jet) -> Result<Self> {
        Self::with_vars(u1, u2, (0, 1))
    }

    pub fn with_vars(u1: Jet, u2: Jet, vars: (usize, usize)) -> Result<Self> {
        if u1.dim() != u2.dim() || u1.order() != u2.order() {
            return Err(Error::ShapeMismatch(
                u1.dim(),
                u1.order(),
                u2.dim(),
                u2.order(),
            ));
        }
        if vars.0 >= u1.dim() || vars.1 >= u1.dim() || vars.0 == vars.1 {
            return Err(Error::Invalid(format!(
                "active variables {vars:?} out of range"
            )));
        }
        Ok(Self { u1, u2, vars })
    }

    /// The identity map `(x, y)` around `base`.
    pub fn identity(order: usize, base: Point) -> Self {
        let v = Jet::variables(order, &base);
        Self {
            u1: v[0].clone(),
            u2: v[1].clone(),
            vars: (0, 1),
        }
    }

    /// A linear fractional map `g(x, y)` around `base`.
    pub fn lft(g: &Gl3Matrix, order: usize, base: Point) -> Result<Self> {
        let v = Jet::variables(order, &base);
        let [u1, u2] = g.act_jets(&[v[0].clone(), v[1].clone()])?;
        Ok(Self {
            u1,
            u2,
            vars: (0, 1),
        })
    }

    pub fn order(&self) -> usize {
        self.u1.order()
    }

    pub fn value(&self) -> Point {
        [self.u1.value(), self.u2.value()]
    }

    /// First partials `[[u1_x, u1_y], [u2_x, u2_y]]` at the base point.
    pub fn first_partials(&self) -> [[Complex64; 2]; 2] {
        let (x, y) = self.vars;
        [[self.u1.d(x), self.u1.d(y)], [self.u2.d(x), self.u2.d(y)]]
    }

    /// The Jacobian determinant at the base point.
    pub fn jacobian(&self) -> Complex64 {
        let p = self.first_partials();
        p[0][0] * p[1][1] - p[1][0] * p[0][1]
    }

    fn check_jacobian(&self) -> Result<Complex64> {
        let p = self.first_partials();
        let j = p[0][0] * p[1][1] - p[1][0] * p[0][1];
        let scale = p.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
        if !j.is_finite() || j.norm() <= SINGULAR_JACOBIAN * scale * scale || scale == 0.0 {
            Err(Error::SingularJacobian)
        } else {
            Ok(j)
        }
    }

    /// Post-composes with a linear fractional transformation.
    pub fn apply_lft(&self, g: &Gl3Matrix) -> Result<Self> {
        let [u1, u2] = g.act_jets(&[self.u1.clone(), self.u2.clone()])?;
        Ok(Self {
            u1,
            u2,
            vars: self.vars,
        })
    }

    /// The composite `outer ∘ self`, where `outer` is expanded around
    /// `self.value()`.
    pub fn then(&self, outer: &MapJet2) -> Result<Self> {
        let inner = [self.u1.clone(), self.u2.clone()];
        Ok(Self {
            u1: compose(&outer.u1, &inner)?,
            u2: compose(&outer.u2, &inner)?,
            vars: self.vars,
        })
    }

    /// The inverse map around `self.value()`, given the base point of `self`.
    pub fn inverse(&self, base: Point) -> Result<Self> {
        if self.u1.dim() != 2 {
            return Err(Error::Invalid(
                "inverse needs a map of two variables".into(),
            ));
        }
        let (h1, h2) = invert_map2(&self.u1, &self.u2, base)?;
        Ok(Self {
            u1: h1,
            u2: h2,
            vars: (0, 1),
        })
    }
}

/// The four derivative values `({}_x, {}_y, []_x, []_y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivQuad {
    pub brace_x: Complex64,
    pub brace_y: Complex64,
    pub bracket_x: Complex64,
    pub bracket_y: Complex64,
}

impl DerivQuad {
    pub fn new(v: [Complex64; 4]) -> Self {
        Self {
            brace_x: v[0],
            brace_y: v[1],
            bracket_x: v[2],
            bracket_y: v[3],
        }
    }

    pub fn zero() -> Self {
        Self::new([ZERO; 4])
    }

    pub fn to_array(&self) -> [Complex64; 4] {
        [self.brace_x, self.brace_y, self.bracket_x, self.bracket_y]
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DerivQuad) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// The four derivatives as jets, so that their own partials are available.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadJet {
    pub brace_x: Jet,
    pub brace_y: Jet,
    pub bracket_x: Jet,
    pub bracket_y: Jet,
}

impl QuadJet {
    pub fn value(&self) -> DerivQuad {
        DerivQuad::new([
            self.brace_x.value(),
            self.brace_y.value(),
            self.bracket_x.value(),
            self.bracket_y.value(),
        ])
    }

    pub fn to_array(&self) -> [&Jet; 4] {
        [
            &self.brace_x,
            &self.brace_y,
            &self.bracket_x,
            &self.bracket_y,
        ]
    }
}

fn det2(p: (&Jet, &Jet), q: (&Jet, &Jet)) -> Jet {
    &(p.0 * q.1) - &(p.1 * q.0)
}

/// The four derivatives as jets of order `order − 2`.
pub fn deriv_quad_jet(m: &MapJet2) -> Result<QuadJet> {
    if m.order() < 2 {
        return Err(Error::Invalid(
            "the four derivatives need jets of order at least 2".into(),
        ));
    }
    m.check_jacobian()?;
    let (x, y) = m.vars;
    let o = m.order() - 2;
    let first = |u: &Jet, v: usize| u.partial(v).truncate(o);
    let second = |u: &Jet, v: usize, w: usize| u.partial(v).partial(w);
    let (u1x, u1y, u2x, u2y) = (
        first(&m.u1, x),
        first(&m.u1, y),
        first(&m.u2, x),
        first(&m.u2, y),
    );
    let (u1xx, u1xy, u1yy) = (
        second(&m.u1, x, x),
        second(&m.u1, x, y),
        second(&m.u1, y, y),
    );
    let (u2xx, u2xy, u2yy) = (
        second(&m.u2, x, x),
        second(&m.u2, x, y),
        second(&m.u2, y, y),
    );
    let ux = (&u1x, &u2x);
    let uy = (&u1y, &u2y);
    let jac = det2(ux, uy);
    let inv = jac.recip()?;
    let neg_inv = -&inv;
    let two = |j: Jet| j.scale(Complex64::new(2.0, 0.0));
    Ok(QuadJet {
        brace_x: &det2(ux, (&u1xx, &u2xx)) * &inv,
        brace_y: &det2(uy, (&u1yy, &u2yy)) * &neg_inv,
        bracket_x: &(&det2(uy, (&u1xx, &u2xx)) + &two(det2(ux, (&u1xy, &u2xy)))) * &inv,
        bracket_y: &(&det2(ux, (&u1yy, &u2yy)) + &two(det2(uy, (&u1xy, &u2xy)))) * &neg_inv,
    })
}

/// The four derivatives at the base point.
pub fn deriv_quad(m: &MapJet2) -> Result<DerivQuad> {
    Ok(deriv_quad_jet(&m.truncated(2))?.value())
}

impl MapJet2 {
    fn truncated(&self, order: usize) -> MapJet2 {
        if self.order() <= order {
            return self.clone();
        }
        MapJet2 {
            u1: self.u1.truncate(order),
            u2: self.u2.truncate(order),
            vars: self.vars,
        }
    }
}

/// The 4×4 matrix carrying the derivatives of `u` with respect to `w` to
/// derivatives with respect to `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransportMatrix {
    pub m: [[Complex64; 4]; 4],
}

impl TransportMatrix {
    /// Builds the matrix from `a = w1_x`, `b = w2_x`, `c = w1_y`, `d = w2_y`.
    pub fn from_partials(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        let three = Complex64::new(3.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        Self {
            m: [
                [a * a * a, -b * b * b, a * a * b, -a * b * b],
                [-c * c * c, d * d * d, -c * c * d, c * d * d],
                [
                    three * a * a * c,
                    -three * b * b * d,
                    a * a * d + two * a * b * c,
                    -(b * b * c + two * a * b * d),
                ],
                [
                    -three * a * c * c,
                    three * b * d * d,
                    -(b * c * c + two * a * c * d),
                    a * d * d + two * b * c * d,
                ],
            ],
        }
    }

    pub fn identity() -> Self {
        Self::from_partials(ONE, ZERO, ZERO, ONE)
    }

    pub fn mul(&self, other: &TransportMatrix) -> TransportMatrix {
        TransportMatrix {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..4).map(|k| self.m[i][k] * other.m[k][j]).sum())
            }),
        }
    }

    pub fn apply(&self, q: &DerivQuad) -> DerivQuad {
        let v = q.to_array();
        DerivQuad::new(std::array::from_fn(|i| {
            (0..4).map(|k| self.m[i][k] * v[k]).sum()
        }))
    }

    pub fn max_abs_diff(&self, other: &TransportMatrix) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `M(w1, w2; x, y)` from the first partials of `w`.
pub fn transport_matrix(w: &MapJet2) -> TransportMatrix {
    let p = w.first_partials();
    TransportMatrix::from_partials(p[0][0], p[1][0], p[0][1], p[1][1])
}

/// The right-hand side of the chain rule: given the derivatives of `u` with
/// respect to `w` (at `w`'s value), returns those of `u ∘ w` with respect to
/// `x` as `M(w;x)/J(w;x) · q(u;w) + q(w;x)`.
pub fn chain_rule_rhs(u_quad_at_w: &DerivQuad, w: &MapJet2) -> Result<DerivQuad> {
    let jac = w.check_jacobian()?;
    let qw = deriv_quad(w)?;
    let moved = transport_matrix(w).apply(u_quad_at_w);
    Ok(DerivQuad::new(std::array::from_fn(|i| {
        moved.to_array()[i] / jac + qw.to_array()[i]
    })))
}

/// The 5×5 block matrix `[[M, c·J·q], [0, J]]` built from one map.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedTransport {
    pub m: TransportMatrix,
    pub jac: Complex64,
    pub quad: DerivQuad,
    pub c: Complex64,
}

impl ExtendedTransport {
    pub fn new(w: &MapJet2, c: Complex64) -> Result<Self> {
        Ok(Self {
            m: transport_matrix(w),
            jac: w.check_jacobian()?,
            quad: deriv_quad(w)?,
            c,
        })
    }

    pub fn matrix(&self) -> [[Complex64; 5]; 5] {
        let mut out = [[ZERO; 5]; 5];
        let q = self.quad.to_array();
        for i in 0..4 {
            out[i][..4].copy_from_slice(&self.m.m[i]);
            out[i][4] = self.c * self.jac * q[i];
        }
        out[4][4] = self.jac;
        out
    }
}

/// Product of two 5×5 matrices.
pub fn mul5(a: &[[Complex64; 5]; 5], b: &[[Complex64; 5]; 5]) -> [[Complex64; 5]; 5] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..5).map(|k| a[i][k] * b[k][j]).sum()))
}

/// The derivatives of `u` with respect to `z` when `q` holds those with
/// respect to `g(z)`, for a linear fractional `g`.
pub fn second_arg_transform(q: &DerivQuad, g: &Gl3Matrix, z: Point) -> Result<DerivQuad> {
    let [a1, a2, a3] = g.a();
    let [b1, b2, b3] = g.b();
    let [c1, c2, c3] = g.c();
    let (x, y) = (z[0], z[1]);
    let den = g.denominator(z);
    let delta = g.det();
    let big_d = delta * den * den * den;
    if den.norm() == 0.0 {
        return Err(Error::VanishingDenominator("c1 x + c2 y + c3"));
    }
    if delta.norm() == 0.0 {
        return Err(Error::VanishingDenominator("det(g)"));
    }
    let cap_a1 = (a1 * c2 - a2 * c1) * y + (a1 * c3 - a3 * c1);
    let cap_a2 = (a2 * c1 - a1 * c2) * x + (a2 * c3 - a3 * c2);
    let cap_b1 = (b1 * c2 - b2 * c1) * y + (b1 * c3 - b3 * c1);
    let cap_b2 = (b2 * c1 - b1 * c2) * x + (b2 * c3 - b3 * c2);
    let moved = TransportMatrix::from_partials(cap_a1, cap_b1, cap_a2, cap_b2).apply(q);
    Ok(DerivQuad::new(moved.to_array().map(|v| v / big_d)))
}

/// Right-hand side of the Jacobian deformation identity: the Jacobian
/// `∂(f1, f2)/∂(z1, z2)` of the field `(f1, f2) = (f̂1, f̂2)·Dz`, expressed
/// through `f̂`, its first partials and the second partials of `z`.
pub fn jacobian_deformation(fhat1: &Jet, fhat2: &Jet, z: &MapJet2) -> Result<Complex64> {
    let jac = z.check_jacobian()?;
    if z.order() < 2 || fhat1.order() < 1 || fhat2.order() < 1 {
        return Err(Error::Invalid(
            "need z of order ≥ 2 and f̂ of order ≥ 1".into(),
        ));
    }
    let (w1, w2) = z.vars;
    let (h1, h2) = (fhat1.value(), fhat2.value());
    let (f11, f12, f21, f22) = (fhat1.d(w1), fhat1.d(w2), fhat2.d(w1), fhat2.d(w2));
    let r1 = (z.u1.d(w1), z.u2.d(w1));
    let r2 = (z.u1.d(w2), z.u2.d(w2));
    let r11 = (z.u1.d2(w1, w1), z.u2.d2(w1, w1));
    let r12 = (z.u1.d2(w1, w2), z.u2.d2(w1, w2));
    let r22 = (z.u1.d2(w2, w2), z.u2.d2(w2, w2));
    let d = |p: (Complex64, Complex64), q: (Complex64, Complex64)| p.0 * q.1 - p.1 * q.0;
    let nj = -jac;
    Ok((f11 * f22 - f12 * f21)
        - h1 * f12 * d(r1, r11) / jac
        - h2 * f21 * d(r2, r22) / nj
        - h1 * f22 * d(r2, r11) / jac
        - (h2 * f12 - h1 * f11) * d(r1, r12) / jac
        - h2 * f11 * d(r1, r22) / nj
        - (h1 * f21 - h2 * f22) * d(r2, r12) / nj
        + h1 * h1 * d(r11, r12) / jac
        + h2 * h2 * d(r22, r12) / nj
        + h1 * h2 * d(r11, r22) / jac)
}

/// Independent evaluation of `∂(f1, f2)/∂(z1, z2)`: builds `f` in the
/// `w`-variables, re-expresses it in `z` through the inverse jets and takes
/// the Jacobian there.  Needs a map of two variables and its base point.
pub fn jacobian_deformation_direct(
    fhat1: &Jet,
    fhat2: &Jet,
    z: &MapJet2,
    base: Point,
) -> Result<Complex64> {
    let o = z.order() - 1;
    let (w1, w2) = z.vars;
    let (h1, h2) = (fhat1.truncate(o), fhat2.truncate(o));
    let dz = |u: &Jet, v: usize| u.partial(v);
    let f1 = &(&h1 * &dz(&z.u1, w1)) + &(&h2 * &dz(&z.u1, w2));
    let f2 = &(&h1 * &dz(&z.u2, w1)) + &(&h2 * &dz(&z.u2, w2));
    let inv = z.truncated(o).inverse(base)?;
    let g1 = compose(&f1, &[inv.u1.clone(), inv.u2.clone()])?;
    let g2 = compose(&f2, &[inv.u1, inv.u2])?;
    Ok(g1.d(0) * g2.d(1) - g1.d(1) * g2.d(0))
}

/// Coefficients of `∂/∂t1` and `∂/∂t2` in the bracket of two fields,
/// without the integral term.
pub fn z0_bracket_coeffs(f1: &Jet, f2: &Jet) -> Result<(Jet, Jet)> {
    if f1.order() < 1 || f1.dim() != f2.dim() || f1.order() != f2.order() {
        return Err(Error::ShapeMismatch(
            f1.dim(),
            f1.order(),
            f2.dim(),
            f2.order(),
        ));
    }
    let o = f1.order() - 1;
    let (a, b) = (f1.truncate(o), f2.truncate(o));
    let (a1, a2, b1, b2) = (f1.partial(0), f1.partial(1), f2.partial(0), f2.partial(1));
    let sum = &a + &b;
    let first = &(&sum * &a2) + &(&a * &(&b2 - &a1));
    let second = &(&sum * &b1) + &(&b * &(&a1 - &b2));
    Ok((first, second))
}

/// A constant-coefficient system `z_xx = a·(z_x, z_y, z)`,
/// `z_xy = b·(…)`, `z_yy = c·(…)` solved by three exponentials, with the
/// derivatives of `(z1/z3, z2/z3)` it predicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpSystem {
    pub a: [Complex64; 3],
    pub b: [Complex64; 3],
    pub c: [Complex64; 3],
    pub pairs: [(Complex64, Complex64); 3],
    pub predicted: DerivQuad,
}

impl ExpSystem {
    /// The quotient map `(z1/z3, z2/z3)` as jets at `base`.
    pub fn quotient_map(&self, order: usize, base: Point) -> Result<MapJet2> {
        let v = Jet::variables(order, &base);
        let e = |(l, m): (Complex64, Complex64)| (&v[0].scale(l) + &v[1].scale(m)).exp();
        let z: Vec<Jet> = self.pairs.iter().map(|p| e(*p)).collect();
        let inv = z[2].recip()?;
        MapJet2::new(&z[0] * &inv, &z[1] * &inv)
    }
}

fn solve3(rows: [[Complex64; 3]; 3], rhs: [Complex64; 3]) -> Result<[Complex64; 3]> {
    let det = |m: &[[Complex64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&rows);
    let scale = rows.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
    if d.norm() <= 1e-12 * scale.powi(3) {
        return Err(Error::SingularSystem);
    }
    Ok(std::array::from_fn(|k| {
        let mut m = rows;
        for i in 0..3 {
            m[i][k] = rhs[i];
        }
        det(&m) / d
    }))
}

/// Builds the system whose solutions are `exp(λ_i x + μ_i y)`.
pub fn exp_system_oracle(pairs: [(Complex64, Complex64); 3]) -> Result<ExpSystem> {
    let rows = pairs.map(|(l, m)| [l, m, ONE]);
    let a = solve3(rows, pairs.map(|(l, _)| l * l))?;
    let b = solve3(rows, pairs.map(|(l, m)| l * m))?;
    let c = solve3(rows, pairs.map(|(_, m)| m * m))?;
    let two = Complex64::new(2.0, 0.0);
    let predicted = DerivQuad::new([a[1], c[0], two * b[1] - a[0], two * b[0] - c[1]]);
    Ok(ExpSystem {
        a,
        b,
        c,
        pairs,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_has_zero_quad() {
        let m = MapJet2::identity(2, [c(0.3), c(-0.2)]);
        assert_eq!(deriv_quad(&m).unwrap(), DerivQuad::zero());
        assert_eq!(transport_matrix(&m), TransportMatrix::identity());
    }

    #[test]
    fn exponential_system_example() {
        let sys =
            exp_system_oracle([(c(1.0), c(0.0)), (c(0.0), c(1.0)), (c(1.0), c(1.0))]).unwrap();
        let close = |u: [Complex64; 3], v: [f64; 3]| {
            u.iter().zip(v).all(|(a, b)| (a - c(b)).norm() < 1e-14)
        };
        assert!(close(sys.a, [1.0, 0.0, 0.0]));
        assert!(close(sys.b, [1.0, 1.0, -1.0]));
        assert!(close(sys.c, [0.0, 1.0, 0.0]));
        assert!(
            sys.predicted
                .max_abs_diff(&DerivQuad::new([c(0.0), c(0.0), c(1.0), c(1.0)]))
                < 1e-14
        );
        let m = sys.quotient_map(2, [c(0.3), c(-0.2)]).unwrap();
        assert!(deriv_quad(&m).unwrap().max_abs_diff(&sys.predicted) < 1e-12);
    }

    #[test]
    fn collinear_pairs_are_singular() {
        let r = exp_system_oracle([(c(1.0), c(1.0)), (c(2.0), c(2.0)), (c(3.0), c(3.0))]);
        assert_eq!(r.unwrap_err(), Error::SingularSystem);
    }

    #[test]
    fn singular_map_is_rejected() {
        let v = Jet::variables(2, &[c(0.1), c(0.2)]);
        let m = MapJet2::new(v[0].clone(), v[0].clone()).unwrap();
        assert_eq!(deriv_quad(&m), Err(Error::SingularJacobian));
    }

    #[test]
    fn z0_bracket_examples() {
        let t = Jet::variables(2, &[c(0.4), c(0.7)]);
        let zero = Jet::zero(2, 2);
        let (p, q) = z0_bracket_coeffs(&t[1], &zero).unwrap();
        assert!((p.value() - c(0.7)).norm() < 1e-15);
        assert_eq!(q.value(), Complex64::new(0.0, 0.0));
        let k = Jet::constant(2, 2, c(2.0));
        let (p, q) = z0_bracket_coeffs(&k, &k).unwrap();
        assert_eq!((p.max_abs(), q.max_abs()), (0.0, 0.0));
    }

    #[test]
    fn constant_field_has_zero_deformation() {
        let z = MapJet2::identity(3, [c(0.2), c(0.1)]);
        let one = Jet::constant(2, 3, c(1.0));
        let zero = Jet::zero(2, 3);
        assert_eq!(
            jacobian_deformation(&one, &zero, &z).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert!(
            jacobian_deformation_direct(&one, &zero, &z, [c(0.2), c(0.1)])
                .unwrap()
                .norm()
                < 1e-15
        );
    }
}
