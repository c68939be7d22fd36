//! Truncated multivariate Taylor expansions with complex coefficients.
//!
//! A [`Jet`] in `dim` variables of truncation `order` stores the Taylor
//! coefficients of a function around some base point: the coefficient of the
//! monomial `t^α` is `∂^α f / α!`.  All partial derivatives used elsewhere in
//! the crate are read off jets, so every differential identity reduces to ring
//! arithmetic, composition and series evaluation on this type.
//!
//! Shapes are fixed per computation.  Binary operators panic on mismatched
//! shapes; [`jet_arith`] is the fallible entry point.  Reducing the order is
//! always explicit ([`Jet::truncate`], [`Jet::partial`]).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_DIM: usize = 4;
/// Largest supported truncation order.
pub const MAX_ORDER: usize = 3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Exponent vector of a Taylor monomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex([u8; MAX_DIM]);

impl MultiIndex {
    /// Builds an index from up to [`MAX_DIM`] exponents; missing entries are 0.
    pub fn new(exponents: &[u8]) -> Self {
        assert!(exponents.len() <= MAX_DIM, "at most {MAX_DIM} exponents");
        let mut e = [0u8; MAX_DIM];
        e[..exponents.len()].copy_from_slice(exponents);
        Self(e)
    }

    /// The exponent vector of the single variable `var`.
    pub fn unit(var: usize) -> Self {
        let mut e = [0u8; MAX_DIM];
        e[var] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> [u8; MAX_DIM] {
        self.0
    }

    pub fn get(&self, var: usize) -> u8 {
        self.0[var]
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Product of the factorials of the exponents.
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&e| (1..=e as u32).product::<u32>() as f64)
            .product()
    }

    fn plus(self, other: Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Self(e)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Monomial table shared by all jets of one shape.
struct Layout {
    monomials: Vec<MultiIndex>,
    lookup: HashMap<MultiIndex, usize>,
    /// `(i, j, k)` with `mono[i] + mono[j] = mono[k]` and total degree in range.
    products: Vec<(usize, usize, usize)>,
}

impl Layout {
    fn build(dim: usize, order: usize) -> Self {
        let mut monomials = Vec::new();
        for degree in 0..=order {
            push_degree(dim, degree, &mut [0u8; MAX_DIM], 0, &mut monomials);
        }
        let lookup: HashMap<_, _> = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut products = Vec::new();
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                if a.degree() + b.degree() <= order {
                    products.push((i, j, lookup[&a.plus(*b)]));
                }
            }
        }
        Self {
            monomials,
            lookup,
            products,
        }
    }
}

/// Appends all exponent vectors of the given total degree, first variable
/// varying slowest (so degree-1 monomials come out in variable order).
fn push_degree(
    dim: usize,
    remaining: usize,
    current: &mut [u8; MAX_DIM],
    var: usize,
    out: &mut Vec<MultiIndex>,
) {
    if var + 1 == dim {
        current[var] = remaining as u8;
        out.push(MultiIndex(*current));
        current[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e as u8;
        push_degree(dim, remaining - e, current, var + 1, out);
    }
    current[var] = 0;
}

fn layout(dim: usize, order: usize) -> &'static Layout {
    static LAYOUTS: OnceLock<Vec<Layout>> = OnceLock::new();
    let all = LAYOUTS.get_or_init(|| {
        let mut v = Vec::new();
        for d in 1..=MAX_DIM {
            for o in 0..=MAX_ORDER {
                v.push(Layout::build(d, o));
            }
        }
        v
    });
    &all[(dim - 1) * (MAX_ORDER + 1) + order]
}

/// Checks that `(dim, order)` is a supported jet shape.
pub fn check_shape(dim: usize, order: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) && order <= MAX_ORDER {
        Ok(())
    } else {
        Err(Error::UnsupportedShape { dim, order })
    }
}

/// Truncated Taylor expansion in `dim` variables up to total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    dim: usize,
    order: usize,
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// The zero jet.  Panics on an unsupported shape.
    pub fn zero(dim: usize, order: usize) -> Self {
        check_shape(dim, order).expect("jet shape");
        let n = layout(dim, order).monomials.len();
        Self {
            dim,
            order,
            coeffs: vec![ZERO; n],
        }
    }

    pub fn constant(dim: usize, order: usize, c: Complex64) -> Self {
        let mut j = Self::zero(dim, order);
        j.coeffs[0] = c;
        j
    }

    /// The coordinate function `x_var` expanded around `base`.
    pub fn variable(dim: usize, order: usize, var: usize, base: Complex64) -> Self {
        assert!(var < dim, "variable index out of range");
        let mut j = Self::constant(dim, order, base);
        if order >= 1 {
            j.coeffs[1 + var] = ONE;
        }
        j
    }

    /// All coordinate functions expanded around `base`.
    pub fn variables(order: usize, base: &[Complex64]) -> Vec<Jet> {
        (0..base.len())
            .map(|i| Self::variable(base.len(), order, i, base[i]))
            .collect()
    }

    /// Builds a jet from explicit monomial coefficients.
    pub fn from_terms(dim: usize, order: usize, terms: &[(MultiIndex, Complex64)]) -> Result<Self> {
        check_shape(dim, order)?;
        let mut j = Self::zero(dim, order);
        for (m, c) in terms {
            j.set_coeff(*m, *c)?;
        }
        Ok(j)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Constant term, i.e. the function value at the base point.
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn coeff(&self, m: MultiIndex) -> Complex64 {
        layout(self.dim, self.order)
            .lookup
            .get(&m)
            .map_or(ZERO, |&i| self.coeffs[i])
    }

    pub fn set_coeff(&mut self, m: MultiIndex, c: Complex64) -> Result<()> {
        match layout(self.dim, self.order).lookup.get(&m) {
            Some(&i) => {
                self.coeffs[i] = c;
                Ok(())
            }
            None => Err(Error::Invalid(format!(
                "monomial {m} outside jet of dim {} order {}",
                self.dim, self.order
            ))),
        }
    }

    /// Iterates over `(monomial, coefficient)` pairs in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, Complex64)> + '_ {
        layout(self.dim, self.order)
            .monomials
            .iter()
            .copied()
            .zip(self.coeffs.iter().copied())
    }

    /// Mixed partial derivative at the base point, e.g. `&[1, 2]` for ∂³/∂x∂y².
    pub fn derivative(&self, exponents: &[u8]) -> Complex64 {
        let m = MultiIndex::new(exponents);
        self.coeff(m) * m.factorial()
    }

    /// First partial derivative at the base point.
    pub fn d(&self, var: usize) -> Complex64 {
        self.coeff(MultiIndex::unit(var))
    }

    /// Second partial derivative ∂²/∂x_i∂x_j at the base point.
    pub fn d2(&self, i: usize, j: usize) -> Complex64 {
        let m = MultiIndex::unit(i).plus(MultiIndex::unit(j));
        self.coeff(m) * m.factorial()
    }

    /// The partial derivative with respect to `var` as a jet of order one lower.
    pub fn partial(&self, var: usize) -> Jet {
        assert!(self.order >= 1, "partial derivative of an order-0 jet");
        assert!(var < self.dim, "variable index out of range");
        let mut out = Jet::zero(self.dim, self.order - 1);
        let src = layout(self.dim, self.order);
        let dst = layout(self.dim, self.order - 1);
        for (i, m) in src.monomials.iter().enumerate() {
            let e = m.get(var);
            if e == 0 {
                continue;
            }
            let mut lowered = m.exponents();
            lowered[var] -= 1;
            if let Some(&k) = dst.lookup.get(&MultiIndex(lowered)) {
                out.coeffs[k] += self.coeffs[i] * e as f64;
            }
        }
        out
    }

    /// Drops all monomials above the given order.
    pub fn truncate(&self, order: usize) -> Jet {
        assert!(order <= self.order, "truncate cannot raise the order");
        let n = layout(self.dim, order).monomials.len();
        Jet {
            dim: self.dim,
            order,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Raises the order, filling the new coefficients with zeros.  Only valid
    /// for jets known to be exact polynomials of degree ≤ `self.order`.
    pub fn pad(&self, order: usize) -> Jet {
        assert!(order >= self.order, "pad cannot lower the order");
        let mut out = Jet::zero(self.dim, order);
        out.coeffs[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        out
    }

    pub fn scale(&self, c: Complex64) -> Jet {
        Jet {
            dim: self.dim,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add_scalar(&self, c: Complex64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    fn same_shape(&self, other: &Jet) -> Result<()> {
        if self.dim == other.dim && self.order == other.order {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(
                self.dim,
                self.order,
                other.dim,
                other.order,
            ))
        }
    }

    fn zip(&self, other: &Jet, f: impl Fn(Complex64, Complex64) -> Complex64) -> Jet {
        self.same_shape(other).expect("jet shape mismatch");
        Jet {
            dim: self.dim,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    fn product(&self, other: &Jet) -> Jet {
        self.same_shape(other).expect("jet shape mismatch");
        let mut out = Jet::zero(self.dim, self.order);
        for &(i, j, k) in &layout(self.dim, self.order).products {
            out.coeffs[k] += self.coeffs[i] * other.coeffs[j];
        }
        out
    }

    /// Evaluates `Σ s_k (self − self(0))^k` for the given series coefficients.
    fn series(&self, s: &[Complex64]) -> Jet {
        let mut delta = self.clone();
        delta.coeffs[0] = ZERO;
        let mut out = Jet::constant(self.dim, self.order, s[0]);
        let mut power = Jet::constant(self.dim, self.order, ONE);
        for sk in s.iter().skip(1).take(self.order) {
            power = power.product(&delta);
            out = &out + &power.scale(*sk);
        }
        out
    }

    fn nonzero_constant(&self) -> Result<Complex64> {
        let a0 = self.value();
        if a0 == ZERO || !a0.is_finite() {
            Err(Error::ZeroConstantTerm)
        } else {
            Ok(a0)
        }
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Jet> {
        let a0 = self.nonzero_constant()?;
        let s: Vec<_> = (0..=self.order as i32)
            .map(|k| (-a0).powi(-k) / a0)
            .collect();
        Ok(self.series(&s))
    }

    /// Checked division.
    pub fn checked_div(&self, other: &Jet) -> Result<Jet> {
        self.same_shape(other)?;
        Ok(self.product(&other.recip()?))
    }

    /// Complex power using the principal branch of the constant term.
    pub fn powc(&self, q: Complex64) -> Result<Jet> {
        let a0 = self.nonzero_constant()?;
        let lead = a0.powc(q);
        let mut s = Vec::with_capacity(self.order + 1);
        let mut binom = ONE;
        for k in 0..=self.order {
            if k > 0 {
                binom = binom * (q - (k - 1) as f64) / k as f64;
            }
            s.push(lead * binom / a0.powi(k as i32));
        }
        Ok(self.series(&s))
    }

    /// Rational power `a^q` (principal branch of the constant term).
    pub fn powq(&self, q: Ratio<i64>) -> Result<Jet> {
        if q.is_integer() {
            return self.powi(*q.numer());
        }
        self.powc(Complex64::new(*q.numer() as f64 / *q.denom() as f64, 0.0))
    }

    /// Integer power by repeated multiplication; negative powers need a
    /// nonzero constant term.
    pub fn powi(&self, n: i64) -> Result<Jet> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut out = Jet::constant(self.dim, self.order, ONE);
        for _ in 0..n.unsigned_abs() {
            out = out.product(&base);
        }
        Ok(out)
    }

    pub fn exp(&self) -> Jet {
        let e0 = self.value().exp();
        let mut s = Vec::with_capacity(self.order + 1);
        let mut fact = 1.0;
        for k in 0..=self.order {
            if k > 0 {
                fact *= k as f64;
            }
            s.push(e0 / fact);
        }
        self.series(&s)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.nonzero_constant()?;
        let mut s = vec![a0.ln()];
        for k in 1..=self.order {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            s.push(Complex64::new(sign / k as f64, 0.0) / a0.powi(k as i32));
        }
        Ok(self.series(&s))
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.product(rhs)
    }
}

/// Division; a zero constant term in the divisor yields non-finite
/// coefficients.  Use [`Jet::checked_div`] when that case must be reported.
impl std::ops::Div for &Jet {
    type Output = Jet;
    fn div(self, rhs: &Jet) -> Jet {
        match rhs.recip() {
            Ok(r) => self.product(&r),
            Err(_) => self.scale(Complex64::new(f64::NAN, f64::NAN)),
        }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-ONE)
    }
}

/// Ring operation selector for [`jet_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Fallible truncated arithmetic: shapes must match, divisors need a nonzero
/// constant term.
pub fn jet_arith(a: &Jet, b: &Jet, op: ArithOp) -> Result<Jet> {
    a.same_shape(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// `a^q` for rational `q`, principal branch of the constant term.
pub fn jet_powq(a: &Jet, q: Ratio<i64>) -> Result<Jet> {
    a.powq(q)
}

/// Composes `h` (a jet in `g.len()` variables, expanded around the constant
/// terms of `g`) with the inner jets `g`.
pub fn compose(h: &Jet, g: &[Jet]) -> Result<Jet> {
    let first = g
        .first()
        .ok_or_else(|| Error::Invalid("empty inner map".into()))?;
    if h.dim != g.len() {
        return Err(Error::ShapeMismatch(h.dim, h.order, g.len(), first.order));
    }
    for gi in g {
        first.same_shape(gi)?;
    }
    let (dim, order) = (first.dim, first.order);
    if h.order < order {
        return Err(Error::ShapeMismatch(h.dim, h.order, dim, order));
    }
    // powers[i][p] = (g_i - g_i(0))^p
    let powers: Vec<Vec<Jet>> = g
        .iter()
        .map(|gi| {
            let mut delta = gi.clone();
            delta.coeffs[0] = ZERO;
            let mut v = vec![Jet::constant(dim, order, ONE)];
            for p in 1..=order {
                let next = &v[p - 1] * &delta;
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = Jet::zero(dim, order);
    for (m, c) in h.terms() {
        if m.degree() > order || c == ZERO {
            continue;
        }
        let mut term = Jet::constant(dim, order, c);
        for (i, p) in powers.iter().enumerate() {
            let e = m.get(i) as usize;
            if e > 0 {
                term = &term * &p[e];
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Two-variable composition `h(g1, g2)`.
pub fn compose2(h: &Jet, g1: &Jet, g2: &Jet) -> Result<Jet> {
    compose(h, &[g1.clone(), g2.clone()])
}

/// Inverse of the planar map `(g1, g2)`, whose jets are expanded around
/// `base`.  The returned jets are expanded around `(g1(base), g2(base))` and
/// have constant terms `base`.
pub fn invert_map2(g1: &Jet, g2: &Jet, base: [Complex64; 2]) -> Result<(Jet, Jet)> {
    g1.same_shape(g2)?;
    if g1.dim != 2 {
        return Err(Error::Invalid(
            "invert_map2 needs jets in two variables".into(),
        ));
    }
    let order = g1.order;
    let (a, b, c, d) = (g1.d(0), g1.d(1), g2.d(0), g2.d(1));
    let det = a * d - b * c;
    let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
    if det.norm() <= 1e-14 * scale * scale || !det.is_finite() {
        return Err(Error::SingularJacobian);
    }
    // inverse of [[a, b], [c, d]]
    let (ia, ib, ic, id) = (d / det, -b / det, -c / det, a / det);
    let target = [g1.value(), g2.value()];
    let e0 = Jet::variable(2, order, 0, ZERO);
    let e1 = Jet::variable(2, order, 1, ZERO);
    let mut h0 = (&e0.scale(ia) + &e1.scale(ib)).add_scalar(base[0]);
    let mut h1 = (&e0.scale(ic) + &e1.scale(id)).add_scalar(base[1]);
    for _ in 0..order {
        let r0 = &compose2(g1, &h0, &h1)? - &e0.add_scalar(target[0]);
        let r1 = &compose2(g2, &h0, &h1)? - &e1.add_scalar(target[1]);
        h0 = &h0 - &(&r0.scale(ia) + &r1.scale(ib));
        h1 = &h1 - &(&r0.scale(ic) + &r1.scale(id));
    }
    Ok((h0, h1))
}

/// A polynomial in up to four variables with complex coefficients, evaluable
/// pointwise or on jets.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: Vec<(MultiIndex, Complex64)>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: Vec<(MultiIndex, Complex64)>) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "polynomial dimension");
        Self { dim, terms }
    }

    /// The coordinate polynomial `x_var`.
    pub fn coordinate(dim: usize, var: usize) -> Self {
        Self::new(dim, vec![(MultiIndex::unit(var), ONE)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(MultiIndex, Complex64)] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| (0..self.dim).fold(*c, |acc, i| acc * x[i].powi(m.get(i) as i32)))
            .sum()
    }

    /// Evaluates the polynomial on jet arguments (all of the same shape).
    pub fn eval_jets(&self, x: &[Jet]) -> Jet {
        assert_eq!(x.len(), self.dim, "argument count");
        let (dim, order) = (x[0].dim, x[0].order);
        let mut out = Jet::zero(dim, order);
        for (m, c) in &self.terms {
            let mut term = Jet::constant(dim, order, *c);
            for (i, xi) in x.iter().enumerate() {
                for _ in 0..m.get(i) {
                    term = &term * xi;
                }
            }
            out = &out + &term;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn monomial_layout_is_graded() {
        let l = layout(2, 3);
        assert_eq!(l.monomials.len(), 10);
        assert_eq!(l.monomials[1], MultiIndex::new(&[1, 0]));
        assert_eq!(l.monomials[2], MultiIndex::new(&[0, 1]));
        assert_eq!(layout(4, 3).monomials.len(), 35);
    }

    #[test]
    fn product_of_linear_factors() {
        let x = Jet::variable(2, 3, 0, ZERO).add_scalar(ONE);
        let y = Jet::variable(2, 3, 1, ZERO).add_scalar(ONE);
        let p = &x * &y;
        assert_eq!(p.coeff(MultiIndex::new(&[0, 0])), ONE);
        assert_eq!(p.coeff(MultiIndex::new(&[1, 0])), ONE);
        assert_eq!(p.coeff(MultiIndex::new(&[0, 1])), ONE);
        assert_eq!(p.coeff(MultiIndex::new(&[1, 1])), ONE);
        assert_eq!(p.coeff(MultiIndex::new(&[2, 0])), ZERO);
    }

    #[test]
    fn self_quotient_is_one() {
        let x = Jet::variable(1, 3, 0, ZERO).add_scalar(ONE);
        let q = jet_arith(&x, &x, ArithOp::Div).unwrap();
        assert_eq!(q, Jet::constant(1, 3, ONE));
    }

    #[test]
    fn geometric_series() {
        let one_minus_x = (&Jet::variable(1, 3, 0, ZERO)).neg().add_scalar(ONE);
        let g = one_minus_x.recip().unwrap();
        for k in 0..=3u8 {
            assert!(close(g.coeff(MultiIndex::new(&[k])), ONE, 1e-15));
        }
    }

    #[test]
    fn division_by_zero_constant_is_an_error() {
        let x = Jet::variable(1, 2, 0, ZERO);
        assert_eq!(
            jet_arith(&x, &x, ArithOp::Div),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = Jet::zero(1, 2);
        let b = Jet::zero(2, 2);
        let c3 = Jet::zero(1, 3);
        assert!(matches!(
            jet_arith(&a, &b, ArithOp::Add),
            Err(Error::ShapeMismatch(..))
        ));
        assert!(matches!(
            jet_arith(&a, &c3, ArithOp::Mul),
            Err(Error::ShapeMismatch(..))
        ));
    }

    #[test]
    fn cube_root_binomial_series() {
        let a = Jet::variable(1, 3, 0, ZERO).add_scalar(ONE);
        let r = jet_powq(&a, Ratio::new(1, 3)).unwrap();
        let expected = [1.0, 1.0 / 3.0, -1.0 / 9.0, 5.0 / 81.0];
        for (k, e) in expected.iter().enumerate() {
            assert!(close(r.coeff(MultiIndex::new(&[k as u8])), c(*e), 1e-15));
        }
        let cube = a.powi(3).unwrap();
        let back = jet_powq(&cube, Ratio::new(1, 3)).unwrap();
        assert!((&back - &a).max_abs() < 1e-15);
        let one = Jet::constant(2, 3, ONE);
        assert_eq!(jet_powq(&one, Ratio::new(2, 7)).unwrap(), one);
    }

    #[test]
    fn composition_examples() {
        let x = Jet::variable(2, 3, 0, ZERO);
        let y = Jet::variable(2, 3, 1, ZERO);
        let h_sum = Jet::from_terms(
            2,
            3,
            &[
                (MultiIndex::new(&[1, 0]), ONE),
                (MultiIndex::new(&[0, 1]), ONE),
            ],
        )
        .unwrap();
        assert_eq!(compose2(&h_sum, &x, &y).unwrap(), &x + &y);

        // h = w1 w2 around (1, 1)
        let w1 = Jet::variable(2, 3, 0, ONE);
        let w2 = Jet::variable(2, 3, 1, ONE);
        let h_prod = &w1 * &w2;
        let g1 = x.add_scalar(ONE);
        let g2 = y.add_scalar(ONE);
        assert_eq!(compose2(&h_prod, &g1, &g2).unwrap(), &g1 * &g2);

        // h = w1^2 around 0, g1 = x + x^2
        let h_sq = &x * &x;
        let g = &x + &(&x * &x);
        let r = compose2(&h_sq, &g, &y).unwrap();
        assert!(close(r.coeff(MultiIndex::new(&[2, 0])), ONE, 0.0));
        assert!(close(r.coeff(MultiIndex::new(&[3, 0])), c(2.0), 0.0));
        assert_eq!(r.coeff(MultiIndex::new(&[1, 0])), ZERO);
    }

    #[test]
    fn inverse_of_quadratic_perturbation() {
        let x = Jet::variable(2, 2, 0, ZERO);
        let y = Jet::variable(2, 2, 1, ZERO);
        let g1 = &x + &(&x * &x);
        let (h1, h2) = invert_map2(&g1, &y, [ZERO, ZERO]).unwrap();
        assert!(close(h1.coeff(MultiIndex::new(&[1, 0])), ONE, 1e-15));
        assert!(close(h1.coeff(MultiIndex::new(&[2, 0])), -ONE, 1e-15));
        assert_eq!(h2, y);
    }

    #[test]
    fn inverse_of_linear_map() {
        let x = Jet::variable(2, 3, 0, ZERO);
        let y = Jet::variable(2, 3, 1, ZERO);
        let g1 = &x.scale(c(2.0)) + &y;
        let g2 = &x + &y.scale(c(3.0));
        let (h1, h2) = invert_map2(&g1, &g2, [ZERO, ZERO]).unwrap();
        // A^{-1} = [[3, -1], [-1, 2]] / 5
        assert!(close(h1.d(0), c(0.6), 1e-15) && close(h1.d(1), c(-0.2), 1e-15));
        assert!(close(h2.d(0), c(-0.2), 1e-15) && close(h2.d(1), c(0.4), 1e-15));
        assert_eq!(h1.coeff(MultiIndex::new(&[2, 0])), ZERO);
    }

    #[test]
    fn singular_jacobian_is_reported() {
        let x = Jet::variable(2, 2, 0, ZERO);
        assert_eq!(
            invert_map2(&x, &x, [ZERO, ZERO]),
            Err(Error::SingularJacobian)
        );
    }

    #[test]
    fn partial_lowers_the_order() {
        let x = Jet::variable(2, 3, 0, c(0.5));
        let y = Jet::variable(2, 3, 1, c(-1.0));
        let f = &(&x * &x) * &y;
        let fx = f.partial(0);
        assert_eq!(fx.order(), 2);
        assert!(close(fx.value(), c(-1.0), 1e-15));
        assert!(close(f.derivative(&[2, 1]), c(2.0), 1e-15));
        assert!(close(f.d2(0, 1), c(2.0 * 0.5), 1e-15));
    }

    #[test]
    fn exp_and_ln_are_inverse() {
        let x = Jet::variable(2, 3, 0, Complex64::new(0.3, 0.1));
        let y = Jet::variable(2, 3, 1, c(-0.2));
        let f = &(&x * &y) + &x;
        let back = f.exp().ln().unwrap();
        assert!((&back - &f).max_abs() < 1e-14);
    }

    #[test]
    fn polynomial_on_jets_matches_pointwise() {
        let p = Polynomial::new(
            2,
            vec![
                (MultiIndex::new(&[2, 1]), c(3.0)),
                (MultiIndex::new(&[0, 0]), c(1.0)),
            ],
        );
        let pt = [Complex64::new(0.2, 0.1), c(-0.7)];
        let j = p.eval_jets(&Jet::variables(2, &pt));
        assert!(close(j.value(), p.eval(&pt), 1e-15));
        assert!(close(j.d(1), c(3.0) * pt[0] * pt[0], 1e-15));
    }
}
