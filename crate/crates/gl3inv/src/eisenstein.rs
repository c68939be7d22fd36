//! Exact arithmetic in the Eisenstein integers ℤ[ω] and the field ℚ(ω),
//! together with 3×3 matrices over either ring.
//!
//! Elements are stored as `a + bω` with ω = (−1 + √−3)/2, so ω² = −1 − ω and
//! the complex conjugate of `a + bω` is `(a − b) − bω`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient ring for [`Eis`]: the integers or the rationals.
pub trait EisScalar:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + fmt::Debug + fmt::Display
{
    fn to_f64(&self) -> f64;
}

impl EisScalar for i64 {
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl EisScalar for Ratio<i128> {
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// `a + bω` over the scalar ring `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Eis<T> {
    pub a: T,
    pub b: T,
}

/// Eisenstein integer.
pub type EisInt = Eis<i64>;
/// Element of ℚ(ω) with exact rational coordinates.
pub type EisRat = Eis<Ratio<i128>>;

impl<T: EisScalar> Eis<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    /// ω itself.
    pub fn omega() -> Self {
        Self::new(T::zero(), T::one())
    }

    /// ω̄ = −1 − ω.
    pub fn omega_bar() -> Self {
        Self::new(-T::one(), -T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone() - self.b.clone(), -self.b.clone())
    }

    /// Field norm `a² − ab + b²` (the squared modulus).
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - self.a.clone() * self.b.clone()
            + self.b.clone() * self.b.clone()
    }

    pub fn to_complex(&self) -> Complex64 {
        let w = omega_c();
        Complex64::new(self.a.to_f64(), 0.0) + w * self.b.to_f64()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self.clone())
    }
}

impl EisInt {
    pub const ZERO: EisInt = Eis { a: 0, b: 0 };
    pub const ONE: EisInt = Eis { a: 1, b: 0 };
    pub const OMEGA: EisInt = Eis { a: 0, b: 1 };
    pub const OMEGA_BAR: EisInt = Eis { a: -1, b: -1 };

    pub fn int(a: i64) -> Self {
        Self::new(a, 0)
    }

    /// True for the six units ±1, ±ω, ±ω².
    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn to_rat(&self) -> EisRat {
        Eis::new(
            Ratio::from_integer(self.a as i128),
            Ratio::from_integer(self.b as i128),
        )
    }
}

impl EisRat {
    pub fn from_int(z: EisInt) -> Self {
        z.to_rat()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Eis::new(c.a / n, c.b / n))
    }

    /// The element as an Eisenstein integer when both coordinates are integral.
    pub fn to_int(&self) -> Option<EisInt> {
        if self.a.is_integer() && self.b.is_integer() {
            Some(Eis::new(
                self.a.to_integer() as i64,
                self.b.to_integer() as i64,
            ))
        } else {
            None
        }
    }

    pub fn scale(&self, r: Ratio<i128>) -> Self {
        Eis::new(self.a * r, self.b * r)
    }
}

/// ω = e^{2πi/3} as a floating-point complex number.
pub fn omega_c() -> Complex64 {
    Complex64::new(-0.5, 3f64.sqrt() / 2.0)
}

impl<T: EisScalar> Add for Eis<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<T: EisScalar> Sub for Eis<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<T: EisScalar> Neg for Eis<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<T: EisScalar> Mul for Eis<T> {
    type Output = Self;
    /// (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
    fn mul(self, rhs: Self) -> Self {
        let bd = self.b.clone() * rhs.b.clone();
        Self::new(
            self.a.clone() * rhs.a.clone() - bd.clone(),
            self.a * rhs.b + self.b * rhs.a - bd,
        )
    }
}

impl<T: EisScalar> fmt::Display for Eis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}ω", self.b),
            (false, false) => write!(f, "{}{:+}ω", self.a, DisplaySigned(&self.b)),
        }
    }
}

struct DisplaySigned<'a, T>(&'a T);

impl<T: EisScalar> fmt::Display for DisplaySigned<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0.to_string();
        if s.starts_with('-') {
            write!(f, "{s}")
        } else {
            write!(f, "+{s}")
        }
    }
}

/// A 3×3 matrix over ℤ[ω] or ℚ(ω), row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat3<T> {
    pub rows: [[Eis<T>; 3]; 3],
}

/// Exact Eisenstein-integer matrix.
pub type EisMatrix = Mat3<i64>;
/// Exact matrix over ℚ(ω).
pub type EisRatMatrix = Mat3<Ratio<i128>>;

impl<T: EisScalar + Copy> Mat3<T> {
    pub fn new(rows: [[Eis<T>; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn identity() -> Self {
        Self::diag([Eis::one(), Eis::one(), Eis::one()])
    }

    pub fn diag(d: [Eis<T>; 3]) -> Self {
        let z = Eis::zero();
        Self::new([[d[0], z, z], [z, d[1], z], [z, z, d[2]]])
    }

    pub fn entry(&self, i: usize, j: usize) -> Eis<T> {
        self.rows[i][j]
    }

    pub fn scale(&self, s: Eis<T>) -> Self {
        Self::new(self.rows.map(|r| r.map(|e| e * s)))
    }

    pub fn transpose(&self) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.rows[j][i])
        }))
    }

    /// Conjugate transpose g*.
    pub fn adjoint(&self) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.rows[j][i].conj())
        }))
    }

    pub fn det(&self) -> Eis<T> {
        let m = &self.rows;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Classical adjugate, so that `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.rows;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        Self::new([
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|e| e.is_zero())
    }

    pub fn to_complex(&self) -> [[Complex64; 3]; 3] {
        self.rows.map(|r| r.map(|e| e.to_complex()))
    }
}

impl<T: EisScalar + Copy> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(Eis::zero(), |acc, k| acc + self.rows[i][k] * rhs.rows[k][j])
            })
        }))
    }
}

impl<T: EisScalar + Copy> Sub for Mat3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.rows[i][j] - rhs.rows[i][j])
        }))
    }
}

impl EisMatrix {
    /// Builds a matrix from `(a, b)` pairs meaning `a + bω`.
    pub fn from_pairs(p: [[(i64, i64); 3]; 3]) -> Self {
        Self::new(p.map(|r| r.map(|(a, b)| Eis::new(a, b))))
    }

    pub fn to_pairs(&self) -> [[[i64; 2]; 3]; 3] {
        self.rows.map(|r| r.map(|e| [e.a, e.b]))
    }

    /// Inverse inside GL(3, ℤ[ω]); exists exactly when the determinant is a unit.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if !d.is_unit() {
            return None;
        }
        // the inverse of a unit is its conjugate
        Some(self.adjugate().scale(d.conj()))
    }

    /// Integer power; negative exponents need a unit determinant.
    pub fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { *self };
        Some((0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc * base))
    }

    pub fn to_rat(&self) -> EisRatMatrix {
        Mat3::new(self.rows.map(|r| r.map(|e| e.to_rat())))
    }
}

impl EisRatMatrix {
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det().inv()?;
        Some(self.adjugate().scale(d))
    }

    pub fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { *self };
        Some((0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc * base))
    }

    /// The scalar `λ` with `self = λ · other`, if the two matrices are
    /// proportional (and `other` is nonzero).
    pub fn ratio_to(&self, other: &Self) -> Option<EisRat> {
        let (i, j) = (0..9)
            .map(|k| (k / 3, k % 3))
            .find(|&(i, j)| !other.rows[i][j].is_zero())?;
        let lambda = self.rows[i][j] * other.rows[i][j].inv()?;
        let scaled = other.scale(lambda);
        (scaled == *self).then_some(lambda)
    }

    /// Integral form when every entry lies in ℤ[ω].
    pub fn to_int(&self) -> Option<EisMatrix> {
        let mut out = EisMatrix::identity();
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = self.rows[i][j].to_int()?;
            }
        }
        Some(out)
    }
}
