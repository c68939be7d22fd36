//! The integral Heisenberg group N(ℤ[ω]) of unipotent upper-triangular
//! elements `[α, β]` with `β + β̄ = αᾱ`, and its decomposition into the
//! translations T1, T2 and the central commutator.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eisenstein::{EisInt, EisMatrix};
use crate::error::{Error, Result};
use crate::lft::{Generator, Word};

/// The number `(p + q√−3)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfLattice {
    pub p: i64,
    pub q: i64,
}

impl HalfLattice {
    pub fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    /// `b1 + b2ω = (2b1 − b2 + b2√−3)/2`.
    pub fn from_eis(z: EisInt) -> Self {
        Self::new(2 * z.a - z.b, z.b)
    }

    /// The Eisenstein integer with this value, when `p ≡ q (mod 2)`.
    pub fn to_eis(&self) -> Option<EisInt> {
        ((self.p - self.q).rem_euclid(2) == 0).then(|| EisInt::new((self.p + self.q) / 2, self.q))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.p, -self.q)
    }

    /// Twice the real part.
    pub fn trace(&self) -> i64 {
        self.p
    }
}

impl std::ops::Add for HalfLattice {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl fmt::Display for HalfLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}√-3)/2", self.p, self.q)
    }
}

/// The element `[α, β]` = ((1, α, β), (0, 1, ᾱ), (0, 0, 1)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElem {
    pub alpha: EisInt,
    pub beta: HalfLattice,
}

impl HeisenbergElem {
    /// Builds `[α, β]`, checking `β + β̄ = αᾱ`.
    pub fn new(alpha: EisInt, beta: HalfLattice) -> Result<Self> {
        let e = Self { alpha, beta };
        if e.is_valid() {
            Ok(e)
        } else {
            Err(Error::Invalid(format!(
                "[{alpha}, {beta}] violates β + β̄ = αᾱ"
            )))
        }
    }

    pub fn from_eis(alpha: EisInt, beta: EisInt) -> Result<Self> {
        Self::new(alpha, HalfLattice::from_eis(beta))
    }

    pub fn identity() -> Self {
        Self {
            alpha: EisInt::ZERO,
            beta: HalfLattice::new(0, 0),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.beta.trace() == self.alpha.norm()
    }

    /// The inverse `[−α, β̄]`.
    pub fn inverse(&self) -> Self {
        Self {
            alpha: -self.alpha,
            beta: self.beta.conj(),
        }
    }

    pub fn to_matrix(&self) -> Option<EisMatrix> {
        let beta = self.beta.to_eis()?;
        let (o, i) = (EisInt::ZERO, EisInt::ONE);
        Some(EisMatrix::new([
            [i, self.alpha, beta],
            [o, i, self.alpha.conj()],
            [o, o, i],
        ]))
    }

    /// Reads `[α, β]` off a unipotent upper-triangular matrix.
    pub fn from_matrix(m: &EisMatrix) -> Result<Self> {
        let (o, i) = (EisInt::ZERO, EisInt::ONE);
        let r = &m.rows;
        let unipotent = r[0][0] == i
            && r[1][1] == i
            && r[2][2] == i
            && r[1][0] == o
            && r[2][0] == o
            && r[2][1] == o;
        if !unipotent || r[1][2] != r[0][1].conj() {
            return Err(Error::Invalid("matrix is not of the form [α, β]".into()));
        }
        Self::from_eis(r[0][1], r[0][2])
    }
}

/// `[α1, β1][α2, β2] = [α1 + α2, β1 + β2 + α1ᾱ2]`.
pub fn heisenberg_mul(n1: &HeisenbergElem, n2: &HeisenbergElem) -> HeisenbergElem {
    HeisenbergElem {
        alpha: n1.alpha + n2.alpha,
        beta: n1.beta + n2.beta + HalfLattice::from_eis(n1.alpha * n2.alpha.conj()),
    }
}

/// Writes an element of N(ℤ[ω]) as `T1^m T2^n C^k` with `C = [T1, T2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergDecomposition {
    pub m: i64,
    pub n: i64,
    /// The parameter in `β = (m² − mn + n²)/2 + [(m + n + mn)/2 + l](ω − ω̄)`.
    pub l: i64,
    /// The exponent of the commutator, `−l − m − n − mn`.
    pub central_exponent: i64,
}

impl HeisenbergDecomposition {
    pub fn word(&self) -> Word {
        Word::gens(&[
            (Generator::T1, self.m),
            (Generator::T2, self.n),
            (Generator::C, self.central_exponent),
        ])
    }
}

/// Solves for `(m, n, l)` and confirms the product exactly.
pub fn decompose_heisenberg(e: &HeisenbergElem) -> Result<HeisenbergDecomposition> {
    if !e.is_valid() {
        return Err(Error::Invalid("element violates β + β̄ = αᾱ".into()));
    }
    let target = e
        .to_matrix()
        .ok_or_else(|| Error::Invalid("β is not an Eisenstein integer".into()))?;
    let (m, n) = (e.alpha.a, e.alpha.b);
    // the √−3 coefficient of β is q/2 = (m + n + mn)/2 + l
    let twice_l = e.beta.q - m - n - m * n;
    if twice_l.rem_euclid(2) != 0 {
        return Err(Error::Invalid("β has the wrong parity for N(ℤ[ω])".into()));
    }
    let l = twice_l / 2;
    let d = HeisenbergDecomposition {
        m,
        n,
        l,
        central_exponent: -l - m - n - m * n,
    };
    match d.word().eval() {
        Some(p) if p == target => Ok(d),
        _ => Err(Error::Invalid(
            "decomposition failed to reproduce the element".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translations_as_elements() {
        let t1 = HeisenbergElem::from_matrix(&Generator::T1.matrix()).unwrap();
        assert_eq!(
            t1,
            HeisenbergElem::from_eis(EisInt::ONE, -EisInt::OMEGA).unwrap()
        );
        let d = decompose_heisenberg(&t1).unwrap();
        assert_eq!((d.m, d.n, d.l), (1, 0, -1));
        assert_eq!(d.central_exponent, 0);
    }

    #[test]
    fn centre() {
        let c = HeisenbergElem::from_matrix(&Generator::C.matrix()).unwrap();
        assert_eq!(c.alpha, EisInt::ZERO);
        let d = decompose_heisenberg(&c).unwrap();
        assert_eq!((d.m, d.n, d.central_exponent), (0, 0, 1));
        let x = HeisenbergElem::new(EisInt::ZERO, HalfLattice::new(0, 4)).unwrap();
        let y = HeisenbergElem::new(EisInt::ZERO, HalfLattice::new(0, -6)).unwrap();
        assert_eq!(heisenberg_mul(&x, &y).beta, HalfLattice::new(0, -2));
    }

    #[test]
    fn inverse_is_conjugate() {
        let t2 = HeisenbergElem::from_matrix(&Generator::T2.matrix()).unwrap();
        assert_eq!(
            heisenberg_mul(&t2, &t2.inverse()),
            HeisenbergElem::identity()
        );
    }

    #[test]
    fn invalid_elements_are_rejected() {
        assert!(HeisenbergElem::new(EisInt::ONE, HalfLattice::new(0, 0)).is_err());
        let bogus = HeisenbergElem {
            alpha: EisInt::ONE,
            beta: HalfLattice::new(3, 1),
        };
        assert!(decompose_heisenberg(&bogus).is_err());
    }
}
