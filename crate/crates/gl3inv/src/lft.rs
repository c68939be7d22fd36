//! Linear fractional action of GL(3, ℂ) on ℂ², the named arithmetic
//! generators of U(2,1; ℤ[ω]) and exact word evaluation.
//!
//! A matrix with rows `a`, `b`, `c` sends `z = (z1, z2)` to
//! `((a·ẑ)/(c·ẑ), (b·ẑ)/(c·ẑ))` where `ẑ = (z1, z2, 1)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::eisenstein::{EisInt, EisMatrix, EisRatMatrix};
use crate::error::{Error, Result};
use crate::jets::Jet;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A point of ℂ².
pub type Point = [Complex64; 2];

/// Denominators below this modulus are treated as vanishing.
pub const DENOMINATOR_FLOOR: f64 = 1e-300;

/// A 3×3 complex matrix acting on ℂ² by linear fractional transformation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gl3Matrix {
    pub m: [[Complex64; 3]; 3],
}

impl Gl3Matrix {
    pub fn new(m: [[Complex64; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn from_real(m: [[f64; 3]; 3]) -> Self {
        Self::new(m.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn from_eis(g: &EisMatrix) -> Self {
        Self::new(g.to_complex())
    }

    pub fn from_eis_rat(g: &EisRatMatrix) -> Self {
        Self::new(g.to_complex())
    }

    /// First row `(a1, a2, a3)`.
    pub fn a(&self) -> [Complex64; 3] {
        self.m[0]
    }

    pub fn b(&self) -> [Complex64; 3] {
        self.m[1]
    }

    pub fn c(&self) -> [Complex64; 3] {
        self.m[2]
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn mul(&self, other: &Gl3Matrix) -> Gl3Matrix {
        Gl3Matrix::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum())
        }))
    }

    pub fn inverse(&self) -> Result<Gl3Matrix> {
        let d = self.det();
        if d.norm() <= DENOMINATOR_FLOOR {
            return Err(Error::SingularSystem);
        }
        let m = &self.m;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
        };
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Ok(Gl3Matrix::new(adj.map(|r| r.map(|e| e / d))))
    }

    pub fn scale(&self, s: Complex64) -> Gl3Matrix {
        Gl3Matrix::new(self.m.map(|r| r.map(|e| e * s)))
    }

    /// The affine form `c1 z1 + c2 z2 + c3`.
    pub fn denominator(&self, z: Point) -> Complex64 {
        let c = self.c();
        c[0] * z[0] + c[1] * z[1] + c[2]
    }

    /// The linear fractional image of `z`.
    pub fn act(&self, z: Point) -> Result<Point> {
        let den = self.denominator(z);
        if den.norm() <= DENOMINATOR_FLOOR || !den.is_finite() {
            return Err(Error::VanishingDenominator("c1 z1 + c2 z2 + c3"));
        }
        let (a, b) = (self.a(), self.b());
        Ok([
            (a[0] * z[0] + a[1] * z[1] + a[2]) / den,
            (b[0] * z[0] + b[1] * z[1] + b[2]) / den,
        ])
    }

    /// The action applied to jet arguments.
    pub fn act_jets(&self, z: &[Jet; 2]) -> Result<[Jet; 2]> {
        let affine = |r: [Complex64; 3]| (&z[0].scale(r[0]) + &z[1].scale(r[1])).add_scalar(r[2]);
        let den = affine(self.c());
        let inv = den
            .recip()
            .map_err(|_| Error::VanishingDenominator("c1 z1 + c2 z2 + c3"))?;
        Ok([&affine(self.a()) * &inv, &affine(self.b()) * &inv])
    }

    /// Jacobian determinant of the action: `det(g) / (c·ẑ)³`.
    pub fn jacobian_factor(&self, z: Point) -> Result<Complex64> {
        let den = self.denominator(z);
        if den.norm() <= DENOMINATOR_FLOOR || !den.is_finite() {
            return Err(Error::VanishingDenominator("c1 z1 + c2 z2 + c3"));
        }
        Ok(self.det() / (den * den * den))
    }

    pub fn max_abs_diff(&self, other: &Gl3Matrix) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `(a·z)/(c·z), (b·z)/(c·z)` for the given matrix.
pub fn act(g: &Gl3Matrix, z: Point) -> Result<Point> {
    g.act(z)
}

pub fn jacobian_factor(g: &Gl3Matrix, z: Point) -> Result<Complex64> {
    g.jacobian_factor(z)
}

/// ρ(z) = z1 + z̄1 − z2 z̄2; the ball model is the region ρ > 0.
pub fn rho(z: Point) -> f64 {
    2.0 * z[0].re - z[1].norm_sqr()
}

/// Named elements of U(2,1; ℤ[ω]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    T1,
    T2,
    S,
    U1,
    U2,
    /// The commutator [T1, T2] = T1 T2 T1⁻¹ T2⁻¹.
    C,
    G1,
    G2,
    G3,
    G4,
    G5,
    J,
}

impl Generator {
    pub const ALL: [Generator; 12] = [
        Generator::T1,
        Generator::T2,
        Generator::S,
        Generator::U1,
        Generator::U2,
        Generator::C,
        Generator::G1,
        Generator::G2,
        Generator::G3,
        Generator::G4,
        Generator::G5,
        Generator::J,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Generator::T1 => "T1",
            Generator::T2 => "T2",
            Generator::S => "S",
            Generator::U1 => "U1",
            Generator::U2 => "U2",
            Generator::C => "C",
            Generator::G1 => "g1",
            Generator::G2 => "g2",
            Generator::G3 => "g3",
            Generator::G4 => "g4",
            Generator::G5 => "g5",
            Generator::J => "J",
        }
    }

    /// The matrix, with entries `(a, b)` meaning `a + bω`.
    pub fn matrix(&self) -> EisMatrix {
        const O: (i64, i64) = (0, 0);
        const I: (i64, i64) = (1, 0);
        const W: (i64, i64) = (0, 1);
        const MW: (i64, i64) = (0, -1);
        const WB: (i64, i64) = (-1, -1);
        const MWB: (i64, i64) = (1, 1);
        const WB_MINUS_W: (i64, i64) = (-1, -2);
        const ONE_MINUS_WB: (i64, i64) = (2, 1);
        const ONE_MINUS_W: (i64, i64) = (1, -1);
        const WB_MINUS_ONE: (i64, i64) = (-2, -1);
        let p = match self {
            Generator::T1 => [[I, I, MW], [O, I, I], [O, O, I]],
            Generator::T2 => [[I, W, MW], [O, I, WB], [O, O, I]],
            Generator::S => [[O, O, MWB], [O, WB, O], [MWB, O, O]],
            Generator::U1 => [[I, O, O], [O, MW, O], [O, O, I]],
            Generator::U2 => [[(-1, 0), O, O], [O, MW, O], [O, O, (-1, 0)]],
            Generator::C => [[I, O, WB_MINUS_W], [O, I, O], [O, O, I]],
            Generator::G1 => [
                [I, WB_MINUS_W, ONE_MINUS_WB],
                [O, WB, ONE_MINUS_W],
                [O, O, I],
            ],
            Generator::G2 => [
                [I, WB_MINUS_ONE, ONE_MINUS_WB],
                [O, WB, ONE_MINUS_WB],
                [O, O, I],
            ],
            Generator::G3 => [[I, O, O], [O, W, O], [O, O, I]],
            Generator::G4 => [
                [MW, O, WB_MINUS_ONE],
                [O, (-1, 0), O],
                [WB_MINUS_ONE, O, (0, 2)],
            ],
            Generator::G5 => [
                [I, O, O],
                [WB_MINUS_W, WB, O],
                [ONE_MINUS_WB, ONE_MINUS_W, I],
            ],
            Generator::J => [[O, O, I], [O, (-1, 0), O], [I, O, O]],
        };
        EisMatrix::from_pairs(p)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s) || (s == "[T1,T2]" && *g == Generator::C))
            .ok_or_else(|| Error::Invalid(format!("unknown generator {s:?}")))
    }
}

/// One named matrix of the generator table, in exportable form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorEntry {
    pub name: &'static str,
    /// Entries as `[a, b]` pairs meaning `a + bω`.
    pub entries: [[[i64; 2]; 3]; 3],
}

/// The full generator table.
pub fn generators() -> Vec<GeneratorEntry> {
    Generator::ALL
        .iter()
        .map(|g| GeneratorEntry {
            name: g.name(),
            entries: g.matrix().to_pairs(),
        })
        .collect()
}

/// A factor of a word: a named generator or an explicit matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Letter {
    Gen(Generator),
    Lit(EisMatrix),
}

/// A product `l1^e1 · l2^e2 ⋯` evaluated left to right.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Word(pub Vec<(Letter, i64)>);

impl Word {
    pub fn gens(letters: &[(Generator, i64)]) -> Self {
        Word(letters.iter().map(|&(g, e)| (Letter::Gen(g), e)).collect())
    }

    /// Exact product over ℤ[ω]; `None` when a negative power of a literal with
    /// non-unit determinant is requested.
    pub fn eval(&self) -> Option<EisMatrix> {
        self.0
            .iter()
            .try_fold(EisMatrix::identity(), |acc, (l, e)| {
                let m = match l {
                    Letter::Gen(g) => g.matrix(),
                    Letter::Lit(m) => *m,
                };
                Some(acc * m.pow(*e)?)
            })
    }

    /// Exact product over ℚ(ω).
    pub fn eval_rat(&self) -> Option<EisRatMatrix> {
        self.0
            .iter()
            .try_fold(EisRatMatrix::identity(), |acc, (l, e)| {
                let m = match l {
                    Letter::Gen(g) => g.matrix(),
                    Letter::Lit(m) => *m,
                };
                Some(acc * m.to_rat().pow(*e)?)
            })
    }

    pub fn letters(&self) -> &[(Letter, i64)] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(l, e)| {
                let name = match l {
                    Letter::Gen(g) => g.name().to_string(),
                    Letter::Lit(_) => "<matrix>".to_string(),
                };
                if *e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("I")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for Word {
    type Err = Error;
    /// Parses whitespace-separated factors such as `U1^-4 T1^-1 T2^-2`;
    /// `I` denotes the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "I" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::Invalid(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            letters.push((Letter::Gen(name.parse()?), exp));
        }
        Ok(Word(letters))
    }
}

/// Exact comparison of a matrix with the product of a word.
pub fn verify_word(target: &EisMatrix, word: &Word) -> bool {
    word.eval().is_some_and(|m| m == *target)
}

/// Decompositions of the five congruence generators into the basic ones.
pub fn congruence_decompositions() -> Vec<(Generator, Word)> {
    let w = |s: &str| s.parse::<Word>().expect("static word");
    vec![
        (Generator::G1, w("U1^-4 T1^-1 T2^-2")),
        (Generator::G2, w("U1^-4 T1^-2 T2^-1")),
        (Generator::G3, w("U1^4")),
        (
            Generator::G4,
            Word(vec![
                (Letter::Gen(Generator::S), 3),
                (Letter::Gen(Generator::C), 1),
                (Letter::Gen(Generator::S), 3),
                (
                    Letter::Lit(Generator::S.matrix().pow(4).unwrap() * Generator::U2.matrix()),
                    -1,
                ),
                (Letter::Gen(Generator::C), 1),
            ]),
        ),
        (Generator::G5, w("S^3 U1^-4 T1^-1 T2 S^3")),
    ]
}

/// The nine diagonal elements of U(2,1; ℤ[ω]) up to the sign pattern, each
/// with every word claimed to produce it.
pub fn diagonal_cases() -> Vec<(EisMatrix, Vec<Word>)> {
    let w = |s: &str| s.parse::<Word>().expect("static word");
    let d = |x: EisInt, y: EisInt| EisMatrix::diag([x, y, x]);
    let (one, om, omb) = (EisInt::ONE, EisInt::OMEGA, EisInt::OMEGA_BAR);
    let s2u2 = w("S^2 U1^2");
    let s4u2 = w("S^4 U1^2");
    let twice = |x: &Word| Word([x.0.clone(), x.0.clone()].concat());
    vec![
        (d(one, one), vec![w("U1^6"), w("U2^6"), w("S^6")]),
        (d(om, one), vec![s2u2.clone()]),
        (d(omb, one), vec![twice(&s2u2)]),
        (d(one, om), vec![w("U1^4"), w("U2^4")]),
        (d(om, om), vec![w("S^2")]),
        (d(omb, om), vec![s4u2.clone()]),
        (d(one, omb), vec![w("U1^2"), w("U2^2")]),
        (d(om, omb), vec![twice(&s4u2)]),
        (d(omb, omb), vec![w("S^4")]),
    ]
}

/// g*·J·g = J, the defining relation of U(2,1).
pub fn is_unitary(g: &EisMatrix) -> bool {
    let j = Generator::J.matrix();
    g.adjoint() * j * *g == j
}

/// The common fixed point of T1 and S used in the fixed-point discussion:
/// `(−ωi, ωi/(1−ωi))`.
pub fn t1_s_coincidence_point() -> Point {
    let w = crate::eisenstein::omega_c();
    let i = Complex64::i();
    [-w * i, w * i / (ONE - w * i)]
}

/// Applies a word over ℤ[ω] to a point.
pub fn act_word(word: &Word, z: Point) -> Result<Point> {
    let m = word
        .eval()
        .ok_or_else(|| Error::Invalid("word with non-invertible literal".into()))?;
    Gl3Matrix::from_eis(&m).act(z)
}
