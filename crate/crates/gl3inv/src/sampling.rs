//! Seeded sampling of points, maps and matrices for the identity checks.
//!
//! Every suite draws from its own ChaCha stream of the run seed, so adding
//! samples to one suite never perturbs another.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::derivs::MapJet2;
use crate::error::Result;
use crate::jets::{Jet, MultiIndex, Polynomial};
use crate::lft::{Gl3Matrix, Point};

/// Random source for stream `stream` of the run seed.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform sample from the disc `|z| < radius`.
pub fn disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

/// Uniform sample from the disc of the given radius around `center`.
pub fn disc_around<R: Rng + ?Sized>(rng: &mut R, center: Complex64, radius: f64) -> Complex64 {
    center + disc(rng, radius)
}

/// A polynomial map of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap2 {
    pub p1: Polynomial,
    pub p2: Polynomial,
}

impl PolyMap2 {
    pub fn identity() -> Self {
        Self {
            p1: Polynomial::coordinate(2, 0),
            p2: Polynomial::coordinate(2, 1),
        }
    }

    /// Identity plus a perturbation of degree ≤ `degree` whose coefficients
    /// lie in the disc of radius `radius`.
    pub fn random_near_identity<R: Rng + ?Sized>(rng: &mut R, degree: u8, radius: f64) -> Self {
        let mut make = |var: usize| {
            let mut terms = Vec::new();
            for total in 0..=degree {
                for i in 0..=total {
                    let m = MultiIndex::new(&[i, total - i]);
                    let mut c = disc(rng, radius);
                    if m == MultiIndex::unit(var) {
                        c += 1.0;
                    }
                    terms.push((m, c));
                }
            }
            Polynomial::new(2, terms)
        };
        let p1 = make(0);
        let p2 = make(1);
        Self { p1, p2 }
    }

    pub fn eval(&self, z: Point) -> Point {
        [self.p1.eval(&z), self.p2.eval(&z)]
    }

    /// Jets of the map at `base`.
    pub fn jets(&self, base: Point, order: usize) -> MapJet2 {
        let v = Jet::variables(order, &base);
        MapJet2 {
            u1: self.p1.eval_jets(&v),
            u2: self.p2.eval_jets(&v),
            vars: (0, 1),
        }
    }
}

/// A polynomial in `dim` variables of total degree ≤ `degree` with every
/// coefficient drawn from the disc of radius `radius`.
pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    degree: u8,
    radius: f64,
) -> Polynomial {
    let mut terms = Vec::new();
    let mut exps = vec![0u8; dim];
    loop {
        if exps.iter().map(|&e| e as u32).sum::<u32>() <= degree as u32 {
            terms.push((MultiIndex::new(&exps), disc(rng, radius)));
        }
        let Some(i) = exps.iter().position(|&e| e < degree) else {
            break;
        };
        exps[i] += 1;
        exps[..i].fill(0);
    }
    Polynomial::new(dim, terms)
}

/// A point in the disc of radius `radius` at which `map` has
/// `|Jacobian| ≥ min_jac`; `None` after many failed draws.
pub fn safe_base_point<R: Rng + ?Sized>(
    rng: &mut R,
    map: &PolyMap2,
    radius: f64,
    min_jac: f64,
) -> Option<Point> {
    (0..1000).find_map(|_| {
        let z = [disc(rng, radius), disc(rng, radius)];
        (map.jets(z, 1).jacobian().norm() >= min_jac).then_some(z)
    })
}

/// A matrix `I + E` with entries of `E` in the disc of radius `radius`.
pub fn random_gl3_near_identity<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Gl3Matrix {
    let mut m = Gl3Matrix::identity().m;
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e += disc(rng, radius);
        }
    }
    Gl3Matrix::new(m)
}

/// A random matrix with entries in the unit disc, rejected until its
/// determinant has modulus at least `min_det`.
pub fn random_gl3<R: Rng + ?Sized>(rng: &mut R, min_det: f64) -> Gl3Matrix {
    loop {
        let g = Gl3Matrix::new(std::array::from_fn(|_| {
            std::array::from_fn(|_| disc(rng, 1.0))
        }));
        if g.det().norm() >= min_det {
            return g;
        }
    }
}

/// A random map together with a base point where it is well conditioned.
pub fn random_map_at<R: Rng + ?Sized>(rng: &mut R, degree: u8, radius: f64) -> (PolyMap2, Point) {
    loop {
        let m = PolyMap2::random_near_identity(rng, degree, radius);
        if let Some(z) = safe_base_point(rng, &m, 0.5, 0.1) {
            return (m, z);
        }
    }
}

/// The jets of a linear fractional map composed after a polynomial map.
pub fn lft_after(g: &Gl3Matrix, m: &PolyMap2, base: Point, order: usize) -> Result<MapJet2> {
    m.jets(base, order).apply_lft(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_and_reproducible() {
        let a: f64 = stream_rng(42, 1).gen();
        let b: f64 = stream_rng(42, 1).gen();
        let c: f64 = stream_rng(42, 2).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn disc_samples_stay_inside() {
        let mut rng = stream_rng(7, 0);
        assert!((0..1000).all(|_| disc(&mut rng, 0.3).norm() < 0.3));
    }
}
