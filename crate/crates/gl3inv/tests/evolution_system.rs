use gl3inv::evolution::*;
use gl3inv::jets::{Jet, Polynomial};
use gl3inv::lft::Gl3Matrix;
use gl3inv::sampling::{disc, random_gl3_near_identity, random_polynomial, stream_rng};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn point<R: Rng>(rng: &mut R, radius: f64) -> SpaceTime {
    std::array::from_fn(|_| disc(rng, radius))
}

fn random_fields<R: Rng>(rng: &mut R) -> PolyFields {
    let mut p = || random_polynomial(rng, 4, 3, 0.5);
    PolyFields {
        v1: p(),
        v2: p(),
        w1: p(),
        w2: p(),
    }
}

/// `(x, y)` plus a random cubic perturbation in all four variables.
fn random_pair<R: Rng>(rng: &mut R, z: SpaceTime) -> [Jet; 2] {
    let vars = Jet::variables(3, &z);
    let mut comp = |k: usize| {
        let p = random_polynomial(rng, 4, 3, 0.2);
        &vars[k] + &p.eval_jets(&vars)
    };
    [comp(0), comp(1)]
}

#[test]
fn constant_fields_solve_the_field_equations() {
    let f = EvoFields::constant([c(1.5), Complex64::new(0.0, 2.0), c(-0.3), c(7.0)], 2);
    assert_eq!(mt4_residuals(&f), [c(0.0); 2]);
}

#[test]
fn linear_family_solves_the_field_equations() {
    let mut rng = stream_rng(51, 0);
    for _ in 0..20 {
        let (c1, c2, lambda) = (
            disc(&mut rng, 2.0),
            disc(&mut rng, 2.0),
            disc(&mut rng, 3.0),
        );
        let f = EvoFields::linear_family(c1, c2, lambda, point(&mut rng, 1.0), 1);
        let r = mt4_residuals(&f);
        assert!(r[0].norm().max(r[1].norm()) < 1e-12, "{r:?}");
    }
}

#[test]
fn random_fields_do_not_solve_the_field_equations() {
    let mut rng = stream_rng(52, 0);
    let f = random_fields(&mut rng).jets(point(&mut rng, 0.5), 1);
    let r = mt4_residuals(&f);
    assert!(r[0].norm() > 1e-3 && r[1].norm() > 1e-3, "{r:?}");
}

#[test]
fn quotients_match_a_hand_expansion_in_t2() {
    let v = Jet::variables(3, &[c(0.2), c(0.3), c(0.0), c(0.0)]);
    let u = [v[X].clone(), &v[Y] + &(&v[T2] * &(&v[Y] * &v[Y]))];
    let q = evo_quotients(&u, TimeVar::T2).unwrap();
    assert!((q[0] - c(-0.09)).norm() < 1e-15);
    assert!(q[1].norm() < 1e-15);
}

#[test]
fn galilean_identity_holds_for_arbitrary_fields() {
    let mut rng = stream_rng(53, 0);
    let f = random_fields(&mut rng);
    let zero = GalileanShift {
        a1: c(0.0),
        a2: c(0.0),
        b1: c(0.0),
        b2: c(0.0),
    };
    let z = point(&mut rng, 0.5);
    let r = galilean_covariance_check(&f, &zero, z);
    assert!(r.residual() < 1e-14);
    assert_eq!(r.original, mt4_residuals(&f.jets(z, 1)));

    let transport = GalileanShift {
        a1: disc(&mut rng, 1.0),
        a2: c(0.0),
        b1: c(0.0),
        b2: disc(&mut rng, 1.0),
    };
    for _ in 0..10 {
        assert!(galilean_covariance_check(&f, &transport, point(&mut rng, 0.5)).residual() < 1e-10);
    }
    for _ in 0..10 {
        let s = GalileanShift {
            a1: disc(&mut rng, 1.0),
            a2: disc(&mut rng, 1.0),
            b1: disc(&mut rng, 1.0),
            b2: disc(&mut rng, 1.0),
        };
        let r = galilean_covariance_check(&f, &s, point(&mut rng, 0.5));
        assert!(r.residual() < 1e-10, "{r:?}");
    }
}

#[test]
fn galilean_offsets_are_needed() {
    let mut rng = stream_rng(54, 0);
    let f = random_fields(&mut rng);
    let s = GalileanShift {
        a1: c(0.4),
        a2: c(-0.7),
        b1: c(0.9),
        b2: c(0.3),
    };
    let z = point(&mut rng, 0.5);
    let shifted = f.shifted_jets(&s, z, 1);
    let mut no_offsets = shifted.clone();
    no_offsets.w1 = shifted.w1.add_scalar(-s.a2);
    no_offsets.w2 = shifted.w2.add_scalar(-s.b1);
    let r = galilean_covariance_check(&f, &s, z);
    let gap = (mt4_residuals(&no_offsets)[0] - r.original[0]).norm();
    assert!(gap > 1e-3, "{gap}");
}

#[test]
fn linear_family_is_mapped_to_solutions_by_a_uniform_shift() {
    let lambda = c(1.3);
    let f = PolyFields {
        v1: Polynomial::new(4, vec![(Default::default(), c(0.5))]),
        v2: Polynomial::new(4, vec![(gl3inv::jets::MultiIndex::unit(T1), -lambda)]),
        w1: Polynomial::new(4, vec![(gl3inv::jets::MultiIndex::unit(T2), lambda)]),
        w2: Polynomial::new(4, vec![(Default::default(), c(-2.0))]),
    };
    let s = GalileanShift {
        a1: c(0.6),
        a2: c(0.6),
        b1: c(-0.2),
        b2: c(-0.2),
    };
    let r = mt4_residuals(&f.shifted_jets(&s, [c(0.1), c(0.2), c(0.3), c(0.4)], 1));
    assert!(r[0].norm().max(r[1].norm()) < 1e-12);
}

#[test]
fn system_is_invariant_under_linear_fractional_maps() {
    let mut rng = stream_rng(55, 0);
    for _ in 0..20 {
        let z = point(&mut rng, 0.3);
        let u = random_pair(&mut rng, z);
        let g = random_gl3_near_identity(&mut rng, 0.3);
        let r = gl3_invariance_check(&u, &g).unwrap();
        assert!(r.worst() < 1e-10, "{r:?}");
    }
    let z = [c(0.1), c(-0.2), c(0.05), c(0.3)];
    let u = random_pair(&mut rng, z);
    let g = Gl3Matrix::new([
        [c(0.0), c(1.0), c(0.0)],
        [c(0.0), c(0.0), c(1.0)],
        [c(1.0), c(0.0), c(0.0)],
    ]);
    assert!(gl3_invariance_check(&u, &g).unwrap().worst() < 1e-10);
}

#[test]
fn flow_compatibility_reduces_to_the_field_equations() {
    let mut rng = stream_rng(56, 0);
    for _ in 0..20 {
        let z = point(&mut rng, 0.5);
        let f = random_fields(&mut rng).jets(z, 2);
        let u = random_polynomial(&mut rng, 4, 3, 1.0).eval_jets(&Jet::variables(2, &z));
        let r = transport_consistency(&f, &u).unwrap();
        assert!(r.residual() < 1e-10, "{r:?}");
        assert!(r.expected.norm() > 1e-6);
    }
}

#[test]
fn fields_of_a_map_and_the_transport_relations() {
    let mut rng = stream_rng(57, 0);
    let z = point(&mut rng, 0.3);
    let u = random_pair(&mut rng, z);
    let f = EvoFields::from_map(&u).unwrap();
    let quad = spatial_quad(&u).unwrap();
    assert_eq!(f.v1.value(), quad.brace_x);
    assert_eq!(f.w2.value(), quad.bracket_y);
    let m = evo_membership(&u, TimeVar::T1).unwrap();
    assert!(m[0].norm() > 1e-6);
    assert!(transport_residuals(&u)
        .unwrap()
        .iter()
        .any(|r| r.norm() > 1e-6));

    let g = random_gl3_near_identity(&mut rng, 0.3);
    let vars = Jet::variables(3, &z);
    let lft = g.act_jets(&[vars[X].clone(), vars[Y].clone()]).unwrap();
    for which in [TimeVar::T1, TimeVar::T2] {
        assert!(evo_membership(&lft, which)
            .unwrap()
            .iter()
            .all(|r| r.norm() < 1e-12));
    }
    assert!(transport_residuals(&lft)
        .unwrap()
        .iter()
        .all(|r| r.norm() < 1e-12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn galilean_identity_for_random_shifts(seed in 0u64..1000, a in prop::array::uniform4(-1.0f64..1.0)) {
        let mut rng = stream_rng(seed, 58);
        let f = random_fields(&mut rng);
        let s = GalileanShift { a1: c(a[0]), a2: c(a[1]), b1: c(a[2]), b2: c(a[3]) };
        prop_assert!(galilean_covariance_check(&f, &s, point(&mut rng, 0.5)).residual() < 1e-10);
    }
}
