use gl3inv::lft::Point;
use gl3inv::pde_verify::ParamTriple;
use gl3inv::picard::*;
use gl3inv::sampling::*;
use num_complex::Complex64;
use rand::Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A point of the disc of radius 3 kept 0.1 away from the orbit poles.
fn generic_point<R: Rng>(rng: &mut R) -> Point {
    loop {
        let z = [disc(rng, 3.0), disc(rng, 3.0)];
        let [x, y] = z;
        let gaps = [x, y, x - 1.0, y - 1.0, x - y];
        if gaps.iter().all(|g| g.norm() > 0.1) {
            return z;
        }
    }
}

#[test]
fn j_invariants_are_constant_on_orbits() {
    let mut rng = stream_rng(41, 0);
    for _ in 0..50 {
        let l = generic_point(&mut rng);
        assert!(j_orbit_residual(l).unwrap() < 1e-10);
    }
    let (a, _) = j_invariants(c(2.0), c(-1.0)).unwrap();
    let (b, _) = j_invariants(c(-1.0), c(2.0)).unwrap();
    assert!((a - b).norm() < 1e-15);
}

#[test]
fn orbit_matrices_match_printed_actions() {
    let mut rng = stream_rng(42, 0);
    for _ in 0..20 {
        let z = generic_point(&mut rng);
        let [x, y] = z;
        let printed = [
            (OrbitElement::T, [1.0 - x, 1.0 - y]),
            (OrbitElement::S1, [x / y, 1.0 / y]),
            (OrbitElement::S2, [1.0 / x, y / x]),
        ];
        for (g, want) in printed {
            let got = s3_orbit(g, z).unwrap();
            assert!((got[0] - want[0]).norm() + (got[1] - want[1]).norm() < 1e-13);
        }
        let tt = s3_orbit(OrbitElement::T, s3_orbit(OrbitElement::T, z).unwrap()).unwrap();
        assert!((tt[0] - x).norm() + (tt[1] - y).norm() < 1e-14);
    }
}

#[test]
fn orbit_sign_and_weight_rules_hold() {
    let mut rng = stream_rng(43, 0);
    let p = ParamTriple::new(
        disc(&mut rng, 2.0),
        disc(&mut rng, 2.0),
        disc(&mut rng, 2.0),
    );
    for _ in 0..100 {
        let z = generic_point(&mut rng);
        for id in orbit_identities(&p, z).unwrap() {
            assert!(id.residual() < 1e-12, "{id:?}");
        }
    }
}

#[test]
fn parameter_table_rows_hold() {
    let mut rng = stream_rng(44, 0);
    for row in ParamRow::ALL {
        let p = ParamTriple::new(
            disc(&mut rng, 1.5),
            disc(&mut rng, 1.5),
            disc(&mut rng, 1.5),
        );
        for _ in 0..10 {
            let v = generic_point(&mut rng);
            let r = param_table_check(row, &p, v).unwrap();
            assert!(r.residual() < 1e-10, "{r:?}");
        }
    }
}

#[test]
fn parameter_table_rejects_a_wrong_claim() {
    let p = ParamTriple::real(0.3, -0.2, 0.7);
    let v = [c(0.4), Complex64::new(-0.6, 0.5)];
    let mut r = param_table_check(ParamRow::S, &p, v).unwrap();
    r.expected = param_table_check(ParamRow::T, &p, v).unwrap().expected;
    assert!(r.residual() > 1e-3);
}

#[test]
fn modular_solve_quadratic_example() {
    let u = ModuliPair::real(2.0, 3.0).unwrap();
    let r = modular_solve(u, c(4.0)).unwrap();
    assert!(!r.double_root);
    for v1 in r.roots {
        let lhs = (v1 - 1.0) * 3.0 * (v1 - 4.0);
        assert!((lhs - c(-2.0)).norm() < 1e-12);
    }
    assert!(r.residuals.iter().all(|&x| x < 1e-12));
    // the identity solution is one of the roots
    let r = modular_solve(u, c(3.0)).unwrap();
    assert!(r.roots.iter().any(|v1| (v1 - 2.0).norm() < 1e-12));
}

#[test]
fn swapped_moduli_flip_the_cubic_form() {
    let v = ModuliPair::new(c(2.5), Complex64::new(-1.0, 0.4)).unwrap();
    let w = ModuliPair::new(v.m2, v.m1).unwrap();
    assert!((v.modular_form() + w.modular_form()).norm() < 1e-14);
}

#[test]
fn transform_constraint_holds_on_the_modular_variety() {
    let mut rng = stream_rng(45, 0);
    for _ in 0..50 {
        let (u, v) = random_moduli_instance(&mut rng);
        let abg = transform_abg(&u, &v).unwrap();
        assert!(abg.constraint_residual() < 1e-12, "{abg:?}");
        let gamma = (v.m1 - 1.0) * (v.m2 - 1.0) / ((u.m1 - 1.0) * (u.m2 - 1.0));
        assert_eq!(abg.gamma, gamma);
    }
    let u = ModuliPair::real(2.0, 3.0).unwrap();
    let v = modular_solve(u, c(4.0)).unwrap().target(0).unwrap();
    assert!(transform_abg(&u, &v).unwrap().constraint_residual() < 1e-12);
    let off = ModuliPair::new(v.m1 + 0.1, v.m2).unwrap();
    assert!(transform_abg(&u, &off).is_err());
}

#[test]
fn order5_map_identity_moduli_and_jets() {
    let id = TransformAbg::new(c(0.0), c(0.0), c(1.0));
    let t = [Complex64::new(0.7, 0.2), c(-1.3)];
    let w = order5_map(&id, t).unwrap();
    assert!((w[0] - t[0]).norm() < 1e-15);
    assert!((w[1] - t[0].powi(3) / t[1].powi(5)).norm() < 1e-13);

    let mut rng = stream_rng(46, 0);
    let (u, v) = random_moduli_instance(&mut rng);
    let abg = transform_abg(&u, &v).unwrap();
    let t = safe_t_point(&mut rng, &u, &v, &abg);
    let vars = gl3inv::jets::Jet::variables(3, &t);
    let wj = order5_map_jets(&abg, &[vars[0].clone(), vars[1].clone()]).unwrap();
    let wp = order5_map(&abg, t).unwrap();
    assert!((wj[0].value() - wp[0]).norm() + (wj[1].value() - wp[1]).norm() < 1e-13);

    // w2 has degree −5 in t2 and w1 does not see t2
    let s = c(1.7);
    let ws = order5_map(&abg, [t[0], s * t[1]]).unwrap();
    assert!((ws[1] * s.powi(5) - wp[1]).norm() < 1e-12 * wp[1].norm().max(1.0));
    assert!((ws[0] - wp[0]).norm() < 1e-15);
}

#[test]
fn pullback_identity_on_random_moduli() {
    let mut rng = stream_rng(47, 0);
    for _ in 0..10 {
        let (u, v) = random_moduli_instance(&mut rng);
        let abg = transform_abg(&u, &v).unwrap();
        for _ in 0..10 {
            let t = safe_t_point(&mut rng, &u, &v, &abg);
            let r = pullback_identity_check(&u, &v, t).unwrap();
            assert!(r.residual() < 1e-10, "{r:?}");
        }
    }
}

#[test]
fn pullback_identity_for_identical_moduli_is_exact() {
    let u = ModuliPair::real(2.0, -1.5).unwrap();
    let t = [c(0.3), c(1.25)];
    let r = pullback_identity_check(&u, &u, t).unwrap();
    let expected = -125.0 * t[0].powi(11) * t[1].powi(-16) * u.radicand(t[0]);
    assert!((r.lhs - expected).norm() < 1e-12 * expected.norm());
    assert!(r.residual() < 1e-14);
}

#[test]
fn pullback_identity_fails_off_the_modular_variety() {
    let mut rng = stream_rng(48, 0);
    let (u, v) = random_moduli_instance(&mut rng);
    let bad = ModuliPair::new(v.m1 + 0.1, v.m2).unwrap();
    assert!(pullback_identity_check(&u, &bad, [c(0.5), c(1.0)]).is_err());
    let abg = transform_abg(&u, &v).unwrap();
    let mut worst = 0.0_f64;
    for _ in 0..5 {
        let t = safe_t_point(&mut rng, &u, &v, &abg);
        worst = worst.max(pullback_with(&abg, &u, &bad, t).unwrap().residual());
    }
    assert!(worst > 1e-3);
}

#[test]
fn cubed_substitution_agrees_with_the_pullback() {
    let mut rng = stream_rng(49, 0);
    let u = ModuliPair::real(2.0, 3.0).unwrap();
    let r = cubed_substitution_check(&u, &u, [c(0.8), c(1.1)]).unwrap();
    assert!(r.residual() < 1e-14);
    for _ in 0..5 {
        let (u, v) = random_moduli_instance(&mut rng);
        let abg = transform_abg(&u, &v).unwrap();
        let t = safe_t_point(&mut rng, &u, &v, &abg);
        let x = [t[0].powf(1.0 / 3.0), t[1].powf(1.0 / 3.0)];
        let cor = cubed_substitution_check(&u, &v, x).unwrap();
        let thm = pullback_identity_check(&u, &v, t).unwrap();
        assert!(cor.residual() < 1e-10, "{cor:?}");
        assert!((cor.residual() - thm.residual()).abs() < 1e-10);
    }
}

#[test]
fn surfaces_are_satisfied_by_construction() {
    let v = ModuliPair::new(c(2.5), Complex64::new(-1.0, 0.4)).unwrap();
    for (w, s) in [
        ([c(0.3), c(1.2)], c(2.0)),
        (
            [Complex64::new(0.1, 0.4), c(-0.7)],
            Complex64::new(0.5, -1.0),
        ),
    ] {
        let [a, h] = surface_witness(&v, w, s);
        assert!(a < 1e-14 && h < 1e-13);
    }
}
