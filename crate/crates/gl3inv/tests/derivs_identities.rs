use gl3inv::derivs::*;
use gl3inv::eisenstein::omega_c;
use gl3inv::jets::{Jet, MultiIndex};
use gl3inv::lft::{Generator, Gl3Matrix};
use gl3inv::sampling::*;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn rel(a: &DerivQuad, b: &DerivQuad) -> f64 {
    a.max_abs_diff(b) / (1.0 + b.max_abs())
}

#[test]
fn lft_post_composition_leaves_quad_unchanged() {
    let mut rng = stream_rng(11, 0);
    for _ in 0..30 {
        let (map, z) = random_map_at(&mut rng, 3, 0.3);
        let g = random_gl3_near_identity(&mut rng, 0.3);
        let m = map.jets(z, 2);
        let gm = m.apply_lft(&g).unwrap();
        let q = deriv_quad(&m).unwrap();
        assert!(rel(&deriv_quad(&gm).unwrap(), &q) < 1e-10);
    }
}

#[test]
fn lft_maps_have_vanishing_quad() {
    let mut rng = stream_rng(12, 0);
    for _ in 0..30 {
        let g = random_gl3_near_identity(&mut rng, 0.4);
        let z = [disc(&mut rng, 0.5), disc(&mut rng, 0.5)];
        let m = MapJet2::lft(&g, 2, z).unwrap();
        assert!(deriv_quad(&m).unwrap().max_abs() < 1e-12);
    }
    let s = Gl3Matrix::from_eis(&Generator::S.matrix());
    let m = MapJet2::lft(&s, 3, [c(0.7), c(0.2)]).unwrap();
    assert!(deriv_quad(&m).unwrap().max_abs() < 1e-12);
}

#[test]
fn chain_rule_matches_composite() {
    let mut rng = stream_rng(13, 0);
    for _ in 0..20 {
        let (wmap, z) = random_map_at(&mut rng, 3, 0.3);
        let umap = PolyMap2::random_near_identity(&mut rng, 2, 0.3);
        let w = wmap.jets(z, 2);
        let u = umap.jets(w.value(), 2);
        let lhs = deriv_quad(&w.then(&u).unwrap()).unwrap();
        let rhs = chain_rule_rhs(&deriv_quad(&u).unwrap(), &w).unwrap();
        assert!(rel(&lhs, &rhs) < 1e-9, "{lhs:?} vs {rhs:?}");
    }
}

#[test]
fn identity_outer_map_returns_inner_quad() {
    let mut rng = stream_rng(14, 0);
    let (wmap, z) = random_map_at(&mut rng, 3, 0.3);
    let w = wmap.jets(z, 2);
    let rhs = chain_rule_rhs(&DerivQuad::zero(), &w).unwrap();
    assert_eq!(rhs, deriv_quad(&w).unwrap());
}

#[test]
fn transport_matrices_compose_and_invert() {
    let mut rng = stream_rng(15, 0);
    for _ in 0..20 {
        let (wmap, z) = random_map_at(&mut rng, 3, 0.3);
        let umap = PolyMap2::random_near_identity(&mut rng, 3, 0.3);
        let w = wmap.jets(z, 2);
        let u = umap.jets(w.value(), 2);
        let lhs = transport_matrix(&w).mul(&transport_matrix(&u));
        let rhs = transport_matrix(&w.then(&u).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        let inv = w.inverse(z).unwrap();
        let prod = transport_matrix(&w).mul(&transport_matrix(&inv));
        assert!(prod.max_abs_diff(&TransportMatrix::identity()) < 1e-10);
    }
}

#[test]
fn extended_transport_cocycle() {
    let mut rng = stream_rng(16, 0);
    for cc in [0.0, 1.0, 2.5] {
        for _ in 0..10 {
            let (wmap, z) = random_map_at(&mut rng, 3, 0.3);
            let umap = PolyMap2::random_near_identity(&mut rng, 3, 0.3);
            let w = wmap.jets(z, 2);
            let u = umap.jets(w.value(), 2);
            let uw = ExtendedTransport::new(&w, c(cc)).unwrap().matrix();
            let uu = ExtendedTransport::new(&u, c(cc)).unwrap().matrix();
            let ux = ExtendedTransport::new(&w.then(&u).unwrap(), c(cc))
                .unwrap()
                .matrix();
            let prod = mul5(&uw, &uu);
            let err = prod
                .iter()
                .flatten()
                .zip(ux.iter().flatten())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-9, "cocycle error {err}");
        }
    }
}

#[test]
fn exchange_of_arguments() {
    let mut rng = stream_rng(17, 0);
    for _ in 0..20 {
        let (wmap, z) = random_map_at(&mut rng, 3, 0.3);
        let w = wmap.jets(z, 3);
        let inv = w.inverse(z).unwrap();
        let qx = deriv_quad(&inv).unwrap();
        let moved = transport_matrix(&w).apply(&qx);
        let jac = w.jacobian();
        let predicted = DerivQuad::new(moved.to_array().map(|v| -v / jac));
        assert!(rel(&deriv_quad(&w).unwrap(), &predicted) < 1e-9);
    }
}

#[test]
fn second_argument_transform_matches_composition() {
    let mut rng = stream_rng(18, 0);
    let mut gens = vec![
        Gl3Matrix::identity(),
        Gl3Matrix::from_eis(&Generator::T1.matrix()),
    ];
    for _ in 0..18 {
        gens.push(random_gl3_near_identity(&mut rng, 0.3));
    }
    for g in gens {
        let umap = PolyMap2::random_near_identity(&mut rng, 3, 0.3);
        let z = [disc(&mut rng, 0.3), disc(&mut rng, 0.3)];
        let gz = MapJet2::lft(&g, 2, z).unwrap();
        let u = umap.jets(gz.value(), 2);
        let lhs = deriv_quad(&gz.then(&u).unwrap()).unwrap();
        let rhs = second_arg_transform(&deriv_quad(&u).unwrap(), &g, z).unwrap();
        assert!(rel(&lhs, &rhs) < 1e-10);
    }
}

#[test]
fn jacobian_deformation_matches_direct_evaluation() {
    let mut rng = stream_rng(19, 0);
    for k in 0..20 {
        let (zmap, base) = random_map_at(&mut rng, 2, 0.3);
        let z = zmap.jets(base, 2);
        let f = PolyMap2::random_near_identity(&mut rng, if k % 2 == 0 { 1 } else { 2 }, 0.9);
        let fj = f.jets(base, 2);
        let lhs = jacobian_deformation_direct(&fj.u1, &fj.u2, &z, base).unwrap();
        let rhs = jacobian_deformation(&fj.u1, &fj.u2, &z).unwrap();
        assert!(
            (lhs - rhs).norm() / (1.0 + lhs.norm()) < 1e-9,
            "{lhs} vs {rhs}"
        );
    }
    let g = Gl3Matrix::from_eis(&Generator::T2.matrix());
    let base = [c(0.2), Complex64::new(0.1, 0.3)];
    let z = MapJet2::lft(&g, 2, base).unwrap();
    let x = Jet::variables(2, &base);
    let f1 = &x[0] * &x[1];
    let f2 = x[0].add_scalar(omega_c());
    let lhs = jacobian_deformation_direct(&f1, &f2, &z, base).unwrap();
    let rhs = jacobian_deformation(&f1, &f2, &z).unwrap();
    assert!((lhs - rhs).norm() < 1e-10);
}

#[test]
fn exponential_systems_predict_the_quad() {
    let mut rng = stream_rng(20, 0);
    for _ in 0..10 {
        let pairs = std::array::from_fn(|_| (disc(&mut rng, 1.5), disc(&mut rng, 1.5)));
        let sys = exp_system_oracle(pairs).unwrap();
        let m = sys.quotient_map(2, [c(0.1), c(-0.1)]).unwrap();
        assert!(rel(&deriv_quad(&m).unwrap(), &sys.predicted) < 1e-10);
    }
    let sys = exp_system_oracle([(c(2.0), c(0.0)), (c(0.0), c(2.0)), (c(2.0), c(2.0))]).unwrap();
    let m = sys.quotient_map(2, [c(0.3), c(-0.2)]).unwrap();
    assert!(rel(&deriv_quad(&m).unwrap(), &sys.predicted) < 1e-10);
}

#[test]
fn z0_bracket_swap_symmetry() {
    let mut rng = stream_rng(21, 0);
    let f = PolyMap2::random_near_identity(&mut rng, 3, 0.8);
    let (t1, t2) = (disc(&mut rng, 0.5), disc(&mut rng, 0.5));
    let fj = f.jets([t1, t2], 2);
    let (p, q) = z0_bracket_coeffs(&fj.u1, &fj.u2).unwrap();
    // swap the two fields and the two variables
    let swap = |j: &Jet| {
        let terms: Vec<_> = j
            .terms()
            .map(|(m, v)| (MultiIndex::new(&[m.get(1), m.get(0)]), v))
            .collect();
        Jet::from_terms(2, j.order(), &terms).unwrap()
    };
    let (ps, qs) = z0_bracket_coeffs(&swap(&fj.u2), &swap(&fj.u1)).unwrap();
    assert!((&ps - &swap(&q)).max_abs() < 1e-13);
    assert!((&qs - &swap(&p)).max_abs() < 1e-13);
}
