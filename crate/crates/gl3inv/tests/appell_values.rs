use gl3inv::appell::*;
use gl3inv::jets::Jet;
use gl3inv::sampling::{disc, stream_rng};
use num_complex::Complex64;
use std::f64::consts::PI;

fn r(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Gauss 2F1 by direct summation, used as an independent oracle.
fn hyp2f1(a: f64, b: f64, c: f64, x: Complex64) -> Complex64 {
    let mut term = r(1.0);
    let mut sum = term;
    for n in 0..2000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    sum
}

#[test]
fn series_collapses_to_gauss_on_the_axis() {
    let p = F1Params::real(0.4, 0.3, 0.9, 1.7);
    for x in [r(0.3), Complex64::new(-0.2, 0.5), r(-0.6)] {
        let v = f1_value(&p, x, r(0.0)).unwrap();
        assert!((v - hyp2f1(0.4, 0.3, 1.7, x)).norm() < 1e-14);
    }
}

#[test]
fn series_matches_euler_integral() {
    let spec = QuadratureSpec::default();
    let mut rng = stream_rng(5, 0);
    for p in [
        F1Params::real(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0),
        F1Params::real(0.25, 0.25, 0.25, 1.0),
        F1Params::real(2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 4.0 / 3.0),
    ] {
        for _ in 0..10 {
            let (x, y) = (disc(&mut rng, 0.7), disc(&mut rng, 0.7));
            let s = f1_value(&p, x, y).unwrap();
            let e = f1_euler(&p, x, y, &spec).unwrap();
            assert!((s - e).norm() < 1e-8, "{s} vs {e} at ({x}, {y})");
        }
    }
    let p = F1Params::real(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0);
    let s = f1_value(&p, r(0.2), r(-0.1)).unwrap();
    let e = f1_euler(&p, r(0.2), r(-0.1), &spec).unwrap();
    assert!((s - e).norm() < 1e-8);
}

#[test]
fn euler_integral_reduces_to_gauss() {
    let p = F1Params::real(0.5, 0.3, 0.8, 1.25);
    let x = Complex64::new(0.4, -0.3);
    let e = f1_euler(&p, x, r(0.0), &QuadratureSpec::default()).unwrap();
    assert!((e - hyp2f1(0.5, 0.3, 1.25, x)).norm() < 1e-10);
}

#[test]
fn series_jets_carry_derivatives() {
    // finite-difference check of the first partials
    let p = F1Params::real(0.25, 0.25, 0.25, 1.0);
    let (x, y) = (r(0.15), Complex64::new(0.0, 0.1));
    let v = Jet::variables(3, &[x, y]);
    let z = f1_series(&p, &v[0], &v[1]).unwrap();
    let h = 1e-5;
    let fd = (f1_value(&p, x + h, y).unwrap() - f1_value(&p, x - h, y).unwrap()) / (2.0 * h);
    assert!((z.d(0) - fd).norm() < 1e-8);
    assert!((z.value() - f1_value(&p, x, y).unwrap()).norm() < 1e-15);
}

#[test]
fn appell_equations_hold_on_the_series() {
    let cases = [
        (
            F1Params::real(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0),
            r(0.2),
            r(-0.1),
        ),
        (
            F1Params::real(0.25, 0.25, 0.25, 1.0),
            r(0.15),
            Complex64::new(0.0, 0.1),
        ),
        (
            F1Params::real(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0),
            r(0.3),
            r(0.3),
        ),
    ];
    for (p, x, y) in cases {
        let (r1, r2) = f1_pde_residual(&p, x, y).unwrap();
        assert!(r1.norm() < 1e-8 && r2.norm() < 1e-8);
    }
}

#[test]
fn picard_integral_and_its_closed_form() {
    let spec = QuadratureSpec::default();
    let v = picard_integral(r(3.0), r(3.0), &spec).unwrap();
    let closed = picard_closed_form(r(3.0), r(3.0)).unwrap();
    assert!((v - closed).norm() < 1e-10);
    let (x, y) = (r(5.0), Complex64::new(-4.0, 1.0));
    let a = picard_integral(x, y, &spec).unwrap();
    let b = picard_integral(y, x, &spec).unwrap();
    assert!((a - b).norm() < 1e-10);
    let cubed = (a.powi(3) - picard_closed_form(x, y).unwrap().powi(3)).norm();
    assert!(cubed < 1e-6 * a.norm().powi(3));
    assert!(picard_integral(r(0.5), r(3.0), &spec).is_err());
}

#[test]
fn k_integrals() {
    let spec = QuadratureSpec::default();
    let k0 = k_integral(r(0.0), r(0.0), &spec).unwrap();
    assert!((k0 - r(2.0 * PI / 3f64.sqrt())).norm() < 1e-10);
    let (k1, k2) = (r(0.3), r(-0.2));
    let direct = k_integral(k1, k2, &spec).unwrap();
    assert!((direct - k3_closed_form(k1, k2).unwrap()).norm() < 1e-6);
    assert!((direct - k_integral_substituted(k1, k2, &spec).unwrap()).norm() < 1e-8);
    assert!((direct - k_integral(k2, k1, &spec).unwrap()).norm() < 1e-12);
    assert!(k_integral(r(2.0), r(0.0), &spec).is_err());
}
