use gl3inv::eisenstein::{EisInt, EisMatrix};
use gl3inv::heisenberg::*;
use gl3inv::lft::*;

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn congruence_generators_decompose_exactly() {
    for (g, w) in congruence_decompositions() {
        assert!(verify_word(&g.matrix(), &w), "{g} = {w}");
    }
}

#[test]
fn commutator_has_the_printed_form() {
    let wb_minus_w = EisInt::OMEGA_BAR - EisInt::OMEGA;
    let expected = EisMatrix::new([
        [EisInt::ONE, EisInt::ZERO, wb_minus_w],
        [EisInt::ZERO, EisInt::ONE, EisInt::ZERO],
        [EisInt::ZERO, EisInt::ZERO, EisInt::ONE],
    ]);
    assert_eq!(Generator::C.matrix(), expected);
    assert!(verify_word(&expected, &word("T1 T2 T1^-1 T2^-1")));
}

#[test]
fn fourth_powers_of_s_times_translations_are_scalar() {
    let omega_i = EisMatrix::identity().scale(EisInt::OMEGA);
    for t in ["T1", "T2"] {
        let st = word(&format!("S {t}")).eval().unwrap();
        assert_eq!(st.pow(4).unwrap(), omega_i, "(S{t})^4");
        assert_ne!(st.pow(2).unwrap(), omega_i);
    }
}

#[test]
fn generators_preserve_the_hermitian_form() {
    for g in Generator::ALL {
        assert!(is_unitary(&g.matrix()), "{g}");
    }
    let not_unitary = EisMatrix::diag([EisInt::int(2), EisInt::ONE, EisInt::ONE]);
    assert!(!is_unitary(&not_unitary));
}

#[test]
fn diagonal_elements_from_words() {
    for (d, words) in diagonal_cases() {
        for w in words {
            assert!(verify_word(&d, &w), "{w}");
        }
    }
}

#[test]
fn heisenberg_elements_decompose() {
    let mut count = 0;
    for m in -3..=3 {
        for n in -3..=3 {
            let alpha = EisInt::new(m, n);
            for l in -2..=2 {
                let q = m + n + m * n + 2 * l;
                let norm = m * m - m * n + n * n;
                let Ok(e) = HeisenbergElem::new(alpha, HalfLattice::new(norm, q)) else {
                    continue;
                };
                let d = decompose_heisenberg(&e).unwrap();
                assert_eq!(d.word().eval().unwrap(), e.to_matrix().unwrap());
                count += 1;
            }
        }
    }
    assert_eq!(count, 7 * 7 * 5);
}
