use h3_core::gauge::build_h;
use h3_core::integral::build_f_formal;
use h3_core::qes::*;
use h3_core::scalar::{rat, Rational};
use h3_core::GoldenScalar;
use num_traits::One;

fn samples() -> [(Rational, Rational); 2] {
    [(rat(1, 3), rat(1, 1)), (rat(5, 2), rat(3, 7))]
}

#[test]
fn sl2_relations() {
    for k in 0..6 {
        Sl2Triple::new(k).check_relations().unwrap();
    }
}

#[test]
fn restriction_is_h1() {
    for (nu, om) in samples() {
        let r = restrict_to_tau1(&build_h(&nu, &om).unwrap()).unwrap();
        assert_eq!(r, h1(&nu, &om));
        assert_eq!(r, h1_sl2(&nu, &om));
        assert!(r.apply(&Laurent::constant(GoldenScalar::one())).is_zero());
    }
}

#[test]
fn laguerre_eigenfunctions() {
    for (nu, om) in samples() {
        for n in 0..=5 {
            let r = laguerre_check(n, &nu, &om).unwrap();
            assert_eq!(r.eigenfunction.max_exp(), Some(n as i32));
        }
    }
    // n₁ = 1 is −ω times τ₁ − 3(1+10ν)/(2ω)
    let r = laguerre_check(1, &rat(1, 3), &rat(2, 1)).unwrap();
    assert_eq!(r.eigenfunction.coeff(1), GoldenScalar::from_int(-2));
    assert_eq!(r.eigenfunction.coeff(0), GoldenScalar::frac(13, 2));
    assert_eq!(r.epsilon, GoldenScalar::from_int(8));
}

#[test]
fn gauge_and_sl2_agree_up_to_constant() {
    for (nu, om) in samples() {
        for (a, gq, k) in [(rat(1, 1), rat(1, 4), 1), (rat(0, 1), rat(0, 1), 2), (rat(3, 2), rat(-1, 3), 3)] {
            let p = QesParams::new(a, gq.clone(), k).unwrap();
            let r = qes_gauge_check(&p, &nu, &om).unwrap();
            // −2ω(2γ + k)
            let want = -(&(&GoldenScalar::from_int(2) * &GoldenScalar::from_rational(om.clone()))
                * &(&GoldenScalar::from_rational(gq * Rational::from_integer(2.into())) + &GoldenScalar::from_int(k as i64)));
            assert_eq!(r.constant, want);
        }
    }
    let zero = QesParams::new(rat(0, 1), rat(0, 1), 0).unwrap();
    assert_eq!(qes_operator(&zero, &rat(1, 3), &rat(1, 1)), h1(&rat(1, 3), &rat(1, 1)));
}

#[test]
fn potential_leading_term() {
    let p = QesParams::new(rat(2, 3), rat(1, 4), 1).unwrap();
    let v = qes_potential(&p, &rat(1, 3), &rat(1, 1));
    assert_eq!(v.max_exp(), Some(3));
    assert_eq!(v.coeff(3), GoldenScalar::frac(2, 9));
}

#[test]
fn invariant_subspaces() {
    for k in 0..=3 {
        let p = QesParams::new(rat(1, 2), rat(1, 4), k).unwrap();
        let r = invariant_subspace_check(&p, &rat(1, 3), &rat(1, 1)).unwrap();
        assert_eq!(r.witness, Some(GoldenScalar::from_int(-2)));
    }
}

#[test]
fn low_blocks() {
    for (nu, om) in samples() {
        for k in 0..=3 {
            let p = QesParams::new(rat(1, 2), rat(1, 4), k).unwrap();
            let r = block_spectrum(&p, &nu, &om).unwrap();
            assert_eq!(r.charpoly.degree(), Some(k as usize + 1));
        }
    }
    // a = 0 degenerates to the exactly solvable values 0, 2ωk-shifted: eigenvalues 2ωk − 4ωj
    let p = QesParams::new(rat(0, 1), rat(0, 1), 1).unwrap();
    let r = block_spectrum(&p, &rat(1, 3), &rat(1, 1)).unwrap();
    assert_eq!(r.charpoly.eval(&GoldenScalar::from_int(2)), GoldenScalar::from_int(0));
    assert_eq!(r.charpoly.eval(&GoldenScalar::from_int(-2)), GoldenScalar::from_int(0));
}

#[test]
fn integral_commutes_with_tau1_potentials() {
    assert!(integral_ignores_tau1_potential(&build_f_formal()));
}
