use h3_core::diffop::{preserves_flag, spectrum, FlagSpace, WeightVector};
use h3_core::gauge::{build_h, build_h_formal};
use h3_core::integral::{
    build_f, build_f_formal, check_reference_states, f_diagonal, gamma_check,
    minimal_flag_witness, reference_eigenfunctions, verify_commutation,
};
use h3_core::linalg::UniPoly;
use h3_core::scalar::rat;
use h3_core::GoldenScalar;

#[test]
fn commutes_formally() {
    verify_commutation(&build_h_formal().unwrap(), &build_f_formal()).unwrap();
}

#[test]
fn flags_and_weights() {
    let f = build_f_formal();
    for n in 0..=8 {
        preserves_flag(&f, &FlagSpace::new(WeightVector::INTEGRAL, n)).unwrap();
    }
    assert_eq!(f.weight_shifts(&WeightVector::INTEGRAL).into_iter().collect::<Vec<_>>(), vec![0]);
    let (n, _) = minimal_flag_witness(&f, 8).unwrap();
    assert_eq!(n, 2);
}

/// Observed labeling at level 8: one state escapes the closed form without
/// the offset, all of them with it.
#[test]
fn gamma_labels_at_level_8() {
    let nu = rat(1, 3);
    let h = build_h(&nu, &rat(1, 1)).unwrap();
    let f = build_f(&nu);
    let (joint, reports) = gamma_check(&h, &f, 8, &nu).unwrap();
    assert_eq!(joint.states.len(), FlagSpace::new(WeightVector::INTEGRAL, 8).dim());
    assert!(joint.unsplit.is_empty());
    let [without, with] = &reports;
    assert_eq!(with.unmatched, joint.states.len());
    assert_eq!(without.unmatched, 1);
    let odd = without.labels.iter().find(|l| l.label.is_none()).unwrap();
    let diag = f_diagonal(1, 1).with_params(&nu, &rat(1, 1)).constant_term();
    assert_eq!(odd.f_value, diag);
    assert_eq!(odd.h_value, GoldenScalar::from_int(-32));
}

#[test]
fn reference_states_hold() {
    for (nu, om) in [(rat(1, 3), rat(1, 1)), (rat(2, 1), rat(5, 1))] {
        let h = build_h(&nu, &om).unwrap();
        let f = build_f(&nu);
        let states = reference_eigenfunctions(&nu, &om).unwrap();
        check_reference_states(&h, &f, &states).unwrap();
    }
}

#[test]
fn spectrum_on_p8() {
    let space = FlagSpace::new(WeightVector::MINIMAL, 8);
    let weights: Vec<GoldenScalar> = space
        .basis()
        .iter()
        .map(|e| GoldenScalar::from_int(-4 * (e[0] as i64 + 3 * e[1] as i64 + 5 * e[2] as i64)))
        .collect();
    let expected = UniPoly::product_of_linear(&weights);
    for nu in [rat(1, 3), rat(7, 2)] {
        let h = build_h(&nu, &rat(1, 1)).unwrap();
        let s = spectrum(&h, &space).unwrap();
        assert_eq!(s.charpoly, expected);
        let level3 = s.eigenspaces.iter().find(|e| e.value == GoldenScalar::from_int(-12)).unwrap();
        assert_eq!((level3.multiplicity, level3.vectors.len()), (2, 2));
    }
}
