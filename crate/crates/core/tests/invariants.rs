use h3_core::coxeter::{fundamental_weights, generate_group, mirror_product, orbit_average};
use h3_core::invariants::{
    boundary_check, boundary_polynomial, decompose_in_tau, reference_mixing_constants,
    relate_orbit_invariants, t2_factor_w1, tau_basis, tau_monomials_of_degree,
};
use h3_core::poly::tau;
use h3_core::{GoldenScalar, Monomial, MultiPoly, VariableSpace};

fn grad_dot(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    (0..3).fold(MultiPoly::zero(VariableSpace::X), |acc, k| {
        &acc + &(&a.derivative(k) * &b.derivative(k))
    })
}

#[test]
fn tau_variables_are_invariant() {
    let g = generate_group().unwrap();
    for t in tau_basis().tau.iter() {
        assert!(g.is_invariant_exhaustive(t).unwrap());
    }
    assert!(!g.is_invariant(&MultiPoly::var(VariableSpace::X, 0)).unwrap());
    let p = mirror_product();
    assert!(!g.is_invariant(&p).unwrap());
    assert!(g.is_invariant(&(&p * &p)).unwrap());
}

#[test]
fn orbit_average_t2_factor() {
    let g = generate_group().unwrap();
    let [w1, w2, _] = fundamental_weights();
    let o1 = g.orbit(&w1).unwrap();
    let t2 = orbit_average(2, &o1);
    assert_eq!(t2.ratio_to(&tau_basis().tau[0]), Some(t2_factor_w1()));
    // another orbit gives a multiple of the same invariant
    let t2b = orbit_average(2, &g.orbit(&w2).unwrap());
    assert!(t2b.ratio_to(&tau_basis().tau[0]).is_some());
    assert!(g.is_invariant(&orbit_average(6, &o1)).unwrap());
}

#[test]
fn normalization_reconstructs_tau() {
    let g = generate_group().unwrap();
    let o1 = g.orbit(&fundamental_weights()[0]).unwrap();
    let r = relate_orbit_invariants(&o1).unwrap();
    assert_eq!(r.s2, t2_factor_w1().inv().unwrap());
    assert_eq!(r.reference, reference_mixing_constants());
    println!("normalized A,B,C = {}, {}, {}", r.a, r.b, r.c);
    println!("raw A,B,C = {}, {}, {}", r.raw_a, r.raw_b, r.raw_c);
    println!("t6 = {}\nt10 = {}", r.t6_in_tau, r.t10_in_tau);
}

#[test]
fn metric_entries_decompose() {
    let b = tau_basis();
    let a22 = decompose_in_tau(&grad_dot(&b.tau[1], &b.tau[1])).unwrap();
    let expected = &tau::mono(GoldenScalar::frac(-48, 5), 2, 1, 0)
        + &tau::mono(GoldenScalar::frac(45, 2), 0, 0, 1);
    assert_eq!(a22, expected);
}

#[test]
fn round_trip_through_tau() {
    let b = tau_basis();
    for d in (0..=30).step_by(2) {
        let (rank, cols) = b.image_rank(d);
        assert_eq!(rank, cols, "degree {d}");
    }
    let mut r = MultiPoly::zero(VariableSpace::Tau);
    for (i, e) in tau_monomials_of_degree(20).iter().enumerate() {
        r.add_term(Monomial::from_exps(e), &GoldenScalar::frac(i as i64 + 1, 3));
    }
    r.add_term(Monomial::from_exps(&[1, 1, 0]), &GoldenScalar::sqrt5());
    assert_eq!(decompose_in_tau(&b.compose(&r).unwrap()).unwrap(), r);
}

#[test]
fn boundary_is_jacobian_squared() {
    let rep = boundary_check().unwrap();
    assert_eq!(rep.jacobian_degree, 15);
    let degrees: std::collections::BTreeSet<u32> = boundary_polynomial()
        .terms()
        .map(|(m, _)| m.total_degree())
        .collect();
    assert_eq!(degrees.into_iter().collect::<Vec<_>>(), vec![3, 5, 7]);
    println!("J/P = {}, J^2/boundary = {}", rep.jacobian_over_mirrors, rep.jacobian_sq_over_boundary);
}

