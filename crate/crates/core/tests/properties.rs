use h3_core::diffop::DiffOperator;
use h3_core::discrete::{discretize, from_quasi_basis, to_quasi_basis, Spacings};
use h3_core::poly::tau;
use h3_core::scalar::rat;
use h3_core::{GoldenScalar, Monomial, MultiPoly, VariableSpace};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = GoldenScalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3)
        .prop_map(|(a, d, b)| &GoldenScalar::frac(a, d) + &(&GoldenScalar::from_int(b) * &GoldenScalar::sqrt5()))
}

fn nonzero_scalar() -> impl Strategy<Value = GoldenScalar> {
    scalar().prop_filter("nonzero", |s| *s != GoldenScalar::from_int(0))
}

fn poly(space: VariableSpace, max_deg: u16, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), scalar()), 0..=max_terms).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                space,
                terms.into_iter().map(|((a, b, c), s)| (Monomial::from_exps(&[a, b, c]), s)),
            )
        },
    )
}

fn xpoly() -> impl Strategy<Value = MultiPoly> {
    poly(VariableSpace::X, 3, 4)
}

fn taupoly() -> impl Strategy<Value = MultiPoly> {
    poly(VariableSpace::Tau, 2, 3)
}

fn operator() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec(((0u16..=2, 0u16..=1, 0u16..=1), taupoly()), 1..=3)
        .prop_map(|t| DiffOperator::from_terms(t.into_iter().map(|((a, b, c), p)| ([a, b, c], p))))
}

fn spacings() -> impl Strategy<Value = Spacings> {
    (1i64..=3, 1i64..=3, 1i64..=3, 1i64..=2)
        .prop_map(|(a, b, c, d)| Spacings::new([rat(a, d), rat(b, 1), rat(1, c)]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in nonzero_scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a / &c) * &c, a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.to_string().parse::<GoldenScalar>().unwrap(), a);
    }

    #[test]
    fn polynomial_ring_axioms(p in xpoly(), q in xpoly(), r in xpoly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&(&p + &q) - &q - p.clone()).is_zero());
    }

    #[test]
    fn conjugation_is_multiplicative(p in xpoly(), q in xpoly()) {
        prop_assert_eq!((&p * &q).conj(), &p.conj() * &q.conj());
        prop_assert_eq!(p.conj().conj(), p);
    }

    #[test]
    fn divide_round_trip(p in xpoly(), d in xpoly()) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&p * &d).exact_divide(&d).unwrap(), p);
    }

    #[test]
    fn weighted_degree_is_additive(p in taupoly(), q in taupoly(), w in (1u32..=5, 1u32..=5, 1u32..=5)) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let a = [w.0, w.1, w.2];
        prop_assert_eq!(
            (&p * &q).weighted_degree(&a).unwrap(),
            p.weighted_degree(&a).unwrap() + q.weighted_degree(&a).unwrap()
        );
    }

    #[test]
    fn canonical_text_round_trip(p in xpoly(), t in taupoly()) {
        prop_assert_eq!(MultiPoly::parse(VariableSpace::X, &p.to_string()).unwrap(), p);
        let with_params = &(&t * &tau::nu()) + &tau::omega();
        prop_assert_eq!(MultiPoly::parse(VariableSpace::Tau, &with_params.to_string()).unwrap(), with_params);
    }

    #[test]
    fn operator_algebra(a in operator(), b in operator(), c in operator(), p in taupoly()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
        prop_assert!((&a.commutator(&b) + &b.commutator(&a)).is_zero());
        let jacobi = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a)))
            + &c.commutator(&a.commutator(&b));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn quasi_map_round_trip(p in taupoly(), sp in spacings()) {
        let q = to_quasi_basis(&p, &sp);
        prop_assert_eq!(q.total_degree().ok(), p.total_degree().ok());
        prop_assert_eq!(from_quasi_basis(&q, &sp), p);
    }

    #[test]
    fn discretization_intertwines(op in operator(), p in taupoly(), sp in spacings()) {
        let lhs = discretize(&op, &sp).apply(&to_quasi_basis(&p, &sp));
        prop_assert_eq!(lhs, to_quasi_basis(&op.apply(&p), &sp));
    }

    #[test]
    fn discretization_is_multiplicative(a in operator(), b in operator(), sp in spacings()) {
        let lhs = discretize(&a.compose(&b), &sp);
        let rhs = discretize(&a, &sp).compose(&discretize(&b, &sp)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
