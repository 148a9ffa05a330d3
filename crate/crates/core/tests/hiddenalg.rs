use h3_core::diffop::{preserves_flag, FlagSpace, WeightVector};
use h3_core::hiddenalg::*;
use h3_core::poly::tau;
use h3_core::scalar::rat;
use h3_core::GoldenScalar;

#[test]
fn lowering_and_raising() {
    for n in [2, 4] {
        let c = GeneratorCatalog::new(n);
        let rep = flag_behavior_check(&c, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(rep.iter().filter(|r| r.witness.is_some()).count(), 8);
    }
    let c = GeneratorCatalog::new(3);
    let t = c.op("T12(3)").unwrap();
    for m in 3..=5 {
        preserves_flag(t, &FlagSpace::new(WeightVector::MINIMAL, m)).unwrap();
    }
    let j = c.op("J1+").unwrap();
    preserves_flag(j, &FlagSpace::new(WeightVector::MINIMAL, 3)).unwrap();
    assert!(preserves_flag(j, &FlagSpace::new(WeightVector::MINIMAL, 4)).is_err());
}

#[test]
fn ten_abelian_sets() {
    for n in [0, 3] {
        let sets = abelian_checks(&GeneratorCatalog::new(n)).unwrap();
        assert_eq!(sets.len(), 10);
    }
    let c = GeneratorCatalog::new(2);
    assert!(c.op("T0(3)").unwrap().commutator(c.op("T111(3)").unwrap()).is_zero());
    assert!(c.op("T2(11)").unwrap().commutator(c.op("J2+").unwrap()).is_zero());
}

#[test]
fn pairing() {
    let r = conjugation_check(&GeneratorCatalog::new(3)).unwrap();
    assert!(r.involutive && r.sets_match && r.weights_opposite);
    assert_eq!(r.pairs, 30);
}

#[test]
fn commutator_tables() {
    for n in [1, 4] {
        let c = GeneratorCatalog::new(n);
        for r in structure_checks(&c) {
            assert!(r.holds, "{} at n={n}: {:?}", r.claim, r.failures);
        }
    }
}

#[test]
fn instances() {
    let c = GeneratorCatalog::new(4);
    // [T0(2), T2(3)] = T0(3)
    let x = c.op("T0(2)").unwrap().commutator(c.op("T2(3)").unwrap());
    assert_eq!(&x, c.op("T0(3)").unwrap());
    // [T0(1), J1+] = J0 + T1(1)
    let y = c.op("T0(1)").unwrap().commutator(c.op("J1+").unwrap());
    assert_eq!(y, c.op("J0").unwrap() + c.op("T1(1)").unwrap());
    // a commutator outside its claimed span is caught
    let bad = StructureClaim {
        lhs: Set::R,
        rhs: Set::F,
        claim: Claim::Span(vec![Set::G]),
    };
    assert!(!check_claim(&c, &bad).holds);
}

#[test]
fn h_in_generators() {
    let r = h_decomposition_check(&[(rat(1, 3), rat(1, 1)), (rat(2, 1), rat(5, 1))]).unwrap();
    assert!(r.formal && r.second_order_matches);
    let c = GeneratorCatalog::new(0);
    let img = c.op("T3(22)").unwrap().apply(&tau::t(1).pow(2));
    assert_eq!(img, tau::t(2).scale(&GoldenScalar::from_int(2)));
}
