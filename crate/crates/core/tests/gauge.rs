use h3_core::gauge::{
    compare_tables, derived_hamiltonian, drift_matches_at, ground_state_identities,
    AlgebraicHamiltonian,
};
use h3_core::scalar::rat;

#[test]
fn ground_state() {
    let t = std::time::Instant::now();
    let r = ground_state_identities().unwrap();
    assert_eq!(r.prefactor_degree, 15);
    println!("ground state {:?}", t.elapsed());
}

#[test]
fn derived_tables_match_reference() {
    let t = std::time::Instant::now();
    let d = derived_hamiltonian().unwrap();
    println!("derivation {:?}", t.elapsed());
    for e in compare_tables(d) {
        println!("{}: {} | {}", e.entry, e.derived, e.reference);
        assert!(e.equal, "{}", e.entry);
    }
    let samples = [(rat(1, 3), rat(1, 1)), (rat(2, 1), rat(5, 1)), (rat(-1, 7), rat(3, 2))];
    assert!(drift_matches_at(d, &samples));
    assert_eq!(d.a[0][0], AlgebraicHamiltonian::reference().a[0][0]);
}
