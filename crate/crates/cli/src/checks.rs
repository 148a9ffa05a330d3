//! Certificate checks grouped by suite.

use h3_core::coxeter::{fundamental_weights, generate_group};
use h3_core::diffop::{
    flag_angle, preserves_flag, spectrum, wpt_check, FlagSpace, WeightVector, WptParams,
};
use h3_core::discrete::{
    compare_with_table, continuum_limit, discrete_commutation, discrete_f, discrete_h,
    discrete_spectrum_check, heisenberg_relations, Table, TableComparison,
};
use h3_core::gauge::{
    build_h, build_h_formal, compare_tables, derived_hamiltonian, drift_matches_at,
    ground_state_identities,
};
use h3_core::hiddenalg::{
    abelian_checks, conjugation_check, flag_behavior_check, h_decomposition_check,
    structure_checks, GeneratorCatalog, GeneratorClass,
};
use h3_core::integral::{
    build_f, build_f_formal, check_reference_states, gamma_check, minimal_flag_witness,
    reference_eigenfunctions, verify_commutation,
};
use h3_core::invariants::{
    boundary_check, reference_mixing_constants, relate_orbit_invariants, tau_basis,
};
use h3_core::linalg::UniPoly;
use h3_core::poly::tau;
use h3_core::qes::{
    block_spectrum, h1, h1_sl2, integral_ignores_tau1_potential, invariant_subspace_check,
    laguerre_check, qes_gauge_check, restrict_to_tau1, QesParams, Sl2Triple,
};
use h3_core::scalar::{rat, Rational};
use h3_core::{Error, GoldenScalar};
use serde_json::json;

use crate::config::{RunConfig, Suite};
use crate::report::{run_check, CheckReport, Outcome, Status};

pub fn suite_checks(suite: Suite, cfg: &RunConfig) -> Vec<CheckReport> {
    match suite {
        Suite::Group => group(cfg),
        Suite::Invariants => invariants(cfg),
        Suite::Gauge => gauge(cfg),
        Suite::Diffop => diffop(cfg),
        Suite::Integral => integral(cfg),
        Suite::Discrete => discrete(cfg),
        Suite::Qes => qes(cfg),
        Suite::Hiddenalg => hiddenalg(cfg),
    }
}

fn group(cfg: &RunConfig) -> Vec<CheckReport> {
    let grp = generate_group();
    let g = || grp.as_ref().map_err(Clone::clone);
    vec![
        run_check("group.order", cfg.timings, || {
            let g = g()?;
            let (order, refl, closed) = (g.order(), g.reflections().len(), g.is_closed());
            Ok(Outcome::verdict(
                order == 120 && refl == 15 && closed,
                format!("order {order}, {refl} reflections, closed: {closed}"),
                json!({ "order": order, "reflections": refl, "closed": closed }),
            ))
        }),
        run_check("group.orbits", cfg.timings, || {
            let g = g()?;
            let mut rows = Vec::new();
            for w in fundamental_weights() {
                let len = g.orbit(&w)?.len();
                rows.push((len, g.stabilizer_order(&w)));
            }
            let lens: Vec<usize> = rows.iter().map(|r| r.0).collect();
            let ok = lens == [12, 20, 30] && rows.iter().all(|(l, s)| l * s == 120);
            Ok(Outcome::verdict(
                ok,
                format!("orbit lengths {lens:?}"),
                json!(rows.iter().map(|(l, s)| json!({ "length": l, "stabilizer": s })).collect::<Vec<_>>()),
            ))
        }),
    ]
}

fn invariants(cfg: &RunConfig) -> Vec<CheckReport> {
    let grp = generate_group();
    let g = || grp.as_ref().map_err(Clone::clone);
    vec![
        run_check("invariants.tau-invariant", cfg.timings, || {
            let g = g()?;
            let fixed: Vec<bool> = tau_basis()
                .tau
                .iter()
                .map(|t| g.is_invariant_exhaustive(t))
                .collect::<h3_core::Result<_>>()?;
            Ok(Outcome::verdict(
                fixed.iter().all(|b| *b),
                "tau1, tau2, tau3 fixed by all group elements",
                fixed,
            ))
        }),
        run_check("invariants.independence", cfg.timings, || {
            let b = tau_basis();
            let ranks: Vec<(u32, usize, usize)> = (0..=30)
                .step_by(2)
                .map(|d| {
                    let (r, c) = b.image_rank(d);
                    (d, r, c)
                })
                .collect();
            let ok = ranks.iter().all(|(_, r, c)| r == c);
            Ok(Outcome::verdict(ok, "full column rank for every even degree <= 30", ranks))
        }),
        run_check("invariants.normalization", cfg.timings, || {
            let orbit = g()?.orbit(&fundamental_weights()[0])?;
            let r = relate_orbit_invariants(&orbit)?;
            let found = [r.a.clone(), r.b.clone(), r.c.clone()];
            let status = if found == reference_mixing_constants() { Status::Pass } else { Status::DiffReported };
            Ok(Outcome::new(status, format!("A, B, C = {}, {}, {}", r.a, r.b, r.c), r))
        }),
        run_check("invariants.boundary", cfg.timings, || {
            let r = boundary_check()?;
            Ok(Outcome::pass(
                format!("J = ({}) P, J^2 = ({}) boundary", r.jacobian_over_mirrors, r.jacobian_sq_over_boundary),
                r,
            ))
        }),
    ]
}

fn gauge(cfg: &RunConfig) -> Vec<CheckReport> {
    vec![
        run_check("gauge.ground-state", cfg.timings, || {
            let r = ground_state_identities()?;
            Ok(Outcome::pass(format!("E0 = {}", r.energy), r))
        }),
        run_check("gauge.table", cfg.timings, || {
            let d = derived_hamiltonian()?;
            let entries = compare_tables(d);
            let samples = [(rat(1, 3), rat(1, 1)), (rat(2, 1), rat(5, 1)), (rat(-1, 7), rat(3, 2))];
            let sampled = drift_matches_at(d, &samples);
            let bad: Vec<String> = entries.iter().filter(|e| !e.equal).map(|e| e.entry.clone()).collect();
            let lines = entries
                .iter()
                .filter(|e| !e.equal)
                .map(|e| format!("{}: derived {} | table {}", e.entry, e.derived, e.reference))
                .collect();
            let summary = if bad.is_empty() {
                "all 12 coefficient functions equal, drift equal at 3 samples".to_string()
            } else {
                format!("entries differ: {}", bad.join(", "))
            };
            Ok(Outcome::verdict(bad.is_empty() && sampled, summary, entries).with_lines(lines))
        }),
        run_check("gauge.no-constant-term", cfg.timings, || {
            let h = build_h_formal()?;
            let ok = h.apply(&tau::k(1)).is_zero() && h.coeff(&[2, 0, 0]) == tau::t(0).scale(&GoldenScalar::from_int(4));
            Ok(Outcome::verdict(ok, "h annihilates constants, A11 = 4 tau1", ok))
        }),
    ]
}

fn diffop(cfg: &RunConfig) -> Vec<CheckReport> {
    let (nu, om) = cfg.numeric();
    let n = cfg.n;
    let h = build_h(&nu, &om);
    let h = || h.as_ref().map_err(Clone::clone);
    vec![
        run_check("diffop.flags", cfg.timings, || {
            let h = build_h_formal()?;
            for alpha in [WeightVector::MINIMAL, WeightVector::INTEGRAL] {
                for m in 0..=n {
                    preserves_flag(&h, &FlagSpace::new(alpha, m))?;
                }
            }
            Ok(Outcome::pass(format!("h preserves P_m^(1,2,3) and P_m^(1,3,5) for m <= {n}"), n))
        }),
        run_check("diffop.spectrum", cfg.timings, || {
            let space = FlagSpace::new(WeightVector::MINIMAL, n);
            let s = spectrum(h()?, &space)?;
            let roots: Vec<GoldenScalar> = space
                .basis()
                .iter()
                .map(|e| {
                    let w = e[0] as i64 + 3 * e[1] as i64 + 5 * e[2] as i64;
                    &GoldenScalar::from_int(-4 * w) * &GoldenScalar::from_rational(om.clone())
                })
                .collect();
            let closed_form = s.charpoly == UniPoly::product_of_linear(&roots);
            let other = spectrum(&build_h(&(&nu + rat(1, 1)), &om)?, &space)?;
            let nu_free = other.charpoly == s.charpoly;
            let half = GoldenScalar::frac(-1, 2);
            let lines = s
                .eigenspaces
                .iter()
                .map(|e| format!("epsilon = {}  multiplicity {}", &e.value * &half, e.multiplicity))
                .collect();
            Ok(Outcome::verdict(
                closed_form && nu_free,
                format!("dim {}, {} levels, closed form: {closed_form}, independent of nu: {nu_free}", s.dim, s.eigenspaces.len()),
                json!({ "dim": s.dim, "charpoly": s.charpoly, "closed_form": closed_form, "nu_independent": nu_free }),
            )
            .with_lines(lines))
        }),
        run_check("diffop.eigenfunctions", cfg.timings, || {
            let states = reference_eigenfunctions(&nu, &om)?;
            check_reference_states(h()?, &build_f(&nu), &states)?;
            Ok(Outcome::pass(format!("{} explicit common eigenfunctions verified", states.len()), states))
        }),
        run_check("diffop.flag-angles", cfg.timings, || {
            let a = [flag_angle(WeightVector::MINIMAL), flag_angle(WeightVector::INTEGRAL)];
            let ok = a[0].cos_surd == "6/√42" && a[1].cos_surd == "9/√105";
            Ok(Outcome::verdict(ok, format!("cos = {} and {}", a[0].cos_surd, a[1].cos_surd), a))
        }),
        run_check("diffop.weighted-projective", cfg.timings, || {
            let p = WptParams {
                a: rat(1, 2),
                b: [rat(2, 1), rat(-1, 3), rat(5, 1)],
                c: [rat(1, 1), rat(-2, 1), rat(3, 4), rat(1, 5), rat(-1, 1), rat(7, 1)],
            };
            let ok = wpt_check(&p, n)?;
            Ok(Outcome::verdict(ok, format!("triangular substitution preserves P_{n}^(1,2,3)"), ok))
        }),
    ]
}

fn integral(cfg: &RunConfig) -> Vec<CheckReport> {
    let (nu, om) = cfg.numeric();
    let n = cfg.n;
    vec![
        run_check("integral.commutation", cfg.timings, || {
            verify_commutation(&build_h_formal()?, &build_f_formal())?;
            Ok(Outcome::pass("[h, f] = 0 identically in nu, omega", true))
        }),
        run_check("integral.flag", cfg.timings, || {
            let f = build_f_formal();
            for m in 0..=n {
                preserves_flag(&f, &FlagSpace::new(WeightVector::INTEGRAL, m))?;
            }
            let shifts: Vec<i64> = f.weight_shifts(&WeightVector::INTEGRAL).into_iter().collect();
            let witness = minimal_flag_witness(&f, n.max(2));
            let ok = shifts == [0] && witness.is_some();
            let summary = match &witness {
                Some((m, mono)) => format!("f preserves P_m^(1,3,5) for m <= {n}; leaves P_{m}^(1,2,3) at {mono}"),
                None => "f preserves (1,2,3) as well".to_string(),
            };
            Ok(Outcome::verdict(ok, summary, json!({ "weight_shifts": shifts, "minimal_flag_witness": witness })))
        }),
        run_check("integral.gamma", cfg.timings, || {
            let (joint, reports) = gamma_check(&build_h(&nu, &om)?, &build_f(&nu), n, &nu)?;
            let fits: Vec<_> = reports.iter().filter(|r| r.unmatched == 0).map(|r| r.convention).collect();
            let status = if fits.len() == 1 && joint.unsplit.is_empty() { Status::Pass } else { Status::DiffReported };
            let summary = reports
                .iter()
                .map(|r| format!("{:?} leaves {} of {} unmatched", r.convention, r.unmatched, r.labels.len()))
                .collect::<Vec<_>>()
                .join("; ");
            let lines = reports[0]
                .labels
                .iter()
                .zip(&reports[1].labels)
                .map(|(a, b)| {
                    let show = |l: Option<(u32, u32)>| l.map_or("-".to_string(), |(p, q)| format!("({p},{q})"));
                    format!("h {}  f {}  without offset {}  with offset {}", a.h_value, a.f_value, show(a.label), show(b.label))
                })
                .collect();
            Ok(Outcome::new(status, summary, json!({ "reports": reports, "unsplit": joint.unsplit })).with_lines(lines))
        }),
    ]
}

fn table_outcome(c: TableComparison) -> Outcome {
    let lines = c
        .entries
        .iter()
        .filter(|e| !e.equal)
        .map(|e| format!("S{:?}: derived {} | table {}", e.shift, e.derived, e.reference))
        .collect();
    let status = if c.mismatches == 0 { Status::Pass } else { Status::DiffReported };
    let summary = format!(
        "{} derived points, footprint {:?}, {} table entries, {} differ",
        c.derived_points, c.footprint, c.reference_points, c.mismatches
    );
    Outcome::new(status, summary, &c).with_lines(lines)
}

fn discrete(cfg: &RunConfig) -> Vec<CheckReport> {
    let (nu, om) = cfg.numeric();
    let sp = &cfg.delta;
    let n = cfg.n;
    vec![
        run_check("discrete.heisenberg", cfg.timings, || {
            heisenberg_relations(sp)?;
            Ok(Outcome::pass("differences and positions span the Heisenberg algebra", sp))
        }),
        run_check("discrete.table-h", cfg.timings, || {
            Ok(table_outcome(compare_with_table(&discrete_h(sp)?, Table::H)?))
        }),
        run_check("discrete.table-f", cfg.timings, || {
            Ok(table_outcome(compare_with_table(&discrete_f(sp), Table::F)?))
        }),
        run_check("discrete.isospectral", cfg.timings, || {
            let r = discrete_spectrum_check(n, sp, &nu, &om, n.min(4))?;
            Ok(Outcome::pass(
                format!("equal characteristic polynomials on dim {}, {} eigenfunctions transferred", r.dim, r.transferred),
                r,
            ))
        }),
        run_check("discrete.commutation", cfg.timings, || {
            let r = discrete_commutation(sp, &nu, &om, n)?;
            Ok(Outcome::verdict(
                r.operator_identity,
                format!("[h^, f^] vanishes on {} basis monomials; operator identity: {}", r.checked, r.operator_identity),
                r,
            ))
        }),
        run_check("discrete.continuum-limit", cfg.timings, || {
            let h = build_h(&nu, &om)?;
            let p = &(&tau::t(0).pow(3) * &tau::t(1)) + &(&tau::t(2) * &tau::t(1));
            let r = continuum_limit(&h, &p, sp, 6)?;
            let ok = r.residuals.windows(2).all(|w| w[1] < w[0]);
            Ok(Outcome::verdict(ok, "difference to the continuum is a polynomial in delta without constant term", r))
        }),
    ]
}

fn qes(cfg: &RunConfig) -> Vec<CheckReport> {
    let (nu, om) = cfg.numeric();
    let q = &cfg.qes;
    let params = || QesParams::new(q.a.clone(), q.gamma_q.clone(), q.k);
    vec![
        run_check("qes.sl2", cfg.timings, || {
            let top = q.k.max(3);
            for k in 0..=top {
                Sl2Triple::new(k).check_relations()?;
            }
            Ok(Outcome::pass(format!("sl(2) relations exact for k <= {top}"), top))
        }),
        run_check("qes.restriction", cfg.timings, || {
            let r = restrict_to_tau1(&build_h(&nu, &om)?)?;
            let ok = r == h1(&nu, &om) && r == h1_sl2(&nu, &om);
            Ok(Outcome::verdict(ok, format!("h on functions of tau1: {r}"), r))
        }),
        run_check("qes.gauge", cfg.timings, || {
            let r = qes_gauge_check(&params()?, &nu, &om)?;
            Ok(Outcome::pass(format!("constructions differ by the constant {}", r.constant), r))
        }),
        run_check("qes.subspace", cfg.timings, || {
            let mut reports = Vec::new();
            for k in 0..=q.k.max(3) {
                let p = QesParams::new(q.a.clone(), q.gamma_q.clone(), k)?;
                reports.push(invariant_subspace_check(&p, &nu, &om)?);
            }
            let preserved_only = q.a == rat(0, 1) || reports.iter().all(|r| r.witness.is_some());
            Ok(Outcome::verdict(
                preserved_only,
                format!("P_k preserved and P_(k+1) left for k <= {}", reports.len() - 1),
                reports,
            ))
        }),
        run_check("qes.block", cfg.timings, || {
            let r = block_spectrum(&params()?, &nu, &om)?;
            Ok(Outcome::pass(
                format!("k = {}: energies are the roots of {}", q.k, r.energy_charpoly),
                r,
            ))
        }),
        run_check("qes.laguerre", cfg.timings, || {
            let reports = (0..=5).map(|m| laguerre_check(m, &nu, &om)).collect::<h3_core::Result<Vec<_>>>()?;
            Ok(Outcome::pass("zero residual for n1 <= 5", reports))
        }),
        run_check("qes.integral-scope", cfg.timings, || {
            let ok = integral_ignores_tau1_potential(&build_f_formal());
            Ok(Outcome::verdict(ok, "f has no d/dtau1 terms, so it commutes with any tau1 potential", ok))
        }),
    ]
}

fn hiddenalg(cfg: &RunConfig) -> Vec<CheckReport> {
    let n = cfg.n;
    let cat = GeneratorCatalog::new(n);
    let (nu, om) = cfg.numeric();
    vec![
        run_check("hiddenalg.catalog", cfg.timings, || {
            let lowering = cat.count(GeneratorClass::Lowering);
            let raising = cat.count(GeneratorClass::Raising);
            let total = cat.generators.len();
            Ok(Outcome::verdict(
                (total, lowering, raising) == (30, 22, 8),
                format!("{total} generators: {lowering} lowering, {raising} raising"),
                json!({ "generators": total, "lowering": lowering, "raising": raising }),
            ))
        }),
        run_check("hiddenalg.flags", cfg.timings, || {
            let levels: Vec<u32> = (0..=n + 2).collect();
            let r = flag_behavior_check(&cat, &levels)?;
            let escaped = r.iter().filter(|b| b.witness.is_some()).count();
            Ok(Outcome::verdict(
                escaped == 8,
                format!("lowering generators preserve every level <= {}; all {escaped} raising generators leave P_{}", n + 2, n + 1),
                r,
            ))
        }),
        run_check("hiddenalg.abelian", cfg.timings, || {
            let sets = abelian_checks(&cat)?;
            Ok(Outcome::pass(format!("{} sets Abelian", sets.len()), sets.iter().map(|(s, k)| json!({ "set": s, "size": k })).collect::<Vec<_>>()))
        }),
        run_check("hiddenalg.pairing", cfg.timings, || {
            let r = conjugation_check(&cat)?;
            let ok = r.involutive && r.sets_match && r.weights_opposite;
            Ok(Outcome::verdict(ok, format!("{} conjugate pairs", r.pairs), r))
        }),
        run_check("hiddenalg.structure", cfg.timings, || {
            let results = structure_checks(&cat);
            let failed: Vec<String> = results.iter().filter(|r| !r.holds).map(|r| r.claim.clone()).collect();
            let summary = if failed.is_empty() {
                format!("all {} commutator claims verified", results.len())
            } else {
                format!("claims fail: {}", failed.join(", "))
            };
            Ok(Outcome::verdict(failed.is_empty(), summary, results))
        }),
        run_check("hiddenalg.decomposition", cfg.timings, || {
            let samples: Vec<(Rational, Rational)> = vec![(nu.clone(), om.clone()), (rat(2, 1), rat(5, 1))];
            let r = h_decomposition_check(&samples)?;
            if !r.second_order_matches {
                return Err(Error::DecompositionMismatch("second-order part".into()));
            }
            Ok(Outcome::pass("h is a quadratic combination of the generators", r))
        }),
    ]
}
