//! Canonical dumps of computed objects.

use std::fmt::Write as _;

use h3_core::diffop::{joint_eigenbasis, spectrum, tau_exps, FlagSpace, WeightVector};
use h3_core::discrete::{discrete_f, discrete_h, ShiftOperator};
use h3_core::gauge::{build_h, compare_tables, derived_hamiltonian, AlgebraicHamiltonian};
use h3_core::integral::{build_f, IntegralOperator};
use h3_core::invariants::{tau_basis, TauPoly};
use h3_core::qes::{block_spectrum, QesParams};
use h3_core::scalar::Rational;
use h3_core::GoldenScalar;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::{CliError, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Artifact {
    Invariants,
    Hamiltonian,
    Integral,
    DiscreteH,
    DiscreteF,
    Spectrum,
    QesBlock,
}

/// Named coefficient list rendered as `name = value` lines or a JSON object.
fn named(entries: Vec<(String, String)>, format: Format) -> String {
    match format {
        Format::Text => entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect(),
        Format::Json => {
            let m: Map<String, Value> = entries.into_iter().map(|(k, v)| (k, Value::String(v))).collect();
            json_text(&m)
        }
    }
}

fn json_text(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("artifact values serialize") + "\n"
}

fn second_order_table(a: &[[TauPoly; 3]; 3], b: &[TauPoly; 3], params: Option<(&Rational, &Rational)>) -> Vec<(String, String)> {
    let show = |p: &TauPoly| match params {
        Some((nu, om)) => p.with_params(nu, om).to_string(),
        None => p.to_string(),
    };
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            out.push((format!("A{}{}", i + 1, j + 1), show(&a[i][j])));
        }
    }
    for (i, bi) in b.iter().enumerate() {
        out.push((format!("B{}", i + 1), show(bi)));
    }
    out
}

fn shift_table(op: &ShiftOperator, format: Format) -> String {
    match format {
        Format::Text => op.terms().iter().map(|(k, c)| format!("S({},{},{}) = {c}\n", k[0], k[1], k[2])).collect(),
        Format::Json => json_text(op),
    }
}

/// `(n₁,n₂,n₃)` of a joint eigenfunction: its monomial of highest
/// (1,3,5)-weight, ties broken towards higher powers of τ₃, then τ₂.
fn label_of(v: &TauPoly) -> [u16; 3] {
    v.terms()
        .map(|(m, _)| tau_exps(m))
        .max_by_key(|e| (e[0] as u32 + 3 * e[1] as u32 + 5 * e[2] as u32, e[2], e[1]))
        .unwrap_or([0, 0, 0])
}

#[derive(Serialize)]
struct SpectrumRecord {
    n1: u16,
    n2: u16,
    n3: u16,
    epsilon: GoldenScalar,
    gamma: GoldenScalar,
    eigenfunction: TauPoly,
}

pub fn emit(artifact: Artifact, format: Format, cfg: &RunConfig) -> Result<String, CliError> {
    let (nu, om) = cfg.numeric();
    let params = (!cfg.is_formal()).then_some((&nu, &om));
    Ok(match artifact {
        Artifact::Invariants => {
            let b = tau_basis();
            named((0..3).map(|i| (format!("tau{}", i + 1), b.tau[i].to_string())).collect(), format)
        }
        Artifact::Hamiltonian => {
            let h = derived_hamiltonian()?;
            named(second_order_table(&h.a, &h.b, params), format)
        }
        Artifact::Integral => {
            let f = IntegralOperator::reference();
            named(second_order_table(&f.f, &f.g, params), format)
        }
        Artifact::DiscreteH => {
            let op = discrete_h(&cfg.delta)?;
            shift_table(&params.map_or(op.clone(), |(a, b)| op.with_params(a, b)), format)
        }
        Artifact::DiscreteF => {
            let op = discrete_f(&cfg.delta);
            shift_table(&params.map_or(op.clone(), |(a, b)| op.with_params(a, b)), format)
        }
        Artifact::Spectrum => {
            let space = FlagSpace::new(WeightVector::INTEGRAL, cfg.n);
            let joint = joint_eigenbasis(&build_h(&nu, &om)?, &build_f(&nu), &space)?;
            let half = GoldenScalar::frac(-1, 2);
            let mut records: Vec<SpectrumRecord> = joint
                .states
                .iter()
                .map(|s| {
                    let [n1, n2, n3] = label_of(&s.vector);
                    SpectrumRecord {
                        n1,
                        n2,
                        n3,
                        epsilon: &s.h_value * &half,
                        gamma: s.f_value.clone(),
                        eigenfunction: s.vector.clone(),
                    }
                })
                .collect();
            records.sort_by_key(|r| (r.n1 as u32 + 3 * r.n2 as u32 + 5 * r.n3 as u32, r.n3, r.n2));
            match format {
                Format::Text => records
                    .iter()
                    .map(|r| format!("({},{},{})  epsilon = {}  gamma = {}  phi = {}\n", r.n1, r.n2, r.n3, r.epsilon, r.gamma, r.eigenfunction))
                    .collect(),
                Format::Json => json_text(&records),
            }
        }
        Artifact::QesBlock => {
            let q = &cfg.qes;
            let r = block_spectrum(&QesParams::new(q.a.clone(), q.gamma_q.clone(), q.k)?, &nu, &om)?;
            match format {
                Format::Text => {
                    let mut s = String::new();
                    for row in &r.matrix {
                        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                        let _ = writeln!(s, "[{}]", cells.join(", "));
                    }
                    let _ = writeln!(s, "charpoly = {}", r.charpoly);
                    let _ = writeln!(s, "gauge constant = {}", r.constant);
                    let _ = writeln!(s, "energy charpoly = {}", r.energy_charpoly);
                    let _ = writeln!(s, "ground energy (closed form) = {}", r.ground_energy);
                    s
                }
                Format::Json => json_text(&r),
            }
        }
    })
}

#[derive(Serialize)]
struct OrbitRow {
    seed: String,
    length: usize,
    stabilizer: usize,
}

#[derive(Serialize)]
struct GroupInfo {
    order: usize,
    reflections: usize,
    orbits: Vec<OrbitRow>,
}

pub fn group_info(format: Format) -> Result<String, CliError> {
    let g = h3_core::coxeter::generate_group()?;
    let orbits = h3_core::coxeter::fundamental_weights()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            Ok(OrbitRow {
                seed: format!("w{}", i + 1),
                length: g.orbit(w)?.len(),
                stabilizer: g.stabilizer_order(w),
            })
        })
        .collect::<Result<Vec<_>, h3_core::Error>>()?;
    let info = GroupInfo {
        order: g.order(),
        reflections: g.reflections().len(),
        orbits,
    };
    Ok(match format {
        Format::Json => json_text(&info),
        Format::Text => {
            let mut s = format!("order {}\nreflections {}\nseed  orbit  stabilizer\n", info.order, info.reflections);
            for o in &info.orbits {
                let _ = writeln!(s, "{:<4}  {:>5}  {:>10}", o.seed, o.length, o.stabilizer);
            }
            s
        }
    })
}

pub fn boundary_info(format: Format) -> Result<String, CliError> {
    let g = h3_core::coxeter::generate_group()?;
    let orbit = g.orbit(&h3_core::coxeter::fundamental_weights()[0])?;
    let norm = h3_core::invariants::relate_orbit_invariants(&orbit)?;
    let b = h3_core::invariants::boundary_check()?;
    Ok(match format {
        Format::Json => json_text(&json!({ "boundary": b, "normalization": norm })),
        Format::Text => {
            let r = &norm.reference;
            format!(
                "J / (mirror product) = {}\nJ^2 / (boundary polynomial) = {}\nJ^2 = {}\n\
                 s2, s6, s10 = {}, {}, {}\nA, B, C (normalized) = {}, {}, {}\nA, B, C (raw averages) = {}, {}, {}\n\
                 A, B, C (table) = {}, {}, {}\n",
                b.jacobian_over_mirrors,
                b.jacobian_sq_over_boundary,
                b.jacobian_sq_in_tau,
                norm.s2,
                norm.s6,
                norm.s10,
                norm.a,
                norm.b,
                norm.c,
                norm.raw_a,
                norm.raw_b,
                norm.raw_c,
                r[0],
                r[1],
                r[2]
            )
        }
    })
}

/// Derived and published coefficient tables with a diff section. The flag
/// is true when every entry agrees.
pub fn hamiltonian_tables(format: Format, cfg: &RunConfig, formal: bool) -> Result<(String, bool), CliError> {
    let derived = derived_hamiltonian()?;
    let entries = compare_tables(derived);
    let agree = entries.iter().all(|e| e.equal);
    let (nu, om) = cfg.numeric();
    let params = (!formal && !cfg.is_formal()).then_some((&nu, &om));
    let reference = AlgebraicHamiltonian::reference();
    let out = match format {
        Format::Json => json_text(&json!({
            "derived": second_order_table(&derived.a, &derived.b, params).into_iter().map(|(k, v)| (k, Value::String(v))).collect::<Map<_, _>>(),
            "table": second_order_table(&reference.a, &reference.b, params).into_iter().map(|(k, v)| (k, Value::String(v))).collect::<Map<_, _>>(),
            "diff": entries.iter().filter(|e| !e.equal).map(|e| &e.entry).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::from("derived\n");
            for (k, v) in second_order_table(&derived.a, &derived.b, params) {
                let _ = writeln!(s, "  {k} = {v}");
            }
            s.push_str("table\n");
            for (k, v) in second_order_table(&reference.a, &reference.b, params) {
                let _ = writeln!(s, "  {k} = {v}");
            }
            s.push_str("diff\n");
            if agree {
                s.push_str("  none\n");
            }
            for e in entries.iter().filter(|e| !e.equal) {
                let _ = writeln!(s, "  {}: {} | {}", e.entry, e.derived, e.reference);
            }
            s
        }
    };
    Ok((out, agree))
}

pub fn spectrum_table(format: Format, cfg: &RunConfig, alpha: WeightVector) -> Result<String, CliError> {
    let (nu, om) = cfg.numeric();
    let s = spectrum(&build_h(&nu, &om)?, &FlagSpace::new(alpha, cfg.n))?;
    Ok(match format {
        Format::Json => json_text(&s),
        Format::Text => {
            let half = GoldenScalar::frac(-1, 2);
            let mut out = format!("dim {}\ncharpoly {}\n", s.dim, s.charpoly);
            for e in &s.eigenspaces {
                let _ = writeln!(out, "epsilon = {}  multiplicity {}", &e.value * &half, e.multiplicity);
                for v in &e.vectors {
                    let _ = writeln!(out, "  {v}");
                }
            }
            out
        }
    })
}
