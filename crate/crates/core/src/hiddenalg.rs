//! The hidden algebra of `h`: generators acting on the flag `P_n^(1,2,3)`,
//! its Abelian subalgebras, the conjugation pairing and the expression of
//! `h` through flag-preserving generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::diffop::{preserves_flag, DiffOperator, FlagSpace, MultiIndex, WeightVector};
use crate::error::{Error, Result};
use crate::gauge::build_h_formal;
use crate::invariants::TauPoly;
use crate::linalg::SparseEchelon;
use crate::poly::{tau, Monomial, MultiPoly, VariableSpace};
use crate::scalar::{GoldenScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Set {
    L,
    R,
    F,
    E,
    G,
    FrakL,
    FrakR,
    FrakF,
    FrakE,
    FrakG,
    B,
}

impl Set {
    pub const ABELIAN: [Set; 10] = [
        Set::L,
        Set::R,
        Set::F,
        Set::E,
        Set::G,
        Set::FrakL,
        Set::FrakR,
        Set::FrakF,
        Set::FrakE,
        Set::FrakG,
    ];

    pub fn conjugate(self) -> Set {
        match self {
            Set::L => Set::FrakL,
            Set::R => Set::FrakR,
            Set::F => Set::FrakF,
            Set::E => Set::FrakE,
            Set::G => Set::FrakG,
            Set::FrakL => Set::L,
            Set::FrakR => Set::R,
            Set::FrakF => Set::F,
            Set::FrakE => Set::E,
            Set::FrakG => Set::G,
            Set::B => Set::B,
        }
    }
}

impl fmt::Display for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Set::L => "L",
            Set::R => "R",
            Set::F => "F",
            Set::E => "E",
            Set::G => "G",
            Set::FrakL => "𝔏",
            Set::FrakR => "ℜ",
            Set::FrakF => "𝔉",
            Set::FrakE => "𝔈",
            Set::FrakG => "𝔊",
            Set::B => "B",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorClass {
    /// Preserves every `P_m`.
    Lowering,
    /// Preserves `P_n` for its own `n` only.
    Raising,
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: &'static str,
    pub class: GeneratorClass,
    pub set: Option<Set>,
    /// Name of the conjugate generator.
    pub conjugate: &'static str,
    pub op: DiffOperator,
}

/// The 30 generators at level `n`: 21 lowering `T`s, `J₀`, and 8 raising `J⁺`s.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCatalog {
    pub n: u32,
    pub generators: Vec<Generator>,
}

/// `∂^β` times `τ^e`.
fn t_op(e: [u16; 3], beta: MultiIndex) -> DiffOperator {
    DiffOperator::term(beta, tau::mono(GoldenScalar::from_int(1), e[0], e[1], e[2]))
}

/// `J₀ = τ₁∂₁ + 2τ₂∂₂ + 3τ₃∂₃ − n`.
pub fn j0(n: u32) -> DiffOperator {
    DiffOperator::from_terms([
        ([1, 0, 0], tau::t(0)),
        ([0, 1, 0], tau::t(1).scale(&GoldenScalar::from_int(2))),
        ([0, 0, 1], tau::t(2).scale(&GoldenScalar::from_int(3))),
        ([0, 0, 0], tau::k(-(n as i64))),
    ])
}

impl GeneratorCatalog {
    pub fn new(n: u32) -> Self {
        use GeneratorClass::*;
        let j = j0(n);
        let id = DiffOperator::identity();
        let jj = |k: i64| &j + &id.scale(&GoldenScalar::from_int(k));
        let j01 = &j * &jj(1);
        let j012 = &j01 * &jj(2);
        let g = |name, class, set, conjugate, op| Generator {
            name,
            class,
            set,
            conjugate,
            op,
        };
        let s = Some;
        let generators = vec![
            g("T0(1)", Lowering, s(Set::B), "J1+", t_op([0, 0, 0], [1, 0, 0])),
            g("T0(2)", Lowering, s(Set::R), "J2+", t_op([0, 0, 0], [0, 1, 0])),
            g("T0(3)", Lowering, s(Set::L), "J3+", t_op([0, 0, 0], [0, 0, 1])),
            g("T1(1)", Lowering, s(Set::B), "T1(1)", t_op([1, 0, 0], [1, 0, 0])),
            g("T2(2)", Lowering, s(Set::B), "T2(2)", t_op([0, 1, 0], [0, 1, 0])),
            g("T3(3)", Lowering, s(Set::B), "T3(3)", t_op([0, 0, 1], [0, 0, 1])),
            g("T1(3)", Lowering, s(Set::L), "J3,-1+", t_op([1, 0, 0], [0, 0, 1])),
            g("T11(3)", Lowering, s(Set::L), "J3,-11+", t_op([2, 0, 0], [0, 0, 1])),
            g("T111(3)", Lowering, s(Set::L), "T3(111)", t_op([3, 0, 0], [0, 0, 1])),
            g("T1(2)", Lowering, s(Set::R), "J2,-1+", t_op([1, 0, 0], [0, 1, 0])),
            g("T11(2)", Lowering, s(Set::R), "T2(11)", t_op([2, 0, 0], [0, 1, 0])),
            g("T2(3)", Lowering, s(Set::F), "J3,-2+", t_op([0, 1, 0], [0, 0, 1])),
            g("T12(3)", Lowering, s(Set::F), "T3(12)", t_op([1, 1, 0], [0, 0, 1])),
            g("T2(11)", Lowering, s(Set::FrakR), "T11(2)", t_op([0, 1, 0], [2, 0, 0])),
            g("T22(13)", Lowering, s(Set::FrakE), "T13(22)", t_op([0, 2, 0], [1, 0, 1])),
            g("T222(33)", Lowering, s(Set::G), "T33(222)", t_op([0, 3, 0], [0, 0, 2])),
            g("T3(12)", Lowering, s(Set::FrakF), "T12(3)", t_op([0, 0, 1], [1, 1, 0])),
            g("T3(22)", Lowering, s(Set::E), "J22,-3+", t_op([0, 0, 1], [0, 2, 0])),
            g("T13(22)", Lowering, s(Set::E), "T22(13)", t_op([1, 0, 1], [0, 2, 0])),
            g("T3(111)", Lowering, s(Set::FrakL), "T111(3)", t_op([0, 0, 1], [3, 0, 0])),
            g("T33(222)", Lowering, s(Set::FrakG), "T222(33)", t_op([0, 0, 2], [0, 3, 0])),
            g("J0", Lowering, s(Set::B), "J0", j.clone()),
            g("J1+", Raising, s(Set::B), "T0(1)", &t_op([1, 0, 0], [0, 0, 0]) * &j),
            g("J2,-1+", Raising, s(Set::FrakR), "T1(2)", &t_op([0, 1, 0], [1, 0, 0]) * &j),
            g("J3,-2+", Raising, s(Set::FrakF), "T2(3)", &t_op([0, 0, 1], [0, 1, 0]) * &j),
            g("J22,-3+", Raising, s(Set::FrakE), "T3(22)", &t_op([0, 2, 0], [0, 0, 1]) * &j),
            g("J2+", Raising, s(Set::FrakR), "T0(2)", &t_op([0, 1, 0], [0, 0, 0]) * &j01),
            g("J3,-11+", Raising, s(Set::FrakL), "T11(3)", &t_op([0, 0, 1], [2, 0, 0]) * &j),
            g("J3,-1+", Raising, s(Set::FrakL), "T1(3)", &t_op([0, 0, 1], [1, 0, 0]) * &j01),
            g("J3+", Raising, s(Set::FrakL), "T0(3)", &t_op([0, 0, 1], [0, 0, 0]) * &j012),
        ];
        Self { n, generators }
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn op(&self, name: &str) -> Result<&DiffOperator> {
        self.get(name)
            .map(|g| &g.op)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn members(&self, set: Set) -> Vec<&Generator> {
        self.generators.iter().filter(|g| g.set == Some(set)).collect()
    }

    pub fn count(&self, class: GeneratorClass) -> usize {
        self.generators.iter().filter(|g| g.class == class).count()
    }
}

/// `τ` exponents minus derivative orders; constant across a homogeneous operator.
pub fn grading(op: &DiffOperator) -> BTreeSet<[i32; 3]> {
    let mut out = BTreeSet::new();
    for (b, c) in op.terms() {
        for (m, _) in c.terms() {
            out.insert(std::array::from_fn(|i| m.exp(i) as i32 - b[i] as i32));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagBehavior {
    pub name: &'static str,
    pub class: GeneratorClass,
    pub preserved: Vec<u32>,
    /// Level and monomial whose image leaves the space.
    pub witness: Option<(u32, String)>,
}

/// Lowering generators preserve every sampled `P_m`; raising generators
/// preserve `P_n` and leave some `P_m`, `n < m ≤ n + 4`.
pub fn flag_behavior_check(catalog: &GeneratorCatalog, levels: &[u32]) -> Result<Vec<FlagBehavior>> {
    let mut out = Vec::new();
    for g in &catalog.generators {
        let mut preserved = Vec::new();
        let mut witness = None;
        match g.class {
            GeneratorClass::Lowering => {
                for &m in levels {
                    preserves_flag(&g.op, &FlagSpace::new(WeightVector::MINIMAL, m))
                        .map_err(|e| Error::ClassificationFailure(format!("{} at level {m}: {e}", g.name)))?;
                    preserved.push(m);
                }
            }
            GeneratorClass::Raising => {
                let n = catalog.n;
                preserves_flag(&g.op, &FlagSpace::new(WeightVector::MINIMAL, n))
                    .map_err(|e| Error::ClassificationFailure(format!("{} at its level {n}: {e}", g.name)))?;
                preserved.push(n);
                witness = (n + 1..=n + 4).find_map(|m| {
                    match preserves_flag(&g.op, &FlagSpace::new(WeightVector::MINIMAL, m)) {
                        Err(Error::NotInvariant { monomial }) => Some((m, monomial)),
                        _ => None,
                    }
                });
                if witness.is_none() {
                    return Err(Error::ClassificationFailure(format!(
                        "{} preserves every level up to {}",
                        g.name,
                        n + 4
                    )));
                }
            }
        }
        out.push(FlagBehavior {
            name: g.name,
            class: g.class,
            preserved,
            witness,
        });
    }
    Ok(out)
}

/// Every pairwise commutator inside each of the ten Abelian sets vanishes.
pub fn abelian_checks(catalog: &GeneratorCatalog) -> Result<Vec<(Set, usize)>> {
    let mut out = Vec::new();
    for set in Set::ABELIAN {
        let gens = catalog.members(set);
        let mut pairs = 0;
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i..] {
                if !a.op.commutator(&b.op).is_zero() {
                    return Err(Error::NonAbelian(format!("{set}: [{}, {}]", a.name, b.name)));
                }
                pairs += 1;
            }
        }
        out.push((set, pairs));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub pairs: usize,
    pub involutive: bool,
    pub sets_match: bool,
    /// Conjugate generators carry opposite `(1,2,3)` weight shifts.
    pub weights_opposite: bool,
}

pub fn conjugation_check(catalog: &GeneratorCatalog) -> Result<PairingReport> {
    let mut involutive = true;
    let mut sets_match = true;
    let mut weights_opposite = true;
    for g in &catalog.generators {
        let c = catalog
            .get(g.conjugate)
            .ok_or_else(|| Error::ClassificationFailure(format!("missing conjugate {}", g.conjugate)))?;
        involutive &= c.conjugate == g.name;
        sets_match &= g.set.map(Set::conjugate) == c.set;
        let wg = g.op.weight_shifts(&WeightVector::MINIMAL);
        let wc: BTreeSet<i64> = c.op.weight_shifts(&WeightVector::MINIMAL).iter().map(|w| -w).collect();
        weights_opposite &= wg.len() == 1 && wg == wc;
    }
    Ok(PairingReport {
        pairs: catalog.generators.len(),
        involutive,
        sets_match,
        weights_opposite,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Claim {
    /// Every commutator vanishes.
    Zero,
    /// Every commutator lies in the linear span of the listed sets.
    Span(Vec<Set>),
    /// Every commutator is a polynomial of degree at most `k` in the
    /// generators of the listed sets.
    Poly(Vec<Set>, u32),
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureClaim {
    pub lhs: Set,
    pub rhs: Set,
    pub claim: Claim,
}

impl fmt::Display for StructureClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[Set]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("⊕");
        match &self.claim {
            Claim::Zero => write!(f, "[{},{}]=0", self.lhs, self.rhs),
            Claim::Span(s) => write!(f, "[{},{}]⊆span({})", self.lhs, self.rhs, join(s)),
            Claim::Poly(s, k) => write!(f, "[{},{}]=P{}({})", self.lhs, self.rhs, k, join(s)),
        }
    }
}

/// The machine-checked part of the commutator tables.
pub fn designated_claims() -> Vec<StructureClaim> {
    use Set::*;
    let c = |lhs, rhs, claim| StructureClaim { lhs, rhs, claim };
    let mut out = Vec::new();
    for (a, b) in [(L, R), (L, F), (L, G), (R, E), (F, G), (R, FrakG), (E, FrakG)] {
        out.push(c(a, b, Claim::Zero));
        out.push(c(a.conjugate(), b.conjugate(), Claim::Zero));
    }
    for (a, b, s) in [(R, F, L), (R, FrakF, E), (F, FrakE, G)] {
        out.push(c(a, b, Claim::Span(vec![s])));
        out.push(c(a.conjugate(), b.conjugate(), Claim::Span(vec![s.conjugate()])));
    }
    for (a, b, s, k) in [
        (L, E, vec![R], 2),
        (R, G, vec![F], 2),
        (F, E, vec![R, B], 2),
        (E, G, vec![F, B], 3),
    ] {
        let twin: Vec<Set> = s.iter().map(|x| x.conjugate()).collect();
        out.push(c(a, b, Claim::Poly(s, k)));
        out.push(c(a.conjugate(), b.conjugate(), Claim::Poly(twin, k)));
    }
    for s in Set::ABELIAN {
        out.push(c(s, B, Claim::Span(vec![s])));
    }
    for (a, k) in [(L, 3), (R, 2), (F, 2), (E, 3), (G, 4)] {
        out.push(c(a, a.conjugate(), Claim::Poly(vec![B], k)));
    }
    out.push(c(B, B, Claim::Span(vec![B])));
    out
}

type OpKey = (MultiIndex, Monomial);

fn flatten(op: &DiffOperator) -> BTreeMap<OpKey, GoldenScalar> {
    let mut v = BTreeMap::new();
    for (b, c) in op.terms() {
        for (m, k) in c.terms() {
            v.insert((*b, *m), k.clone());
        }
    }
    v
}

fn unflatten(v: &BTreeMap<OpKey, GoldenScalar>) -> DiffOperator {
    let mut op = DiffOperator::zero();
    for ((b, m), k) in v {
        op.add_term(*b, &MultiPoly::term(VariableSpace::Tau, *m, k.clone()));
    }
    op
}

/// Ordered words of length `lo..=hi` in `gens`, keeping only those whose
/// total grading is in `targets`.
fn words(gens: &[&Generator], lo: u32, hi: u32, targets: &BTreeSet<[i32; 3]>) -> Vec<(String, DiffOperator)> {
    let grades: Vec<[i32; 3]> = gens
        .iter()
        .map(|g| grading(&g.op).into_iter().next().unwrap_or([0; 3]))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, [i32; 3])> = vec![(Vec::new(), [0; 3])];
    while let Some((w, gr)) = stack.pop() {
        let len = w.len() as u32;
        if len >= lo && targets.contains(&gr) {
            let op = w
                .iter()
                .fold(DiffOperator::identity(), |acc, &i| &acc * &gens[i].op);
            let name = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|&i| gens[i].name).collect::<Vec<_>>().join("·")
            };
            out.push((name, op));
        }
        if len < hi {
            for (i, g) in grades.iter().enumerate() {
                let mut nw = w.clone();
                nw.push(i);
                stack.push((nw, std::array::from_fn(|k| gr[k] + g[k])));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub pairs: usize,
    pub holds: bool,
    /// `[a, b]` and its residual outside the claimed span.
    pub failures: Vec<(String, String)>,
}

fn membership(target: &DiffOperator, basis: &[&Generator], lo: u32, hi: u32) -> Option<DiffOperator> {
    let targets = grading(target);
    let mut ech: SparseEchelon<OpKey> = SparseEchelon::new();
    for (_, op) in words(basis, lo, hi, &targets) {
        ech.insert(&flatten(&op));
    }
    let (res, _) = ech.reduce(&flatten(target));
    (!res.is_empty()).then(|| unflatten(&res))
}

pub fn check_claim(catalog: &GeneratorCatalog, claim: &StructureClaim) -> ClaimResult {
    let lhs = catalog.members(claim.lhs);
    let rhs = catalog.members(claim.rhs);
    let mut failures = Vec::new();
    let mut pairs = 0;
    for a in &lhs {
        for b in &rhs {
            pairs += 1;
            let c = a.op.commutator(&b.op);
            let residual = match &claim.claim {
                Claim::Zero => (!c.is_zero()).then_some(c),
                Claim::Span(sets) | Claim::Poly(sets, _) => {
                    if c.is_zero() {
                        None
                    } else {
                        let basis: Vec<&Generator> = sets.iter().flat_map(|s| catalog.members(*s)).collect();
                        let (lo, hi) = match &claim.claim {
                            Claim::Poly(_, k) => (0, *k),
                            _ => (1, 1),
                        };
                        membership(&c, &basis, lo, hi)
                    }
                }
            };
            if let Some(r) = residual {
                failures.push((format!("[{}, {}]", a.name, b.name), r.to_string()));
            }
        }
    }
    ClaimResult {
        claim: claim.to_string(),
        pairs,
        holds: failures.is_empty(),
        failures,
    }
}

pub fn structure_checks(catalog: &GeneratorCatalog) -> Vec<ClaimResult> {
    designated_claims()
        .iter()
        .map(|c| check_claim(catalog, c))
        .collect()
}

/// Coefficients of `h` in products of lowering generators, with formal ν, ω.
pub fn h_combination() -> Vec<(TauPoly, Vec<&'static str>)> {
    let c = |n, d| tau::c(n, d);
    let lin = |a: i64, b: i64| &tau::k(a) + &tau::nu().scale(&GoldenScalar::from_int(b));
    let om = |k: i64| tau::omega().scale(&GoldenScalar::from_int(k));
    vec![
        (c(4, 1), vec!["T1(1)", "T0(1)"]),
        (c(24, 1), vec!["T2(2)", "T0(1)"]),
        (c(40, 1), vec!["T3(3)", "T0(1)"]),
        (c(-48, 5), vec!["T2(2)", "T11(2)"]),
        (c(45, 2), vec!["T3(22)"]),
        (c(32, 15), vec!["T12(3)", "T2(2)"]),
        (c(-48, 1), vec!["T3(3)", "T11(2)"]),
        (c(-64, 3), vec!["T3(3)", "T12(3)"]),
        (c(128, 45), vec!["T222(33)"]),
        (lin(6, 60), vec!["T0(1)"]),
        (om(-4), vec!["T1(1)"]),
        (&c(-48, 5) * &lin(1, 5), vec!["T11(2)"]),
        (om(-12), vec!["T2(2)"]),
        (&c(-64, 15) * &lin(2, 5), vec!["T12(3)"]),
        (om(-20), vec!["T3(3)"]),
    ]
}

pub fn h_from_generators(catalog: &GeneratorCatalog) -> Result<DiffOperator> {
    let mut out = DiffOperator::zero();
    for (coef, word) in h_combination() {
        let mut op = DiffOperator::identity();
        for name in word {
            op = &op * catalog.op(name)?;
        }
        out = &out + &op.mul_poly(&coef);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub formal: bool,
    pub samples: usize,
    pub second_order_matches: bool,
}

/// The generator combination equals `h` identically in ν, ω and at each
/// sample; its second-order part alone reproduces the metric.
pub fn h_decomposition_check(samples: &[(Rational, Rational)]) -> Result<DecompositionReport> {
    let catalog = GeneratorCatalog::new(0);
    let combo = h_from_generators(&catalog)?;
    let h = build_h_formal()?;
    let residual = &combo - &h;
    if !residual.is_zero() {
        return Err(Error::DecompositionMismatch(residual.to_string()));
    }
    for (nu, om) in samples {
        let r = &combo.with_params(nu, om) - &h.with_params(nu, om);
        if !r.is_zero() {
            return Err(Error::DecompositionMismatch(r.to_string()));
        }
    }
    let second = |op: &DiffOperator| {
        DiffOperator::from_terms(
            op.terms()
                .iter()
                .filter(|(b, _)| b.iter().sum::<u16>() == 2)
                .map(|(b, c)| (*b, c.clone())),
        )
    };
    Ok(DecompositionReport {
        formal: true,
        samples: samples.len(),
        second_order_matches: second(&combo) == second(&h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts() {
        let c = GeneratorCatalog::new(3);
        assert_eq!(c.generators.len(), 30);
        assert_eq!(c.count(GeneratorClass::Lowering), 22);
        assert_eq!(c.count(GeneratorClass::Raising), 8);
    }

    #[test]
    fn direct_actions() {
        let c = GeneratorCatalog::new(2);
        let t = c.op("T2(11)").unwrap();
        assert_eq!(t.apply(&tau::t(0).pow(2)), tau::t(1).scale(&GoldenScalar::from_int(2)));
        let j2 = c.op("J2+").unwrap();
        assert_eq!(j2.apply(&tau::k(1)), tau::t(1).scale(&GoldenScalar::from_int(2)));
        let j1 = GeneratorCatalog::new(5);
        let top = &tau::t(1) * &tau::t(2);
        assert!(j1.op("J1+").unwrap().apply(&top).is_zero());
    }
}
