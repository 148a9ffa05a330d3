//! Canonical discretization on a uniform lattice in τ-space.
//!
//! `τᵢ ↦ Xᵢ = τᵢ e^{−δᵢ∂ᵢ}` and `∂ᵢ ↦ Dᵢ = (e^{δᵢ∂ᵢ} − 1)/δᵢ` keep the
//! canonical commutation relations, so every operator with polynomial
//! coefficients has a finite-difference counterpart acting on
//! quasi-monomials exactly as the original acts on monomials.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::diffop::{matrix_of, spectrum, DiffOperator, FlagSpace, WeightVector};
use crate::error::{Error, Result};
use crate::gauge::build_h_formal;
use crate::integral::build_f_formal;
use crate::invariants::TauPoly;
use crate::linalg::UniPoly;
use crate::poly::{tau, Monomial, MultiPoly, VariableSpace};
use crate::scalar::{format_rational, GoldenScalar, Rational};

pub type Shift = [i32; 3];

/// Lattice spacings `δ₁, δ₂, δ₃ > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spacings([Rational; 3]);

impl Spacings {
    pub fn new(d: [Rational; 3]) -> Result<Self> {
        if d.iter().any(|x| !x.is_positive()) {
            return Err(Error::CheckFailed("spacings must be positive".into()));
        }
        Ok(Self(d))
    }

    pub fn unit() -> Self {
        Self(std::array::from_fn(|_| Rational::one()))
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn values(&self) -> &[Rational; 3] {
        &self.0
    }

    pub fn scaled(&self, t: &Rational) -> Result<Self> {
        Self::new(std::array::from_fn(|i| &self.0[i] * t))
    }

    fn g(&self, i: usize) -> GoldenScalar {
        GoldenScalar::from_rational(self.0[i].clone())
    }
}

impl fmt::Display for Spacings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Spacings {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        parts.serialize(s)
    }
}

/// `p(τ + k·δ)`; formal parameters are left alone.
fn translate(p: &TauPoly, k: &Shift, sp: &Spacings) -> TauPoly {
    if *k == [0, 0, 0] || p.is_zero() {
        return p.clone();
    }
    let mut images = BTreeMap::new();
    for i in 0..3 {
        let off = &GoldenScalar::from_int(k[i] as i64) * &sp.g(i);
        images.insert(i, &tau::t(i) + &MultiPoly::constant(VariableSpace::Tau, off));
    }
    images.insert(3, tau::nu());
    images.insert(4, tau::omega());
    p.substitute(&images, VariableSpace::Tau)
        .expect("tau images cover every variable")
}

/// `Σ c_k(τ) e^{k·δ∂}`: coefficients on the left, lattice shifts on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftOperator {
    terms: BTreeMap<Shift, TauPoly>,
    spacings: Spacings,
}

impl ShiftOperator {
    pub fn zero(spacings: Spacings) -> Self {
        Self {
            terms: BTreeMap::new(),
            spacings,
        }
    }

    pub fn identity(spacings: Spacings) -> Self {
        Self::term(spacings, [0, 0, 0], tau::k(1))
    }

    pub fn shift(spacings: Spacings, k: Shift) -> Self {
        Self::term(spacings, k, tau::k(1))
    }

    pub fn term(spacings: Spacings, k: Shift, c: TauPoly) -> Self {
        let mut op = Self::zero(spacings);
        op.add_term(k, &c);
        op
    }

    pub fn multiplication(spacings: Spacings, c: TauPoly) -> Self {
        Self::term(spacings, [0, 0, 0], c)
    }

    /// `Dᵢ = (e^{δᵢ∂ᵢ} − 1)/δᵢ`, the forward difference.
    pub fn difference(spacings: Spacings, i: usize) -> Self {
        let inv = spacings.g(i).inv().expect("positive spacing");
        let mut k = [0; 3];
        k[i] = 1;
        let mut op = Self::zero(spacings);
        op.add_term(k, &MultiPoly::constant(VariableSpace::Tau, inv.clone()));
        op.add_term([0, 0, 0], &MultiPoly::constant(VariableSpace::Tau, -inv));
        op
    }

    /// `Xᵢ = τᵢ e^{−δᵢ∂ᵢ}`.
    pub fn position(spacings: Spacings, i: usize) -> Self {
        let mut k = [0; 3];
        k[i] = -1;
        Self::term(spacings, k, tau::t(i))
    }

    pub fn add_term(&mut self, k: Shift, c: &TauPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn spacings(&self) -> &Spacings {
        &self.spacings
    }

    pub fn terms(&self) -> &BTreeMap<Shift, TauPoly> {
        &self.terms
    }

    pub fn coeff(&self, k: &Shift) -> TauPoly {
        self.terms
            .get(k)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(VariableSpace::Tau))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of lattice points the operator connects.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct shift values along each axis.
    pub fn footprint(&self) -> [usize; 3] {
        std::array::from_fn(|i| {
            self.terms
                .keys()
                .map(|k| k[i])
                .collect::<BTreeSet<_>>()
                .len()
        })
    }

    pub fn with_params(&self, nu: &Rational, omega: &Rational) -> Self {
        let mut out = Self::zero(self.spacings.clone());
        for (k, c) in &self.terms {
            out.add_term(*k, &c.with_params(nu, omega));
        }
        out
    }

    pub fn scale(&self, s: &GoldenScalar) -> Self {
        let mut out = Self::zero(self.spacings.clone());
        for (k, c) in &self.terms {
            out.add_term(*k, &c.scale(s));
        }
        out
    }

    pub fn apply(&self, p: &TauPoly) -> TauPoly {
        self.terms
            .iter()
            .fold(MultiPoly::zero(VariableSpace::Tau), |acc, (k, c)| {
                &acc + &(c * &translate(p, k, &self.spacings))
            })
    }

    /// Normal-ordered product via `e^{a·δ∂}∘c(τ) = c(τ+aδ)∘e^{a·δ∂}`.
    pub fn compose(&self, other: &ShiftOperator) -> Result<ShiftOperator> {
        if self.spacings != other.spacings {
            return Err(Error::Dimension("composing operators on different lattices".into()));
        }
        let mut out = Self::zero(self.spacings.clone());
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let k = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                out.add_term(k, &(c * &translate(d, a, &self.spacings)));
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &ShiftOperator) -> Result<ShiftOperator> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }
}

impl Add for &ShiftOperator {
    type Output = ShiftOperator;
    fn add(self, rhs: &ShiftOperator) -> ShiftOperator {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &ShiftOperator {
    type Output = ShiftOperator;
    fn sub(self, rhs: &ShiftOperator) -> ShiftOperator {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl fmt::Display for ShiftOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("[{}]*S({},{},{})", c, k[0], k[1], k[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for ShiftOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Rec<'a> {
            shift: Shift,
            coefficient: &'a TauPoly,
        }
        let recs: Vec<Rec> = self
            .terms
            .iter()
            .map(|(k, c)| Rec {
                shift: *k,
                coefficient: c,
            })
            .collect();
        recs.serialize(s)
    }
}

/// `τ^(n) = τ(τ−δ)⋯(τ−(n−1)δ)`, the image of `τⁿ` under `τ ↦ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiMonomial {
    pub var: usize,
    pub degree: u16,
    pub spacing: Rational,
}

impl QuasiMonomial {
    pub fn to_poly(&self) -> TauPoly {
        falling(self.var, self.degree, &GoldenScalar::from_rational(self.spacing.clone()))
    }
}

fn falling(i: usize, n: u16, d: &GoldenScalar) -> TauPoly {
    (0..n).fold(tau::k(1), |acc, j| {
        let off = MultiPoly::constant(VariableSpace::Tau, &GoldenScalar::from_int(j as i64) * d);
        &acc * &(&tau::t(i) - &off)
    })
}

fn tau_degree(m: &Monomial) -> u32 {
    (0..3).map(|i| m.exp(i) as u32).sum()
}

/// `τ₁^k τ₂^l τ₃^m ↦ τ₁^(k) τ₂^(l) τ₃^(m)`, extended linearly.
pub fn to_quasi_basis(p: &TauPoly, sp: &Spacings) -> TauPoly {
    let mut out = MultiPoly::zero(VariableSpace::Tau);
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut img = MultiPoly::term(VariableSpace::Tau, Monomial::one(), c.clone());
        for i in 0..3 {
            rest.0[i] = 0;
            img = &img * &falling(i, m.exp(i), &sp.g(i));
        }
        out = &out + &img.mul_monomial(&rest, &GoldenScalar::one());
    }
    out
}

/// Inverse of [`to_quasi_basis`], peeling off top τ-degree terms.
pub fn from_quasi_basis(q: &TauPoly, sp: &Spacings) -> TauPoly {
    let mut out = MultiPoly::zero(VariableSpace::Tau);
    let mut rem = q.clone();
    while let Some(top) = rem.terms().map(|(m, _)| tau_degree(m)).max() {
        let head = MultiPoly::from_terms(
            VariableSpace::Tau,
            rem.terms()
                .filter(|(m, _)| tau_degree(m) == top)
                .map(|(m, c)| (*m, c.clone())),
        );
        rem = &rem - &to_quasi_basis(&head, sp);
        out = &out + &head;
    }
    out
}

/// Substitutes `τ ↦ X`, `∂ ↦ D` with X-factors left of D-factors and
/// normal-orders the result.
pub fn discretize(op: &DiffOperator, sp: &Spacings) -> ShiftOperator {
    let inv: [GoldenScalar; 3] = std::array::from_fn(|i| sp.g(i).inv().expect("positive spacing"));
    // (e^{δ∂} − 1)^β / δ^β expanded per axis: shift j with binomial weight
    let diff_terms = |i: usize, b: u16| -> Vec<(i32, GoldenScalar)> {
        let scale = inv[i].pow(b as u32);
        let mut binom = GoldenScalar::one();
        let mut out = Vec::new();
        for j in 0..=b {
            let sign = if (b - j).is_multiple_of(2) { 1 } else { -1 };
            out.push((j as i32, &(&binom * &scale) * &GoldenScalar::from_int(sign)));
            binom = &(&binom * &GoldenScalar::from_int((b - j) as i64)) / &GoldenScalar::from_int(j as i64 + 1);
        }
        out
    };
    let mut out = ShiftOperator::zero(sp.clone());
    for (beta, c) in op.terms() {
        let axes: Vec<Vec<(i32, GoldenScalar)>> = (0..3).map(|i| diff_terms(i, beta[i])).collect();
        for (m, a) in c.terms() {
            let mut rest = *m;
            let mut base = MultiPoly::term(VariableSpace::Tau, Monomial::one(), a.clone());
            for i in 0..3 {
                rest.0[i] = 0;
                base = &base * &falling(i, m.exp(i), &sp.g(i));
            }
            let base = base.mul_monomial(&rest, &GoldenScalar::one());
            for (j0, w0) in &axes[0] {
                for (j1, w1) in &axes[1] {
                    for (j2, w2) in &axes[2] {
                        let k = [
                            j0 - m.exp(0) as i32,
                            j1 - m.exp(1) as i32,
                            j2 - m.exp(2) as i32,
                        ];
                        out.add_term(k, &base.scale(&(&(w0 * w1) * w2)));
                    }
                }
            }
        }
    }
    out
}

/// `ĥ` with formal ν, ω.
pub fn discrete_h(sp: &Spacings) -> Result<ShiftOperator> {
    Ok(discretize(&build_h_formal()?, sp))
}

/// `f̂` with formal ν.
pub fn discrete_f(sp: &Spacings) -> ShiftOperator {
    discretize(&build_f_formal(), sp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Table {
    H,
    F,
}

struct Builder {
    d: [TauPoly; 3],
    i: [TauPoly; 3],
}

impl Builder {
    fn new(sp: &Spacings) -> Self {
        let c = |x: GoldenScalar| MultiPoly::constant(VariableSpace::Tau, x);
        Self {
            d: std::array::from_fn(|k| c(sp.g(k))),
            i: std::array::from_fn(|k| c(sp.g(k).inv().expect("positive spacing"))),
        }
    }

    /// `τᵢ(τᵢ−δᵢ)⋯`, `n` factors.
    fn ff(&self, k: usize, n: usize) -> TauPoly {
        (0..n).fold(tau::k(1), |acc, j| {
            &acc * &(&tau::t(k) - &self.d[k].scale(&GoldenScalar::from_int(j as i64)))
        })
    }

    /// `τₖ/δₖ`.
    fn r(&self, k: usize) -> TauPoly {
        &tau::t(k) * &self.i[k]
    }
}

fn q(n: i64, d: i64) -> TauPoly {
    tau::c(n, d)
}

fn lin(a: i64, b: i64) -> TauPoly {
    &tau::k(a) + &tau::nu().scale(&GoldenScalar::from_int(b))
}

fn sum(parts: &[TauPoly]) -> TauPoly {
    parts
        .iter()
        .fold(MultiPoly::zero(VariableSpace::Tau), |acc, p| &acc + p)
}

fn prod(parts: &[&TauPoly]) -> TauPoly {
    parts.iter().fold(tau::k(1), |acc, p| &acc * *p)
}

/// The published coefficient table for `ĥ` (`which = H`, 22 entries) or
/// `f̂` (`which = F`, 19 entries) at the given spacings.
pub fn reference_table(which: Table, sp: &Spacings) -> BTreeMap<Shift, TauPoly> {
    let b = Builder::new(sp);
    let (t1, t2, t3) = (tau::t(0), tau::t(1), tau::t(2));
    let [i1, i2, i3] = &b.i;
    let d1 = &b.d[0];
    let om = tau::omega();
    let two_d1w = &tau::k(2) + &(d1 * &om);
    let one_d1w = &tau::k(1) + &(d1 * &om);
    let e: Vec<(Shift, TauPoly)> = match which {
        Table::H => vec![
            (
                [0, 0, 0],
                &prod(&[&q(-4, 1), i1, &two_d1w, &sum(&[b.r(0), b.r(1).scale(&3.into()), b.r(2).scale(&5.into())])])
                    - &prod(&[&q(6, 1), i1, &lin(1, 10)]),
            ),
            (
                [1, 0, 0],
                prod(&[
                    &q(2, 1),
                    i1,
                    &sum(&[b.r(0).scale(&2.into()), b.r(1).scale(&12.into()), b.r(2).scale(&20.into()), lin(3, 30)]),
                ]),
            ),
            ([-1, 0, 0], prod(&[&q(4, 1), i1, i1, &one_d1w, &t1])),
            (
                [-2, 0, 0],
                prod(&[&q(48, 5), i2, &b.ff(0, 2), &sum(&[b.r(1).scale(&2.into()), b.r(2).scale(&5.into()), lin(1, 5)])]),
            ),
            ([0, -1, 0], prod(&[&q(12, 1), i1, i2, &two_d1w, &t2])),
            (
                [0, 0, -1],
                prod(&[&q(5, 2), &(&prod(&[&q(8, 1), i1, i3, &two_d1w]) + &prod(&[&q(9, 1), i2, i2])), &t3]),
            ),
            ([0, -3, 0], prod(&[&q(128, 45), i3, i3, &b.ff(1, 3)])),
            ([1, -1, 0], prod(&[&q(-24, 1), &t2, i1, i2])),
            ([1, 0, -1], prod(&[&q(-40, 1), &t3, i1, i3])),
            (
                [-1, -1, 0],
                prod(&[&q(-32, 15), i3, &t1, &t2, &sum(&[b.r(1), b.r(2).scale(&(-20).into()), lin(-5, -10)])]),
            ),
            ([-1, -2, 0], prod(&[&q(32, 15), i2, i3, &t1, &b.ff(1, 2)])),
            (
                [-1, -1, 1],
                prod(&[&q(32, 15), i3, &t1, &t2, &sum(&[b.r(1), b.r(2).scale(&(-10).into()), lin(-5, -10)])]),
            ),
            ([-1, -1, -1], prod(&[&q(-64, 3), i3, i3, &t1, &t2, &t3])),
            ([-1, -2, 1], prod(&[&q(-32, 15), i2, i3, &t1, &b.ff(1, 2)])),
            (
                [-2, 1, 0],
                prod(&[&q(-48, 5), i2, &b.ff(0, 2), &sum(&[b.r(1), b.r(2).scale(&5.into()), lin(1, 5)])]),
            ),
            ([-2, -1, 0], prod(&[&q(-48, 5), i2, i2, &t2, &b.ff(0, 2)])),
            ([-2, 0, -1], prod(&[&q(-48, 1), i2, i3, &t3, &b.ff(0, 2)])),
            ([-2, 1, -1], prod(&[&q(48, 1), i2, i3, &t3, &b.ff(0, 2)])),
            ([0, 1, -1], prod(&[&q(-45, 1), &t3, i2, i2])),
            ([0, 2, -1], prod(&[&q(45, 2), &t3, i2, i2])),
            ([0, -3, 1], prod(&[&q(256, 45), i3, i3, &b.ff(1, 3)])),
            ([0, -3, 2], prod(&[&q(128, 45), i3, i3, &b.ff(1, 3)])),
        ],
        Table::F => {
            let f12 = &(&t1 - d1) * &(&t1 - &d1.scale(&2.into()));
            vec![
                (
                    [0, -1, 0],
                    prod(&[&q(-3, 1), &b.r(1), &sum(&[b.r(2).scale(&10.into()), b.r(1).scale(&12.into()), lin(5, 30)])]),
                ),
                ([0, -2, 0], prod(&[&q(18, 1), i2, i2, &b.ff(1, 2)])),
                (
                    [0, 0, -1],
                    prod(&[&q(-5, 1), &b.r(2), &sum(&[b.r(1).scale(&6.into()), b.r(2).scale(&20.into()), lin(-9, 30)])]),
                ),
                ([0, 0, -2], prod(&[&q(50, 1), i3, i3, &b.ff(2, 2)])),
                ([-1, 1, 0], prod(&[&q(12, 1), &t3, i2, i3, &b.ff(0, 3)])),
                (
                    [-1, 1, -1],
                    prod(&[&q(3, 2), &t1, &t3, i2, &(&prod(&[&q(8, 1), i3, &f12]) + &i2.scale(&15.into()))]),
                ),
                ([-1, 2, -1], prod(&[&q(-45, 4), i2, i2, &t1, &t3])),
                (
                    [-1, 0, -1],
                    prod(&[&q(-3, 4), i3, &t1, &t3, &(&i3.scale(&15.into()) - &prod(&[&q(16, 1), i2, &f12]))]),
                ),
                ([-1, -3, 0], prod(&[&q(-64, 45), i3, i3, &t1, &b.ff(1, 3)])),
                ([-1, -3, 1], prod(&[&q(128, 45), i3, i3, &t1, &b.ff(1, 3)])),
                ([-1, -3, 2], prod(&[&q(-64, 45), i3, i3, &t1, &b.ff(1, 3)])),
                (
                    [-2, -1, 0],
                    prod(&[&q(8, 15), i3, &b.ff(0, 2), &t2, &sum(&[b.r(1), b.r(2).scale(&(-40).into()), lin(-9, -20)])]),
                ),
                ([-2, -2, 0], prod(&[&q(-8, 15), i2, i3, &b.ff(0, 2), &b.ff(1, 2)])),
                (
                    [-2, -1, 1],
                    prod(&[&q(-8, 15), i3, &b.ff(0, 2), &t2, &sum(&[b.r(1), b.r(2).scale(&(-20).into()), lin(-9, -20)])]),
                ),
                ([-2, -1, -1], prod(&[&q(32, 3), i3, i3, &b.ff(0, 2), &t2, &t3])),
                ([-2, -2, 1], prod(&[&q(8, 15), i2, i3, &b.ff(0, 2), &b.ff(1, 2)])),
                ([-3, 1, 0], prod(&[&q(24, 5), i2, &b.ff(0, 3), &(&b.r(1) + &lin(1, 5))])),
                ([-3, -1, 0], prod(&[&q(24, 5), i2, i2, &b.ff(0, 3), &t2])),
                ([0, -1, -1], prod(&[&q(30, 1), i2, i3, &t2, &t3])),
            ]
        }
    };
    e.into_iter().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftDiff {
    pub shift: Shift,
    pub derived: TauPoly,
    pub reference: TauPoly,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableComparison {
    pub table: Table,
    pub spacings: Spacings,
    pub derived_points: usize,
    pub reference_points: usize,
    pub footprint: [usize; 3],
    pub entries: Vec<ShiftDiff>,
    pub mismatches: usize,
}

/// Structural claims for the derived operators: point count (ĥ only) and
/// per-axis footprint.
pub fn expected_structure(which: Table) -> (Option<usize>, [usize; 3]) {
    match which {
        Table::H => (Some(22), [4, 6, 4]),
        Table::F => (None, [4, 6, 5]),
    }
}

/// Compares a derived operator with the published table. Structural
/// disagreement is fatal; per-entry differences are itemized.
pub fn compare_with_table(derived: &ShiftOperator, which: Table) -> Result<TableComparison> {
    let (points, foot) = expected_structure(which);
    if let Some(p) = points {
        if derived.len() != p {
            return Err(Error::StructuralMismatch(format!(
                "{} nonzero shifts, expected {}",
                derived.len(),
                p
            )));
        }
    }
    if derived.footprint() != foot {
        return Err(Error::StructuralMismatch(format!(
            "footprint {:?}, expected {:?}",
            derived.footprint(),
            foot
        )));
    }
    let reference = reference_table(which, derived.spacings());
    let shifts: BTreeSet<Shift> = derived.terms().keys().chain(reference.keys()).copied().collect();
    let entries: Vec<ShiftDiff> = shifts
        .into_iter()
        .map(|k| {
            let d = derived.coeff(&k);
            let p = reference
                .get(&k)
                .cloned()
                .unwrap_or_else(|| MultiPoly::zero(VariableSpace::Tau));
            ShiftDiff {
                shift: k,
                equal: d == p,
                derived: d,
                reference: p,
            }
        })
        .collect();
    Ok(TableComparison {
        table: which,
        spacings: derived.spacings().clone(),
        derived_points: derived.len(),
        reference_points: reference.len(),
        footprint: derived.footprint(),
        mismatches: entries.iter().filter(|e| !e.equal).count(),
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscreteSpectrumReport {
    pub n: u32,
    pub spacings: Spacings,
    pub dim: usize,
    pub charpoly: UniPoly,
    pub transfer_level: u32,
    pub transferred: usize,
}

/// Characteristic polynomials of `h` and `ĥ` on `P_n^(1,2,3)` agree, and
/// eigenfunctions of `h` of weight at most `transfer_level` map to
/// eigenfunctions of `ĥ` under [`to_quasi_basis`].
pub fn discrete_spectrum_check(
    n: u32,
    sp: &Spacings,
    nu: &Rational,
    omega: &Rational,
    transfer_level: u32,
) -> Result<DiscreteSpectrumReport> {
    let h = build_h_formal()?.with_params(nu, omega);
    let hd = discretize(&h, sp);
    let space = FlagSpace::new(WeightVector::MINIMAL, n);
    let cont = matrix_of(&space, |p| h.apply(p))?.charpoly()?;
    let disc = matrix_of(&space, |p| hd.apply(p))?.charpoly()?;
    if cont != disc {
        return Err(Error::SpectrumMismatch(format!("{cont} vs {disc}")));
    }
    let low = FlagSpace::new(WeightVector::MINIMAL, transfer_level);
    let mut transferred = 0;
    for es in spectrum(&h, &low)?.eigenspaces {
        for phi in &es.vectors {
            let q = to_quasi_basis(phi, sp);
            if hd.apply(&q) != q.scale(&es.value) {
                return Err(Error::TransferFailure(format!("{phi} at eigenvalue {}", es.value)));
            }
            transferred += 1;
        }
    }
    Ok(DiscreteSpectrumReport {
        n,
        spacings: sp.clone(),
        dim: space.dim(),
        charpoly: cont,
        transfer_level,
        transferred,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub n: u32,
    pub spacings: Spacings,
    pub checked: usize,
    pub operator_identity: bool,
}

/// `ĥf̂ − f̂ĥ` annihilates `P_n^(1,3,5)` and vanishes as a shift operator.
pub fn discrete_commutation(
    sp: &Spacings,
    nu: &Rational,
    omega: &Rational,
    n: u32,
) -> Result<CommutationReport> {
    let h = discrete_h(sp)?.with_params(nu, omega);
    let f = discrete_f(sp).with_params(nu, omega);
    let space = FlagSpace::new(WeightVector::INTEGRAL, n);
    for i in 0..space.dim() {
        let m = space.monomial(i);
        let c = &h.apply(&f.apply(&m)) - &f.apply(&h.apply(&m));
        if !c.is_zero() {
            return Err(Error::NonZeroCommutator(format!("on {m}: {c}")));
        }
    }
    let c = h.commutator(&f)?;
    if !c.is_zero() {
        return Err(Error::NonZeroCommutator(c.to_string()));
    }
    Ok(CommutationReport {
        n,
        spacings: sp.clone(),
        checked: space.dim(),
        operator_identity: true,
    })
}

/// `[Dᵢ, Xⱼ] = δᵢⱼ`, `[Dᵢ, Dⱼ] = [Xᵢ, Xⱼ] = 0`, each as a shift-operator identity.
pub fn heisenberg_relations(sp: &Spacings) -> Result<()> {
    let d: Vec<ShiftOperator> = (0..3).map(|i| ShiftOperator::difference(sp.clone(), i)).collect();
    let x: Vec<ShiftOperator> = (0..3).map(|i| ShiftOperator::position(sp.clone(), i)).collect();
    let id = ShiftOperator::identity(sp.clone());
    let zero = ShiftOperator::zero(sp.clone());
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { &id } else { &zero };
            if d[i].commutator(&x[j])? != *want {
                return Err(Error::IdentityFailure(format!("[D{}, X{}]", i + 1, j + 1)));
            }
            if !d[i].commutator(&d[j])?.is_zero() || !x[i].commutator(&x[j])?.is_zero() {
                return Err(Error::IdentityFailure(format!("commuting pair ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Lagrange interpolation of `(tⱼ, yⱼ)` evaluated at `x`.
fn interpolate(ts: &[Rational], ys: &[TauPoly], x: &Rational) -> TauPoly {
    let mut out = MultiPoly::zero(VariableSpace::Tau);
    for (j, (tj, yj)) in ts.iter().zip(ys).enumerate() {
        let mut w = Rational::one();
        for (m, tm) in ts.iter().enumerate() {
            if m != j {
                w = w * (x - tm) / (tj - tm);
            }
        }
        out = &out + &yj.scale(&GoldenScalar::from_rational(w));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    /// Largest absolute coefficient of `discretize(op)p − op·p` per scale.
    pub residuals: Vec<f64>,
    pub degree_bound: usize,
}

/// Scales `base` by `1, 1/2, 1/4, …` and checks that the residual is a
/// polynomial in the scale of degree at most `degree_bound` with zero
/// constant term. One extra sample certifies the degree bound.
pub fn continuum_limit(op: &DiffOperator, p: &TauPoly, base: &Spacings, degree_bound: usize) -> Result<LimitReport> {
    let exact = op.apply(p);
    let mut ts = Vec::new();
    let mut ys = Vec::new();
    let mut t = Rational::one();
    for _ in 0..degree_bound + 2 {
        let sp = base.scaled(&t)?;
        ys.push(&discretize(op, &sp).apply(p) - &exact);
        ts.push(t.clone());
        t /= Rational::from_integer(2.into());
    }
    let k = degree_bound + 1;
    if interpolate(&ts[..k], &ys[..k], &ts[k]) != ys[k] {
        return Err(Error::CheckFailed("residual exceeds the degree bound".into()));
    }
    let at_zero = interpolate(&ts[..k], &ys[..k], &Rational::zero());
    if !at_zero.is_zero() {
        return Err(Error::CheckFailed(format!("residual does not vanish at zero spacing: {at_zero}")));
    }
    let residuals = ys
        .iter()
        .map(|y| y.terms().map(|(_, c)| c.to_f64().abs()).fold(0.0, f64::max))
        .collect();
    Ok(LimitReport {
        residuals,
        degree_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn forward_difference_of_square() {
        let sp = Spacings::new([rat(1, 3), rat(1, 1), rat(1, 1)]).unwrap();
        let d = discretize(&DiffOperator::partial(0), &sp);
        let got = d.apply(&tau::t(0).pow(2));
        let want = &tau::t(0).scale(&2.into()) + &tau::c(1, 3);
        assert_eq!(got, want);
    }

    #[test]
    fn powers_of_x_give_quasi_monomials() {
        let sp = Spacings::new([rat(1, 2), rat(2, 1), rat(3, 1)]).unwrap();
        let x = ShiftOperator::position(sp.clone(), 1);
        let mut v = tau::k(1);
        for n in 1..5u16 {
            v = x.apply(&v);
            let qm = QuasiMonomial {
                var: 1,
                degree: n,
                spacing: rat(2, 1),
            };
            assert_eq!(v, qm.to_poly());
        }
    }

    #[test]
    fn quasi_square() {
        let sp = Spacings::new([rat(3, 7), rat(1, 1), rat(1, 1)]).unwrap();
        let got = to_quasi_basis(&tau::t(0).pow(2), &sp);
        assert_eq!(got, &tau::t(0).pow(2) - &tau::t(0).scale(&GoldenScalar::frac(3, 7)));
        assert_eq!(to_quasi_basis(&tau::k(1), &sp), tau::k(1));
    }

    #[test]
    fn rejects_nonpositive_spacing() {
        assert!(Spacings::new([rat(0, 1), rat(1, 1), rat(1, 1)]).is_err());
    }
}
