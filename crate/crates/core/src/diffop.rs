//! Differential operators with τ-polynomial coefficients, flag spaces of
//! weighted-degree-bounded polynomials, and exact spectra on them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::TauPoly;
use crate::linalg::{split_by_candidates, Matrix, UniPoly};
use crate::poly::{Monomial, MultiPoly, VariableSpace};
use crate::scalar::{rat, GoldenScalar, Rational};

/// Derivative orders `(β₁, β₂, β₃)`.
pub type MultiIndex = [u16; 3];

fn binomial(n: u16, k: u16) -> i64 {
    (0..k as i64).fold(1, |acc, i| acc * (n as i64 - i) / (i + 1))
}

/// `Σ_β c_β(τ) ∂^β`, coefficients to the left.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOperator {
    terms: BTreeMap<MultiIndex, TauPoly>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::multiplication(MultiPoly::one(VariableSpace::Tau))
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: TauPoly) -> Self {
        Self::term([0, 0, 0], p)
    }

    pub fn scalar(c: GoldenScalar) -> Self {
        Self::multiplication(MultiPoly::constant(VariableSpace::Tau, c))
    }

    /// `∂/∂τ_i`.
    pub fn partial(i: usize) -> Self {
        let mut b = [0; 3];
        b[i] = 1;
        Self::term(b, MultiPoly::one(VariableSpace::Tau))
    }

    pub fn term(beta: MultiIndex, c: TauPoly) -> Self {
        let mut op = Self::zero();
        op.add_term(beta, &c);
        op
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, TauPoly)>>(terms: I) -> Self {
        let mut op = Self::zero();
        for (b, c) in terms {
            op.add_term(b, &c);
        }
        op
    }

    pub fn add_term(&mut self, beta: MultiIndex, c: &TauPoly) {
        assert_eq!(c.space(), VariableSpace::Tau, "operator coefficients live in tau-space");
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(beta)
            .or_insert_with(|| MultiPoly::zero(VariableSpace::Tau));
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&beta);
        }
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, TauPoly> {
        &self.terms
    }

    pub fn coeff(&self, beta: &MultiIndex) -> TauPoly {
        self.terms
            .get(beta)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(VariableSpace::Tau))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .map(|b| b.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &GoldenScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, p)| (*b, p.scale(c))))
    }

    /// Left multiplication by a polynomial.
    pub fn mul_poly(&self, p: &TauPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, c)| (*b, c * p)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&TauPoly) -> TauPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    pub fn with_params(&self, nu: &Rational, omega: &Rational) -> Self {
        self.map_coeffs(|c| c.with_params(nu, omega))
    }

    pub fn is_param_free(&self) -> bool {
        self.terms.values().all(MultiPoly::is_param_free)
    }

    pub fn apply(&self, p: &TauPoly) -> TauPoly {
        let mut out = MultiPoly::zero(VariableSpace::Tau);
        for (b, c) in &self.terms {
            let d = derive(p, b);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    /// `self ∘ other`, normal ordered with Leibniz's rule.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                for g0 in 0..=a[0] {
                    for g1 in 0..=a[1] {
                        for g2 in 0..=a[2] {
                            let g = [g0, g1, g2];
                            let dd = derive(d, &g);
                            if dd.is_zero() {
                                continue;
                            }
                            let k = binomial(a[0], g0) * binomial(a[1], g1) * binomial(a[2], g2);
                            let idx = [a[0] - g0 + b[0], a[1] - g1 + b[1], a[2] - g2 + b[2]];
                            out.add_term(idx, &(c * &dd).scale(&GoldenScalar::from_int(k)));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &DiffOperator) -> DiffOperator {
        &self.compose(other) - &other.compose(self)
    }

    pub fn pow(&self, e: u32) -> DiffOperator {
        (0..e).fold(DiffOperator::identity(), |acc, _| acc.compose(self))
    }

    /// `Σ αᵢ(mᵢ − βᵢ)` over every coefficient monomial `m` and index `β`.
    pub fn weight_shifts(&self, alpha: &WeightVector) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for (b, c) in &self.terms {
            for (m, _) in c.terms() {
                out.insert(term_shift(alpha, m, b));
            }
        }
        out
    }

    /// The part of the operator with weight shift exactly `s`.
    pub fn weight_component(&self, alpha: &WeightVector, s: i64) -> DiffOperator {
        let mut out = DiffOperator::zero();
        for (b, c) in &self.terms {
            for (m, k) in c.terms() {
                if term_shift(alpha, m, b) == s {
                    out.add_term(*b, &MultiPoly::term(VariableSpace::Tau, *m, k.clone()));
                }
            }
        }
        out
    }
}

fn term_shift(alpha: &WeightVector, m: &Monomial, b: &MultiIndex) -> i64 {
    (0..3)
        .map(|i| alpha.0[i] as i64 * (m.exp(i) as i64 - b[i] as i64))
        .sum()
}

/// `∂^β p`.
pub fn derive(p: &TauPoly, beta: &MultiIndex) -> TauPoly {
    let mut d = p.clone();
    for (i, &k) in beta.iter().enumerate() {
        if k > 0 {
            d = d.derivative_n(i, k);
            if d.is_zero() {
                break;
            }
        }
    }
    d
}

impl Add for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c);
        }
        out
    }
}

impl Sub for &DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self + &-rhs
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        self.scale(&GoldenScalar::from_int(-1))
    }
}

impl Mul for &DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs)
    }
}

impl Serialize for DiffOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(b, c)| {
                let mut s = format!("[{c}]");
                for (i, &k) in b.iter().enumerate() {
                    if k > 0 {
                        s.push_str(&format!("*d{}^{}", i + 1, k));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Positive integer weights `(α₁, α₂, α₃)` defining a weighted degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector(pub [u32; 3]);

impl WeightVector {
    pub const MINIMAL: WeightVector = WeightVector([1, 2, 3]);
    pub const INTEGRAL: WeightVector = WeightVector([1, 3, 5]);

    pub fn new(a: [u32; 3]) -> Result<Self> {
        if a.contains(&0) {
            return Err(Error::Dimension("weights must be positive".into()));
        }
        Ok(Self(a))
    }

    pub fn weight(&self, e: &MultiIndex) -> u32 {
        (0..3).map(|i| self.0[i] * e[i] as u32).sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// `P_n^(α) = span{τ^p : α·p ≤ n}`, basis ordered by weight then exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSpace {
    pub alpha: WeightVector,
    pub n: u32,
    basis: Vec<MultiIndex>,
    index: BTreeMap<MultiIndex, usize>,
}

impl FlagSpace {
    pub fn new(alpha: WeightVector, n: u32) -> Self {
        let mut basis = Vec::new();
        let [a1, a2, a3] = alpha.0;
        for p3 in 0..=n / a3 {
            for p2 in 0..=(n - a3 * p3) / a2 {
                for p1 in 0..=(n - a3 * p3 - a2 * p2) / a1 {
                    basis.push([p1 as u16, p2 as u16, p3 as u16]);
                }
            }
        }
        basis.sort_by_key(|e| (alpha.weight(e), *e));
        let index = basis.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        Self {
            alpha,
            n,
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn index_of(&self, e: &MultiIndex) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn monomial(&self, i: usize) -> TauPoly {
        let e = self.basis[i];
        MultiPoly::term(
            VariableSpace::Tau,
            Monomial::from_exps(&e),
            GoldenScalar::one(),
        )
    }

    pub fn contains(&self, p: &TauPoly) -> bool {
        p.terms().all(|(m, _)| self.alpha.weight(&tau_exps(m)) <= self.n)
    }

    pub fn to_vector(&self, p: &TauPoly) -> Result<Vec<GoldenScalar>> {
        if !p.is_param_free() {
            return Err(Error::FormalParameters);
        }
        let mut v = vec![GoldenScalar::zero(); self.dim()];
        for (m, c) in p.terms() {
            let i = self.index_of(&tau_exps(m)).ok_or_else(|| Error::NotInvariant {
                monomial: m_string(m),
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &[GoldenScalar]) -> TauPoly {
        MultiPoly::from_terms(
            VariableSpace::Tau,
            v.iter()
                .enumerate()
                .map(|(i, c)| (Monomial::from_exps(&self.basis[i]), c.clone())),
        )
    }
}

pub fn tau_exps(m: &Monomial) -> MultiIndex {
    [m.exp(0), m.exp(1), m.exp(2)]
}

fn m_string(m: &Monomial) -> String {
    MultiPoly::term(VariableSpace::Tau, *m, GoldenScalar::one()).to_string()
}

/// Formal invariance check: every basis image has weight at most `n`.
/// Works with formal parameters in the coefficients.
pub fn preserves_flag(op: &DiffOperator, space: &FlagSpace) -> Result<()> {
    for i in 0..space.dim() {
        let img = op.apply(&space.monomial(i));
        if !space.contains(&img) {
            return Err(Error::NotInvariant {
                monomial: space.monomial(i).to_string(),
            });
        }
    }
    Ok(())
}

/// Matrix of `op` on the basis of `space`; column `j` is the image of the
/// `j`-th basis monomial.
pub fn flag_matrix(op: &DiffOperator, space: &FlagSpace) -> Result<Matrix> {
    if !op.is_param_free() {
        return Err(Error::FormalParameters);
    }
    matrix_of(space, |p| op.apply(p))
}

/// Matrix of an arbitrary linear map on the basis of `space`.
pub fn matrix_of(space: &FlagSpace, apply: impl Fn(&TauPoly) -> TauPoly) -> Result<Matrix> {
    let n = space.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let img = apply(&space.monomial(j));
        for (mono, c) in img.terms() {
            let i = space
                .index_of(&tau_exps(mono))
                .ok_or_else(|| Error::NotInvariant {
                    monomial: space.monomial(j).to_string(),
                })?;
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

/// Scales a nonzero vector so its last nonzero entry (highest basis
/// element) is 1.
pub fn normalize_top(v: &mut [GoldenScalar]) {
    if let Some(top) = v.iter().rev().find(|c| !c.is_zero()).cloned() {
        let inv = top.inv().expect("nonzero");
        for c in v.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigenspace {
    pub value: GoldenScalar,
    pub multiplicity: usize,
    pub vectors: Vec<TauPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralResult {
    pub dim: usize,
    pub charpoly: UniPoly,
    /// Sorted by decreasing eigenvalue.
    pub eigenspaces: Vec<Eigenspace>,
    /// Factor of the characteristic polynomial with no root among the
    /// diagonal candidates (1 when fully split).
    pub unresolved: UniPoly,
}

fn desc(a: &GoldenScalar, b: &GoldenScalar) -> Ordering {
    (b - a).signum()
}

/// Eigenvalue, algebraic multiplicity and a nullspace basis.
type EigenPart = (GoldenScalar, usize, Vec<Vec<GoldenScalar>>);

fn eigen_decompose(m: &Matrix, candidates: &[GoldenScalar]) -> Result<(UniPoly, Vec<EigenPart>, UniPoly)> {
    let cp = m.charpoly()?;
    let (roots, rest) = split_by_candidates(&cp, candidates);
    let mut out = Vec::new();
    for (lam, mult) in roots {
        let mut vecs = m.shifted(&lam).nullspace();
        for v in vecs.iter_mut() {
            normalize_top(v);
        }
        out.push((lam, mult, vecs));
    }
    out.sort_by(|a, b| desc(&a.0, &b.0));
    Ok((cp, out, rest))
}

/// Exact spectrum of `op` on `space`: Berkowitz characteristic polynomial
/// split over the matrix diagonal, eigenvectors from exact nullspaces.
pub fn spectrum(op: &DiffOperator, space: &FlagSpace) -> Result<SpectralResult> {
    let m = flag_matrix(op, space)?;
    let (charpoly, parts, unresolved) = eigen_decompose(&m, &m.diagonal())?;
    Ok(SpectralResult {
        dim: space.dim(),
        charpoly,
        eigenspaces: parts
            .into_iter()
            .map(|(value, multiplicity, vs)| Eigenspace {
                value,
                multiplicity,
                vectors: vs.iter().map(|v| space.from_vector(v)).collect(),
            })
            .collect(),
        unresolved,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct JointState {
    pub h_value: GoldenScalar,
    pub f_value: GoldenScalar,
    pub vector: TauPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct JointBasis {
    pub states: Vec<JointState>,
    /// h-eigenvalues whose eigenspace the partner operator did not fully
    /// split, with the unresolved factor.
    pub unsplit: Vec<(GoldenScalar, UniPoly)>,
}

/// Simultaneous eigenvectors of commuting `h`, `f` on `space`: exact
/// h-eigenspaces, with `f` diagonalized inside each.
pub fn joint_eigenbasis(h: &DiffOperator, f: &DiffOperator, space: &FlagSpace) -> Result<JointBasis> {
    let hm = flag_matrix(h, space)?;
    let fm = flag_matrix(f, space)?;
    let (_, hparts, hrest) = eigen_decompose(&hm, &hm.diagonal())?;
    let mut states = Vec::new();
    let mut unsplit = Vec::new();
    if hrest.degree() != Some(0) {
        unsplit.push((GoldenScalar::zero(), hrest));
    }
    let fdiag = fm.diagonal();
    for (lam, _, basis) in hparts {
        let k = basis.len();
        // columns of V are the eigenvectors; solve V·c = f·v_j
        let mut vmat = Matrix::zeros(space.dim(), k);
        for (j, v) in basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                vmat.set(i, j, x.clone());
            }
        }
        let mut block = Matrix::zeros(k, k);
        for (j, v) in basis.iter().enumerate() {
            let fv = fm.mul_vec(v);
            let c = vmat.solve(&fv)?.ok_or_else(|| {
                Error::NonZeroCommutator(format!("f leaves the h-eigenspace at {lam}"))
            })?;
            for (i, x) in c.into_iter().enumerate() {
                block.set(i, j, x);
            }
        }
        let mut cands = fdiag.clone();
        cands.extend(block.diagonal());
        let (_, fparts, frest) = eigen_decompose(&block, &cands)?;
        if frest.degree() != Some(0) {
            unsplit.push((lam.clone(), frest));
        }
        for (mu, _, combos) in fparts {
            for c in combos {
                let mut v = vmat.mul_vec(&c);
                normalize_top(&mut v);
                states.push(JointState {
                    h_value: lam.clone(),
                    f_value: mu.clone(),
                    vector: space.from_vector(&v),
                });
            }
        }
    }
    Ok(JointBasis { states, unsplit })
}

/// Parameters of the triangular substitution
/// `τ₁ → τ₁ + a`, `τ₂ → τ₂ + b₁τ₁² + b₂τ₁ + b₃`,
/// `τ₃ → τ₃ + c₁τ₁τ₂ + c₂τ₁³ + c₃τ₂ + c₄τ₁² + c₅τ₁ + c₆`.
#[derive(Clone, Debug, Default)]
pub struct WptParams {
    pub a: Rational,
    pub b: [Rational; 3],
    pub c: [Rational; 6],
}

impl WptParams {
    pub fn images(&self) -> BTreeMap<usize, TauPoly> {
        let k = |r: &Rational| GoldenScalar::from_rational(r.clone());
        let t = |a: u16, b: u16| MultiPoly::term(VariableSpace::Tau, Monomial::from_exps(&[a, b, 0]), GoldenScalar::one());
        let mono = |c: &Rational, a: u16, b: u16| t(a, b).scale(&k(c));
        let v = |i| MultiPoly::var(VariableSpace::Tau, i);
        let mut m = BTreeMap::new();
        m.insert(0, &v(0) + &mono(&self.a, 0, 0));
        m.insert(
            1,
            &(&(&v(1) + &mono(&self.b[0], 2, 0)) + &mono(&self.b[1], 1, 0)) + &mono(&self.b[2], 0, 0),
        );
        let c = &self.c;
        let mut t3 = v(2);
        for (coef, e) in c.iter().zip([(1, 1), (3, 0), (0, 1), (2, 0), (1, 0), (0, 0)]) {
            t3 = &t3 + &mono(coef, e.0, e.1);
        }
        m.insert(2, t3);
        m.insert(3, v(3));
        m.insert(4, v(4));
        m
    }
}

/// Whether the substitution maps every basis monomial of `P_n^(1,2,3)` back
/// into the space.
pub fn wpt_check(params: &WptParams, n: u32) -> Result<bool> {
    let space = FlagSpace::new(WeightVector::MINIMAL, n);
    let images = params.images();
    for i in 0..space.dim() {
        let img = space.monomial(i).substitute(&images, VariableSpace::Tau)?;
        if !space.contains(&img) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `cos θ = Σα / (√3·|α|)`, the angle between the flag's normal and the
/// diagonal direction.
#[derive(Clone, Debug, Serialize)]
pub struct FlagAngle {
    pub alpha: WeightVector,
    /// Rendered as `p/√q`.
    pub cos_surd: String,
    #[serde(serialize_with = "crate::scalar::ser_rational")]
    pub cos_squared: Rational,
    pub cos: f64,
    pub theta: f64,
}

pub fn flag_angle(alpha: WeightVector) -> FlagAngle {
    let s: i64 = alpha.0.iter().map(|&a| a as i64).sum();
    let q: i64 = 3 * alpha.0.iter().map(|&a| (a as i64).pow(2)).sum::<i64>();
    let cos_squared = rat(s * s, q);
    let cos = s as f64 / (q as f64).sqrt();
    FlagAngle {
        alpha,
        cos_surd: format!("{s}/√{q}"),
        cos_squared,
        cos,
        theta: cos.min(1.0).acos(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tau;

    #[test]
    fn canonical_pair() {
        let d1 = DiffOperator::partial(0);
        let t1 = DiffOperator::multiplication(tau::t(0));
        assert_eq!(d1.commutator(&t1), DiffOperator::identity());
        assert_eq!(d1.apply(&tau::t(0).pow(2)), tau::t(0).scale(&GoldenScalar::from_int(2)));
    }

    #[test]
    fn second_derivative_composition() {
        // ∂ ∘ (τ ∂) = ∂ + τ ∂²
        let d = DiffOperator::partial(0);
        let e = DiffOperator::term([1, 0, 0], tau::t(0));
        let expected = &d + &DiffOperator::term([2, 0, 0], tau::t(0));
        assert_eq!(d.compose(&e), expected);
    }

    #[test]
    fn flag_dimensions() {
        assert_eq!(FlagSpace::new(WeightVector::MINIMAL, 1).dim(), 2);
        assert_eq!(FlagSpace::new(WeightVector::MINIMAL, 8).dim(), 41);
        assert_eq!(FlagSpace::new(WeightVector::MINIMAL, 6).dim(), 23);
    }

    #[test]
    fn angles() {
        let a = flag_angle(WeightVector::MINIMAL);
        assert_eq!(a.cos_surd, "6/√42");
        assert_eq!(a.cos_squared, rat(6, 7));
        assert_eq!(flag_angle(WeightVector([1, 1, 1])).cos_squared, rat(1, 1));
    }
}
