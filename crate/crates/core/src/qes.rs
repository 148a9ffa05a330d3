//! The τ₁-line: the one-variable restriction of `h`, its Laguerre
//! eigenfunctions, and the sl(2) quasi-exactly-solvable extension.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::gauge::ground_energy;
use crate::linalg::{Matrix, UniPoly};
use crate::scalar::{ser_rational, GoldenScalar, Rational};

/// Laurent polynomial in τ₁.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i32, GoldenScalar>);

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GoldenScalar) -> Self {
        Self::mono(c, 0)
    }

    pub fn mono(c: GoldenScalar, e: i32) -> Self {
        let mut l = Self::zero();
        l.add_term(e, &c);
        l
    }

    pub fn var() -> Self {
        Self::mono(GoldenScalar::one(), 1)
    }

    pub fn add_term(&mut self, e: i32, c: &GoldenScalar) {
        let v = self.0.remove(&e).unwrap_or_else(GoldenScalar::zero) + c;
        if !v.is_zero() {
            self.0.insert(e, v);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i32, GoldenScalar> {
        &self.0
    }

    pub fn coeff(&self, e: i32) -> GoldenScalar {
        self.0.get(&e).cloned().unwrap_or_else(GoldenScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.keys().all(|&e| e == 0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.keys().all(|&e| e >= 0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    pub fn scale(&self, c: &GoldenScalar) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.0 {
            out.add_term(*e, &(v * c));
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.0 {
            out.add_term(e - 1, &(v * &GoldenScalar::from_int(*e as i64)));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(GoldenScalar::one()), |acc, _| &acc * self)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, v) in &rhs.0 {
            out.add_term(*e, v);
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &-rhs
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(&-GoldenScalar::one())
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, x) in &self.0 {
            for (b, y) in &rhs.0 {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                _ => format!("({c})*t1^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `Σ c_n(τ₁) dⁿ/dτ₁ⁿ` with Laurent coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneVarOperator(BTreeMap<u32, Laurent>);

impl OneVarOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(order: u32, c: Laurent) -> Self {
        let mut op = Self::zero();
        op.add_term(order, &c);
        op
    }

    pub fn multiplication(c: Laurent) -> Self {
        Self::term(0, c)
    }

    pub fn constant(c: GoldenScalar) -> Self {
        Self::multiplication(Laurent::constant(c))
    }

    pub fn d() -> Self {
        Self::term(1, Laurent::constant(GoldenScalar::one()))
    }

    pub fn add_term(&mut self, order: u32, c: &Laurent) {
        let v = match self.0.remove(&order) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.0.insert(order, v);
        }
    }

    pub fn terms(&self) -> &BTreeMap<u32, Laurent> {
        &self.0
    }

    pub fn coeff(&self, order: u32) -> Laurent {
        self.0.get(&order).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Some constant `c` with `self = c·1`.
    pub fn as_constant(&self) -> Option<GoldenScalar> {
        match self.0.len() {
            0 => Some(GoldenScalar::zero()),
            1 => {
                let c = self.0.get(&0)?;
                c.is_constant().then(|| c.coeff(0))
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &GoldenScalar) -> Self {
        let mut out = Self::zero();
        for (n, v) in &self.0 {
            out.add_term(*n, &v.scale(c));
        }
        out
    }

    pub fn apply(&self, p: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (n, c) in &self.0 {
            let mut dp = p.clone();
            for _ in 0..*n {
                dp = dp.derivative();
            }
            out = &out + &(c * &dp);
        }
        out
    }

    /// Leibniz: `(a ∂ⁱ)(b ∂ʲ) = Σ_l C(i,l) a b⁽ˡ⁾ ∂^{i+j−l}`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.0 {
            for (j, b) in &other.0 {
                let mut db = b.clone();
                let mut binom = GoldenScalar::one();
                for l in 0..=*i {
                    out.add_term(i + j - l, &(a * &db).scale(&binom));
                    db = db.derivative();
                    binom = &(&binom * &GoldenScalar::from_int((i - l) as i64)) / &GoldenScalar::from_int(l as i64 + 1);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    /// `g⁻¹ ∘ self ∘ g` for `g'/g = u`, i.e. `∂ ↦ ∂ + u`.
    pub fn conjugate_by_log_derivative(&self, u: &Laurent) -> Self {
        let shifted = &Self::d() + &Self::multiplication(u.clone());
        let mut out = Self::zero();
        for (n, c) in &self.0 {
            let mut p = Self::constant(GoldenScalar::one());
            for _ in 0..*n {
                p = p.compose(&shifted);
            }
            out = &out + &Self::multiplication(c.clone()).compose(&p);
        }
        out
    }
}

impl Add for &OneVarOperator {
    type Output = OneVarOperator;
    fn add(self, rhs: &OneVarOperator) -> OneVarOperator {
        let mut out = self.clone();
        for (n, c) in &rhs.0 {
            out.add_term(*n, c);
        }
        out
    }
}

impl Sub for &OneVarOperator {
    type Output = OneVarOperator;
    fn sub(self, rhs: &OneVarOperator) -> OneVarOperator {
        self + &rhs.scale(&-GoldenScalar::one())
    }
}

impl fmt::Display for OneVarOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(n, c)| format!("[{c}]*d^{n}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for OneVarOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn g(r: &Rational) -> GoldenScalar {
    GoldenScalar::from_rational(r.clone())
}

fn t_pow(c: GoldenScalar, e: i32) -> Laurent {
    Laurent::mono(c, e)
}

/// `J⁺ = τ²∂ − kτ`, `J⁰ = τ∂ − k/2`, `J⁻ = ∂`.
#[derive(Clone, Debug, Serialize)]
pub struct Sl2Triple {
    pub k: u32,
    pub plus: OneVarOperator,
    pub zero: OneVarOperator,
    pub minus: OneVarOperator,
}

impl Sl2Triple {
    pub fn new(k: u32) -> Self {
        let kk = GoldenScalar::from_int(k as i64);
        let mut plus = OneVarOperator::term(1, t_pow(GoldenScalar::one(), 2));
        plus.add_term(0, &t_pow(-&kk, 1));
        let mut zero = OneVarOperator::term(1, t_pow(GoldenScalar::one(), 1));
        zero.add_term(0, &Laurent::constant(&kk * &GoldenScalar::frac(-1, 2)));
        Self {
            k,
            plus,
            zero,
            minus: OneVarOperator::d(),
        }
    }

    /// `[J⁰, J±] = ±J±` and `[J⁺, J⁻] = −2J⁰`.
    pub fn check_relations(&self) -> Result<()> {
        let checks = [
            (self.zero.commutator(&self.plus), self.plus.clone(), "[J0, J+]"),
            (self.zero.commutator(&self.minus), self.minus.scale(&-GoldenScalar::one()), "[J0, J-]"),
            (self.plus.commutator(&self.minus), self.zero.scale(&GoldenScalar::from_int(-2)), "[J+, J-]"),
        ];
        for (got, want, name) in checks {
            if got != want {
                return Err(Error::IdentityFailure(format!("{name} = {got}")));
            }
        }
        Ok(())
    }
}

/// Terms of `h` free of `∂₂, ∂₃`, evaluated on the line `τ₂ = τ₃ = 0`.
pub fn restrict_to_tau1(h: &DiffOperator) -> Result<OneVarOperator> {
    if !h.is_param_free() {
        return Err(Error::FormalParameters);
    }
    let mut out = OneVarOperator::zero();
    for (beta, c) in h.terms() {
        if beta[1] != 0 || beta[2] != 0 {
            continue;
        }
        let mut l = Laurent::zero();
        for (m, v) in c.terms() {
            if m.exp(1) == 0 && m.exp(2) == 0 {
                l.add_term(m.exp(0) as i32, v);
            }
        }
        out.add_term(beta[0] as u32, &l);
    }
    Ok(out)
}

/// `h₁ = 4τ∂² − 4ωτ∂ + 6(1+10ν)∂`.
pub fn h1(nu: &Rational, omega: &Rational) -> OneVarOperator {
    let mut op = OneVarOperator::term(2, t_pow(GoldenScalar::from_int(4), 1));
    let drift = &t_pow(&g(omega) * &GoldenScalar::from_int(-4), 1)
        + &Laurent::constant(&GoldenScalar::from_int(6) * &(&GoldenScalar::one() + &(&GoldenScalar::from_int(10) * &g(nu))));
    op.add_term(1, &drift);
    op
}

/// `4J⁰₀J⁻ − 4ωJ⁰₀ + 6(1+10ν)J⁻`.
pub fn h1_sl2(nu: &Rational, omega: &Rational) -> OneVarOperator {
    let j = Sl2Triple::new(0);
    let b = &GoldenScalar::from_int(6) * &(&GoldenScalar::one() + &(&GoldenScalar::from_int(10) * &g(nu)));
    &(&j.zero.compose(&j.minus).scale(&GoldenScalar::from_int(4)) - &j.zero.scale(&(&g(omega) * &GoldenScalar::from_int(4))))
        + &j.minus.scale(&b)
}

/// `L_n^α(x)` by the three-term recurrence, as a polynomial in `x`.
pub fn laguerre(n: u32, alpha: &Rational) -> Laurent {
    let a = g(alpha);
    let one = GoldenScalar::one();
    let mut prev = Laurent::constant(one.clone());
    if n == 0 {
        return prev;
    }
    let mut cur = &Laurent::constant(&one + &a) - &Laurent::var();
    for k in 1..n {
        let kk = GoldenScalar::from_int(k as i64);
        let lin = &Laurent::constant(&GoldenScalar::from_int(2 * k as i64 + 1) + &a) - &Laurent::var();
        let next = (&(&lin * &cur) - &prev.scale(&(&kk + &a))).scale(&GoldenScalar::frac(1, k as i64 + 1));
        prev = cur;
        cur = next;
    }
    cur
}

/// `p(ωτ)`.
fn rescale(p: &Laurent, omega: &GoldenScalar) -> Laurent {
    let mut out = Laurent::zero();
    for (e, c) in p.terms() {
        out.add_term(*e, &(c * &omega.pow(*e as u32)));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LaguerreReport {
    pub n: u32,
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    pub eigenfunction: Laurent,
    pub epsilon: GoldenScalar,
}

/// `−h₁φ = εφ` for `φ = L_n^{(1+30ν)/2}(ωτ₁)`, `ε = 4ωn`, with zero residual.
pub fn laguerre_check(n: u32, nu: &Rational, omega: &Rational) -> Result<LaguerreReport> {
    let alpha = (Rational::one() + Rational::from_integer(30.into()) * nu) / Rational::from_integer(2.into());
    let phi = rescale(&laguerre(n, &alpha), &g(omega));
    let eps = &g(omega) * &GoldenScalar::from_int(4 * n as i64);
    let residual = &(-&h1(nu, omega).apply(&phi)) - &phi.scale(&eps);
    if !residual.is_zero() {
        return Err(Error::NonZeroResidual(residual.to_string()));
    }
    Ok(LaguerreReport {
        n,
        alpha,
        eigenfunction: phi,
        epsilon: eps,
    })
}

/// Parameters of the QES extension; `gamma_q` is the exponent of the
/// `τ₁^γ` gauge factor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QesParams {
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub gamma_q: Rational,
    pub k: u32,
}

impl QesParams {
    pub fn new(a: Rational, gamma_q: Rational, k: u32) -> Result<Self> {
        if a.is_negative() {
            return Err(Error::CheckFailed("QES parameter a must be non-negative".into()));
        }
        Ok(Self { a, gamma_q, k })
    }
}

/// `V = a²τ³/2 + aωτ² − a(2k+2γ+15ν+5/2)τ + γ(2γ+30ν+1)/τ`.
pub fn qes_potential(p: &QesParams, nu: &Rational, omega: &Rational) -> Laurent {
    let (a, gm, w, n) = (g(&p.a), g(&p.gamma_q), g(omega), g(nu));
    let k = GoldenScalar::from_int(p.k as i64);
    let two = GoldenScalar::from_int(2);
    let lin = &(&(&(&two * &k) + &(&two * &gm)) + &(&GoldenScalar::from_int(15) * &n)) + &GoldenScalar::frac(5, 2);
    let inv = &gm * &(&(&(&two * &gm) + &(&GoldenScalar::from_int(30) * &n)) + &GoldenScalar::one());
    let mut v = Laurent::zero();
    v.add_term(3, &(&(&a * &a) * &GoldenScalar::frac(1, 2)));
    v.add_term(2, &(&a * &w));
    v.add_term(1, &-(&a * &lin));
    v.add_term(-1, &inv);
    v
}

/// Construction (i): `τ^{−γ}e^{aτ²/4} (h₁ − 2V) τ^{γ}e^{−aτ²/4}`.
pub fn qes_by_gauge(p: &QesParams, nu: &Rational, omega: &Rational) -> OneVarOperator {
    let hq = &h1(nu, omega) - &OneVarOperator::multiplication(qes_potential(p, nu, omega).scale(&GoldenScalar::from_int(2)));
    let u = &t_pow(g(&p.gamma_q), -1) - &t_pow(&g(&p.a) * &GoldenScalar::frac(1, 2), 1);
    hq.conjugate_by_log_derivative(&u)
}

/// Construction (ii): `4J⁰J⁻ − 4aJ⁺ − 4ωJ⁰ + 2(k+4γ+3(1+10ν))J⁻`.
pub fn qes_operator(p: &QesParams, nu: &Rational, omega: &Rational) -> OneVarOperator {
    let j = Sl2Triple::new(p.k);
    let four = GoldenScalar::from_int(4);
    let c = &GoldenScalar::from_int(2)
        * &(&(&GoldenScalar::from_int(p.k as i64) + &(&four * &g(&p.gamma_q)))
            + &(&GoldenScalar::from_int(3) * &(&GoldenScalar::one() + &(&GoldenScalar::from_int(10) * &g(nu)))));
    let ops = [
        j.zero.compose(&j.minus).scale(&four),
        j.plus.scale(&-(&four * &g(&p.a))),
        j.zero.scale(&-(&four * &g(omega))),
        j.minus.scale(&c),
    ];
    ops.iter().fold(OneVarOperator::zero(), |acc, o| &acc + o)
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeReport {
    pub params: QesParams,
    pub operator: OneVarOperator,
    /// `gauge − sl(2)`, the dropped constant.
    pub constant: GoldenScalar,
}

pub fn qes_gauge_check(p: &QesParams, nu: &Rational, omega: &Rational) -> Result<GaugeReport> {
    let op = qes_operator(p, nu, omega);
    let diff = &qes_by_gauge(p, nu, omega) - &op;
    let constant = diff
        .as_constant()
        .ok_or_else(|| Error::GaugeMismatch(diff.to_string()))?;
    Ok(GaugeReport {
        params: p.clone(),
        operator: op,
        constant,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceReport {
    pub k: u32,
    /// Coefficient of `τ^{k+2}` in the image of `τ^{k+1}`.
    pub witness: Option<GoldenScalar>,
}

/// `𝒫_k` is invariant; for `a > 0`, `τ^{k+1}` leaves `𝒫_{k+1}`.
pub fn invariant_subspace_check(p: &QesParams, nu: &Rational, omega: &Rational) -> Result<SubspaceReport> {
    let op = qes_operator(p, nu, omega);
    let k = p.k as i32;
    for e in 0..=k {
        let img = op.apply(&Laurent::mono(GoldenScalar::one(), e));
        if !img.is_polynomial() || img.max_exp().is_some_and(|m| m > k) {
            return Err(Error::PreservationFailure(format!("image of t1^{e} leaves P_{k}")));
        }
    }
    let img = op.apply(&Laurent::mono(GoldenScalar::one(), k + 1));
    let top = img.coeff(k + 2);
    let witness = (!top.is_zero()).then_some(top);
    if p.a.is_positive() && witness.is_none() {
        return Err(Error::PreservationFailure(format!("P_{} is also invariant", k + 1)));
    }
    Ok(SubspaceReport { k: p.k, witness })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub params: QesParams,
    /// Matrix of the sl(2) operator on `1, τ, …, τ^k`; column `j` is the image of `τ^j`.
    pub matrix: Vec<Vec<GoldenScalar>>,
    pub charpoly: UniPoly,
    pub constant: GoldenScalar,
    /// Characteristic polynomial of `E₀ − (M + c)/2`, whose roots are the energies.
    pub energy_charpoly: UniPoly,
    pub ground_energy: GoldenScalar,
}

/// `E₀ = (3/2)ω(1 + 10ν + 4γ/3)`.
pub fn qes_ground_energy(p: &QesParams, nu: &Rational, omega: &Rational) -> GoldenScalar {
    let base = ground_energy().with_params(nu, omega).constant_term();
    &base + &(&GoldenScalar::from_int(2) * &(&g(omega) * &g(&p.gamma_q)))
}

/// Exact block on `𝒫_k`. Energies are `E = E₀(ν,ω) − (λ + c)/2` for the
/// block eigenvalues λ and the gauge constant c; for `k = 0, 1` they are
/// compared with the closed forms through trace and determinant only.
pub fn block_spectrum(p: &QesParams, nu: &Rational, omega: &Rational) -> Result<BlockReport> {
    let op = qes_operator(p, nu, omega);
    let constant = qes_gauge_check(p, nu, omega)?.constant;
    let n = p.k as usize + 1;
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let img = op.apply(&Laurent::mono(GoldenScalar::one(), j as i32));
        for (e, c) in img.terms() {
            if *e < 0 || *e as usize >= n {
                return Err(Error::PreservationFailure(format!("image of t1^{j}")));
            }
            m.set(*e as usize, j, c.clone());
        }
    }
    let base = ground_energy().with_params(nu, omega).constant_term();
    let mut energies = Matrix::zeros(n, n);
    let half = GoldenScalar::frac(-1, 2);
    for i in 0..n {
        for j in 0..n {
            let mut v = m.get(i, j) * &half;
            if i == j {
                v = &(&v + &base) + &(&constant * &half);
            }
            energies.set(i, j, v);
        }
    }
    let e0 = qes_ground_energy(p, nu, omega);
    match p.k {
        0 => {
            if *energies.get(0, 0) != e0 {
                return Err(Error::SymmetricFunctionMismatch(format!("E0 = {} vs {}", energies.get(0, 0), e0)));
            }
        }
        1 => {
            let w = g(omega);
            let shift = &e0 + &w;
            let want_trace = &GoldenScalar::from_int(2) * &shift;
            let two = GoldenScalar::from_int(2);
            let disc = &(&w * &w)
                + &(&(&two * &g(&p.a))
                    * &(&(&GoldenScalar::from_int(4) * &g(&p.gamma_q))
                        + &(&GoldenScalar::from_int(3) * &(&GoldenScalar::one() + &(&GoldenScalar::from_int(10) * &g(nu))))));
            let det = energies.shifted(&shift).determinant()?;
            if energies.trace() != want_trace || det != -disc.clone() {
                return Err(Error::SymmetricFunctionMismatch(format!(
                    "trace {} vs {}, det {} vs {}",
                    energies.trace(),
                    want_trace,
                    det,
                    -disc
                )));
            }
        }
        _ => {}
    }
    Ok(BlockReport {
        params: p.clone(),
        matrix: (0..n).map(|i| m.row(i).to_vec()).collect(),
        charpoly: m.charpoly()?,
        constant,
        energy_charpoly: energies.charpoly()?,
        ground_energy: e0,
    })
}

/// `f` has no `∂₁` term, so it commutes with multiplication by any function
/// of τ₁ alone; in particular with the QES potential.
pub fn integral_ignores_tau1_potential(f: &DiffOperator) -> bool {
    f.terms().keys().all(|beta| beta[0] == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn laguerre_low_orders() {
        let a = rat(1, 2);
        assert_eq!(laguerre(0, &a), Laurent::constant(GoldenScalar::one()));
        // L₂^α(x) = x²/2 − (α+2)x + (α+1)(α+2)/2
        let l2 = laguerre(2, &a);
        assert_eq!(l2.coeff(2), GoldenScalar::frac(1, 2));
        assert_eq!(l2.coeff(1), GoldenScalar::frac(-5, 2));
        assert_eq!(l2.coeff(0), GoldenScalar::frac(15, 8));
    }

    #[test]
    fn conjugation_by_trivial_gauge() {
        let op = h1(&rat(1, 3), &rat(1, 1));
        assert_eq!(op.conjugate_by_log_derivative(&Laurent::zero()), op);
    }

    #[test]
    fn j_plus_kills_top() {
        let j = Sl2Triple::new(3);
        assert!(j.plus.apply(&Laurent::mono(GoldenScalar::one(), 3)).is_zero());
    }

    #[test]
    fn negative_a_rejected() {
        assert!(QesParams::new(rat(-1, 2), rat(0, 1), 1).is_err());
    }
}
