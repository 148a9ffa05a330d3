//! Sparse multivariate polynomials over ℚ(√5).
//!
//! A polynomial lives in a [`VariableSpace`]: Cartesian `x`, the invariant
//! coordinates `τ` (with the physical parameters ν, ω as optional formal
//! indeterminates), or the single line variable `τ₁`. Terms are kept in
//! canonical form: no zero coefficients, ordered graded-lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GoldenScalar, Rational};

pub const MAX_VARS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum VariableSpace {
    /// Cartesian coordinates x₁, x₂, x₃.
    X,
    /// Invariant coordinates τ₁, τ₂, τ₃ plus formal parameters ν, ω.
    Tau,
    /// The single variable τ₁ plus formal parameters ν, ω.
    Line,
}

impl VariableSpace {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            VariableSpace::X => &["x1", "x2", "x3"],
            VariableSpace::Tau => &["t1", "t2", "t3", "nu", "om"],
            VariableSpace::Line => &["t1", "nu", "om"],
        }
    }

    pub fn nvars(self) -> usize {
        self.names().len()
    }

    /// Number of coordinate (non-parameter) variables; these come first.
    pub fn ncoords(self) -> usize {
        match self {
            VariableSpace::X | VariableSpace::Tau => 3,
            VariableSpace::Line => 1,
        }
    }

    pub fn is_param(self, var: usize) -> bool {
        var >= self.ncoords() && var < self.nvars()
    }

    pub fn index_of(self, name: &str) -> Result<usize> {
        self.names()
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Index of ν, when the space carries parameters.
    pub fn nu(self) -> Option<usize> {
        self.index_of("nu").ok()
    }

    pub fn omega(self) -> Option<usize> {
        self.index_of("om").ok()
    }
}

impl fmt::Display for VariableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            VariableSpace::X => "x-space",
            VariableSpace::Tau => "tau-space",
            VariableSpace::Line => "one-var",
        };
        f.write_str(tag)
    }
}

/// Exponent vector. Unused trailing slots stay zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = [0u16; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn weighted(&self, weights: &[u32]) -> u32 {
        weights
            .iter()
            .zip(self.0.iter())
            .map(|(w, &e)| w * e as u32)
            .sum()
    }
}

/// Graded lexicographic: total degree first, then lexicographic on exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    space: VariableSpace,
    terms: BTreeMap<Monomial, GoldenScalar>,
}

impl MultiPoly {
    pub fn zero(space: VariableSpace) -> Self {
        Self {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: VariableSpace, c: GoldenScalar) -> Self {
        Self::term(space, Monomial::one(), c)
    }

    pub fn one(space: VariableSpace) -> Self {
        Self::constant(space, GoldenScalar::one())
    }

    pub fn from_int(space: VariableSpace, n: i64) -> Self {
        Self::constant(space, GoldenScalar::from_int(n))
    }

    pub fn from_rational(space: VariableSpace, r: Rational) -> Self {
        Self::constant(space, GoldenScalar::from_rational(r))
    }

    pub fn term(space: VariableSpace, m: Monomial, c: GoldenScalar) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable with index `var`. Panics if out of range.
    pub fn var(space: VariableSpace, var: usize) -> Self {
        assert!(var < space.nvars(), "variable index out of range");
        let mut m = Monomial::one();
        m.0[var] = 1;
        Self::term(space, m, GoldenScalar::one())
    }

    pub fn var_named(space: VariableSpace, name: &str) -> Result<Self> {
        Ok(Self::var(space, space.index_of(name)?))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GoldenScalar)>>(
        space: VariableSpace,
        terms: I,
    ) -> Self {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn space(&self) -> VariableSpace {
        self.space
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GoldenScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GoldenScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, exps: &[u16]) -> GoldenScalar {
        self.coeff(&Monomial::from_exps(exps))
    }

    pub fn constant_term(&self) -> GoldenScalar {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::one())
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GoldenScalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &GoldenScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_space(&self, other: &MultiPoly) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                self.space.to_string(),
                other.space.to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        Ok(out)
    }

    /// Exact product.
    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_space(other)?;
        let mut out = MultiPoly::zero(self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GoldenScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.space);
        }
        MultiPoly {
            space: self.space,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GoldenScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.space);
        }
        MultiPoly {
            space: self.space,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&GoldenScalar) -> GoldenScalar) -> MultiPoly {
        MultiPoly::from_terms(self.space, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Galois conjugation applied to every coefficient.
    pub fn conj(&self) -> MultiPoly {
        self.map_coeffs(GoldenScalar::conj)
    }

    /// Formal partial derivative in the variable with index `var`.
    pub fn differentiate(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.space.nvars() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        Ok(self.derivative(var))
    }

    pub fn differentiate_named(&self, name: &str) -> Result<MultiPoly> {
        self.differentiate(self.space.index_of(name)?)
    }

    /// `∂^k/∂v^k`, unchecked index.
    pub fn derivative_n(&self, var: usize, k: u16) -> MultiPoly {
        let mut out = MultiPoly::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e < k {
                continue;
            }
            let falling: i64 = (0..k).map(|j| (e - j) as i64).product();
            let mut nm = *m;
            nm.0[var] -= k;
            out.add_term(nm, &(c * &GoldenScalar::from_int(falling)));
        }
        out
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        self.derivative_n(var, 1)
    }

    /// Composes `self` with `images[v]` for every variable `v` that occurs.
    /// Images must all live in `target`; variables that do not occur in
    /// `self` need no image.
    pub fn substitute(
        &self,
        images: &BTreeMap<usize, MultiPoly>,
        target: VariableSpace,
    ) -> Result<MultiPoly> {
        for img in images.values() {
            if img.space != target {
                return Err(Error::SpaceMismatch(
                    img.space.to_string(),
                    target.to_string(),
                ));
            }
        }
        let nv = self.space.nvars();
        for m in self.terms.keys() {
            for v in 0..nv {
                if m.0[v] > 0 && !images.contains_key(&v) {
                    return Err(Error::IncompleteAssignment(
                        self.space.names()[v].to_string(),
                    ));
                }
            }
        }
        if self.is_zero() {
            return Ok(MultiPoly::zero(target));
        }
        let terms: Vec<(&Monomial, &GoldenScalar)> = self.terms.iter().collect();
        Ok(horner(&terms, 0, nv, images, target))
    }

    /// Substitutes numeric values for some variables, staying in the same space.
    pub fn evaluate_vars(&self, values: &[(usize, GoldenScalar)]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.space);
        for (m, c) in &self.terms {
            let mut nm = *m;
            let mut nc = c.clone();
            for (v, val) in values {
                let e = nm.0[*v];
                if e > 0 {
                    nc = &nc * &val.pow(e as u32);
                    nm.0[*v] = 0;
                }
            }
            out.add_term(nm, &nc);
        }
        out
    }

    /// Sets ν and ω to numeric values (no-op for spaces without parameters).
    pub fn with_params(&self, nu: &Rational, omega: &Rational) -> MultiPoly {
        let mut vals = Vec::new();
        if let Some(i) = self.space.nu() {
            vals.push((i, GoldenScalar::from_rational(nu.clone())));
        }
        if let Some(i) = self.space.omega() {
            vals.push((i, GoldenScalar::from_rational(omega.clone())));
        }
        self.evaluate_vars(&vals)
    }

    /// True when no formal parameter occurs.
    pub fn is_param_free(&self) -> bool {
        let nc = self.space.ncoords();
        self.terms
            .keys()
            .all(|m| m.0[nc..self.space.nvars()].iter().all(|&e| e == 0))
    }

    /// Exact quotient `self / d`; fails with [`Error::NonDivisible`] when the
    /// remainder is nonzero.
    pub fn exact_divide(&self, d: &MultiPoly) -> Result<MultiPoly> {
        self.check_space(d)?;
        let (dm, dc) = d.leading().ok_or(Error::DivisionByZero)?;
        let (dm, dc_inv) = (*dm, dc.inv()?);
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.space);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(Error::NonDivisible);
            }
            let tm = dm.quotient_of(rm);
            let tc = rc * &dc_inv;
            rem = &rem - &d.mul_monomial(&tm, &tc);
            q.add_term(tm, &tc);
        }
        Ok(q)
    }

    /// Maximum over terms of Σ αᵢ·eᵢ (weights beyond `alpha.len()` count as 0).
    pub fn weighted_degree(&self, alpha: &[u32]) -> Result<u32> {
        self.terms
            .keys()
            .map(|m| m.weighted(alpha))
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Degree in the coordinate variables only.
    pub fn coord_degree(&self, m: &Monomial) -> u32 {
        m.0[..self.space.ncoords()].iter().map(|&e| e as u32).sum()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| self.coord_degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Splits into homogeneous components by coordinate degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(self.coord_degree(m))
                .or_insert_with(|| MultiPoly::zero(self.space))
                .add_term(*m, c);
        }
        out
    }

    /// Re-tags the polynomial in another space, mapping variable `i` of the
    /// source to `map[i]` of the target. Used for restrictions such as
    /// τ-space → the τ₁ line.
    pub fn relabel(&self, target: VariableSpace, map: &[Option<usize>]) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one();
            for (v, &e) in m.0.iter().enumerate().take(self.space.nvars()) {
                if e == 0 {
                    continue;
                }
                match map.get(v).copied().flatten() {
                    Some(t) => nm.0[t] += e,
                    None => {
                        return Err(Error::IncompleteAssignment(
                            self.space.names()[v].to_string(),
                        ))
                    }
                }
            }
            out.add_term(nm, c);
        }
        Ok(out)
    }

    /// If `self = c·other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &MultiPoly) -> Option<GoldenScalar> {
        if self.space != other.space || self.len() != other.len() {
            return None;
        }
        if self.is_zero() {
            return Some(GoldenScalar::zero());
        }
        let (m, c) = other.leading()?;
        let ratio = &self.coeff(m) / c;
        (&other.scale(&ratio) == self).then_some(ratio)
    }

    /// Parses the canonical text format in the given space.
    pub fn parse(space: VariableSpace, text: &str) -> Result<MultiPoly> {
        let text = text.trim();
        let mut out = MultiPoly::zero(space);
        if text == "0" {
            return Ok(out);
        }
        for term in split_top_level(text) {
            let term = term.trim();
            let close = term
                .find(')')
                .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
            let coeff: GoldenScalar = term[..=close].parse()?;
            let mut m = Monomial::one();
            for factor in term[close + 1..].split('*').filter(|s| !s.is_empty()) {
                let (name, exp) = factor
                    .split_once('^')
                    .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
                let v = space.index_of(name)?;
                let e: u16 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))?;
                m.0[v] += e;
            }
            out.add_term(m, &coeff);
        }
        Ok(out)
    }
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0 && text[i..].starts_with(" + ") => {
                parts.push(&text[start..i]);
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(&text[start..]);
    parts
}

/// Canonical text: graded-lex descending, terms joined by `" + "`, each term
/// a parenthesized coefficient followed by `*v^e` factors.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.space.names();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in m.0.iter().enumerate().take(names.len()) {
                if e > 0 {
                    write!(f, "*{}^{}", names[v], e)?;
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.checked_add(o).expect("polynomial space mismatch")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.checked_sub(o).expect("polynomial space mismatch")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.checked_mul(o).expect("polynomial space mismatch")
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: MultiPoly) -> MultiPoly {
        &self + &o
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        &self - &o
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&GoldenScalar::from_int(-1))
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Multivariate Horner evaluation: nested in variable order, so every step
/// multiplies by a single image.
fn horner(
    terms: &[(&Monomial, &GoldenScalar)],
    v: usize,
    nv: usize,
    images: &BTreeMap<usize, MultiPoly>,
    target: VariableSpace,
) -> MultiPoly {
    if v == nv {
        let c: GoldenScalar = terms.iter().map(|(_, c)| (*c).clone()).sum();
        return MultiPoly::constant(target, c);
    }
    let mut groups: BTreeMap<u16, Vec<(&Monomial, &GoldenScalar)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.0[v]).or_default().push((m, c));
    }
    let top = *groups.keys().next_back().expect("nonempty");
    if top == 0 {
        return horner(terms, v + 1, nv, images, target);
    }
    let img = &images[&v];
    let mut acc = MultiPoly::zero(target);
    for e in (0..=top).rev() {
        if !acc.is_zero() {
            acc = &acc * img;
        }
        if let Some(g) = groups.get(&e) {
            acc = &acc + &horner(g, v + 1, nv, images, target);
        }
    }
    acc
}

/// Shorthand constructors for τ-space polynomials.
pub mod tau {
    use super::*;

    pub fn t(i: usize) -> MultiPoly {
        MultiPoly::var(VariableSpace::Tau, i)
    }

    pub fn nu() -> MultiPoly {
        MultiPoly::var(VariableSpace::Tau, 3)
    }

    pub fn omega() -> MultiPoly {
        MultiPoly::var(VariableSpace::Tau, 4)
    }

    pub fn c(n: i64, d: i64) -> MultiPoly {
        MultiPoly::constant(VariableSpace::Tau, GoldenScalar::frac(n, d))
    }

    pub fn k(n: i64) -> MultiPoly {
        MultiPoly::from_int(VariableSpace::Tau, n)
    }

    /// `coef · τ₁^a τ₂^b τ₃^c`.
    pub fn mono(coef: GoldenScalar, a: u16, b: u16, cc: u16) -> MultiPoly {
        MultiPoly::term(VariableSpace::Tau, Monomial::from_exps(&[a, b, cc]), coef)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(VariableSpace::X, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let expected = &x(0).pow(2) - &x(1).pow(2);
        assert_eq!(p, expected);
    }

    #[test]
    fn golden_constants_multiply() {
        let p = MultiPoly::constant(VariableSpace::X, GoldenScalar::phi_plus());
        let m = MultiPoly::constant(VariableSpace::X, GoldenScalar::phi_minus());
        assert_eq!(&p * &m, MultiPoly::from_int(VariableSpace::X, -1));
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a = x(0);
        let b = tau::t(0);
        assert!(matches!(a.checked_mul(&b), Err(Error::SpaceMismatch(..))));
    }

    #[test]
    fn derivatives() {
        let p = &x(0).pow(2) * &x(1);
        assert_eq!(
            p.differentiate(0).unwrap(),
            &MultiPoly::from_int(VariableSpace::X, 2) * &(&x(0) * &x(1))
        );
        let r2 = &(&x(0).pow(2) + &x(1).pow(2)) + &x(2).pow(2);
        assert_eq!(r2.differentiate(0).unwrap(), x(0).scale(&GoldenScalar::from_int(2)));
        assert!(tau::k(7).differentiate(1).unwrap().is_zero());
        assert!(matches!(p.differentiate(3), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn substitution() {
        let r2 = &(&x(0).pow(2) + &x(1).pow(2)) + &x(2).pow(2);
        let mut img = BTreeMap::new();
        img.insert(0, r2.clone());
        let got = tau::t(0).pow(2).substitute(&img, VariableSpace::X).unwrap();
        assert_eq!(got, r2.pow(2));

        // shift τ₁ ↦ τ₁ + δ
        let delta = GoldenScalar::frac(1, 3);
        let mut img = BTreeMap::new();
        img.insert(0, &tau::t(0) + &MultiPoly::constant(VariableSpace::Tau, delta.clone()));
        let got = tau::t(0).pow(2).substitute(&img, VariableSpace::Tau).unwrap();
        let expected = &(&tau::t(0).pow(2) + &tau::t(0).scale(&(&delta * &GoldenScalar::from_int(2))))
            + &MultiPoly::constant(VariableSpace::Tau, &delta * &delta);
        assert_eq!(got, expected);

        let missing = BTreeMap::new();
        assert!(matches!(
            tau::t(1).substitute(&missing, VariableSpace::X),
            Err(Error::IncompleteAssignment(_))
        ));
    }

    #[test]
    fn conjugate_factorization_divides() {
        let r5 = MultiPoly::constant(VariableSpace::X, GoldenScalar::sqrt5());
        let p = &x(0).pow(2) - &x(1).pow(2).scale(&GoldenScalar::from_int(5));
        let d = &x(0) - &(&r5 * &x(1));
        assert_eq!(p.exact_divide(&d).unwrap(), &x(0) + &(&r5 * &x(1)));
        assert!(matches!(
            (&x(0).pow(2) + &x(1)).exact_divide(&x(0)),
            Err(Error::NonDivisible)
        ));
        assert!(matches!(
            x(0).exact_divide(&MultiPoly::zero(VariableSpace::X)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn weighted_degrees() {
        let a = [1, 2, 3];
        assert_eq!((&tau::t(0) * &tau::t(1)).weighted_degree(&a).unwrap(), 3);
        assert_eq!(tau::t(2).weighted_degree(&[1, 3, 5]).unwrap(), 5);
        assert_eq!(tau::t(1).pow(3).weighted_degree(&a).unwrap(), 6);
        assert!(matches!(
            MultiPoly::zero(VariableSpace::Tau).weighted_degree(&a),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn canonical_text_is_graded_lex_descending() {
        let p = &(&x(0) + &x(1).pow(2)) + &MultiPoly::constant(VariableSpace::X, GoldenScalar::phi_plus());
        assert_eq!(p.to_string(), "(1/1)*x2^2 + (1/1)*x1^1 + (1/2 + 1/2*r5)");
        assert_eq!(MultiPoly::parse(VariableSpace::X, &p.to_string()).unwrap(), p);
        assert_eq!(MultiPoly::zero(VariableSpace::Tau).to_string(), "0");
    }

    #[test]
    fn params_evaluate() {
        let p = &tau::nu() * &tau::t(0);
        let v = p.with_params(&rat(1, 3), &rat(1, 1));
        assert_eq!(v, tau::t(0).scale(&GoldenScalar::frac(1, 3)));
        assert!(!p.is_param_free());
        assert!(v.is_param_free());
    }
}
