//! Exact scalars: arbitrary-precision rationals and the golden field ℚ(√5).

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(text).map_err(|_| bad())?,
        )),
    }
}

/// `p/q` with the denominator always written.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// An element `rat + irr·√5` of ℚ(√5).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GoldenScalar {
    rat: Rational,
    irr: Rational,
}

impl GoldenScalar {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        Self { rat, irr }
    }

    pub fn from_rational(rat: Rational) -> Self {
        Self {
            rat,
            irr: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn sqrt5() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// φ₊ = (1+√5)/2.
    pub fn phi_plus() -> Self {
        Self::new(rat(1, 2), rat(1, 2))
    }

    /// φ₋ = (1−√5)/2.
    pub fn phi_minus() -> Self {
        Self::new(rat(1, 2), rat(-1, 2))
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn irr_part(&self) -> &Rational {
        &self.irr
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    /// Galois conjugate: √5 ↦ −√5.
    pub fn conj(&self) -> Self {
        Self::new(self.rat.clone(), -self.irr.clone())
    }

    /// Field norm `rat² − 5·irr²`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - rat_int(5) * &self.irr * &self.irr
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(&self.rat / &n, -(&self.irr / &n)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Sign of the real number `rat + irr·√5`.
    pub fn signum(&self) -> Ordering {
        let a = self.rat.signum();
        let b = self.irr.signum();
        let sa = cmp_zero(&self.rat);
        let sb = cmp_zero(&self.irr);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare rat² with 5·irr²
        let lhs = &self.rat * &self.rat;
        let rhs = rat_int(5) * &self.irr * &self.irr;
        match lhs.cmp(&rhs) {
            Ordering::Greater => cmp_zero(&a),
            Ordering::Less => cmp_zero(&b),
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Lexicographic positivity on (rat, irr): the sign convention used for
    /// normalizing linear forms.
    pub fn lex_sign(&self) -> Ordering {
        match cmp_zero(&self.rat) {
            Ordering::Equal => cmp_zero(&self.irr),
            s => s,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN) + self.irr.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }
}

fn cmp_zero(r: &Rational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl Zero for GoldenScalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for GoldenScalar {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl From<Rational> for GoldenScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for GoldenScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn add(self, o: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.rat + &o.rat, &self.irr + &o.irr)
    }
}

impl<'a> Sub<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn sub(self, o: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.rat - &o.rat, &self.irr - &o.irr)
    }
}

impl<'a> Mul<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    fn mul(self, o: &GoldenScalar) -> GoldenScalar {
        if self.irr.is_zero() && o.irr.is_zero() {
            return GoldenScalar::from_rational(&self.rat * &o.rat);
        }
        let rat = &self.rat * &o.rat + rat_int(5) * &self.irr * &o.irr;
        let irr = &self.rat * &o.irr + &self.irr * &o.rat;
        GoldenScalar::new(rat, irr)
    }
}

impl<'a> Div<&'a GoldenScalar> for &'a GoldenScalar {
    type Output = GoldenScalar;
    /// Panics on division by zero; use [`GoldenScalar::inv`] for a checked path.
    fn div(self, o: &GoldenScalar) -> GoldenScalar {
        if o.irr.is_zero() {
            assert!(!o.rat.is_zero(), "division by zero in ℚ(√5)");
            return GoldenScalar::new(&self.rat / &o.rat, &self.irr / &o.rat);
        }
        self * &o.inv().expect("division by zero in ℚ(√5)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GoldenScalar> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, o: GoldenScalar) -> GoldenScalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GoldenScalar> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, o: &GoldenScalar) -> GoldenScalar { (&self).$m(o) }
        }
        impl<'a> $tr<GoldenScalar> for &'a GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, o: GoldenScalar) -> GoldenScalar { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar::new(-self.rat, -self.irr)
    }
}

impl Neg for &GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar::new(-self.rat.clone(), -self.irr.clone())
    }
}

impl AddAssign<&GoldenScalar> for GoldenScalar {
    fn add_assign(&mut self, o: &GoldenScalar) {
        self.rat += &o.rat;
        self.irr += &o.irr;
    }
}

impl SubAssign<&GoldenScalar> for GoldenScalar {
    fn sub_assign(&mut self, o: &GoldenScalar) {
        self.rat -= &o.rat;
        self.irr -= &o.irr;
    }
}

impl MulAssign<&GoldenScalar> for GoldenScalar {
    fn mul_assign(&mut self, o: &GoldenScalar) {
        *self = &*self * o;
    }
}

impl Sum for GoldenScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for GoldenScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Canonical text: `(p/q)` or `(p/q + r/s*r5)`.
impl fmt::Display for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            write!(f, "({})", format_rational(&self.rat))
        } else {
            write!(
                f,
                "({} + {}*r5)",
                format_rational(&self.rat),
                format_rational(&self.irr)
            )
        }
    }
}

impl FromStr for GoldenScalar {
    type Err = Error;

    /// Accepts the canonical form, with or without the surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        match inner.split_once(" + ") {
            Some((r, i)) => {
                let i = i
                    .strip_suffix("*r5")
                    .ok_or_else(|| Error::Parse(format!("bad golden scalar {s:?}")))?;
                Ok(Self::new(parse_rational(r)?, parse_rational(i)?))
            }
            None => Ok(Self::from_rational(parse_rational(inner)?)),
        }
    }
}

impl serde::Serialize for GoldenScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Serializes a rational in `p/q` form, for `#[serde(serialize_with)]`.
pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}
