//! The second-order integral `f` commuting with `h`, its flag, its
//! spectrum and the explicit low-lying common eigenfunctions.

use serde::Serialize;

use crate::diffop::{
    joint_eigenbasis, preserves_flag, DiffOperator, FlagSpace, JointBasis, WeightVector,
};
use crate::error::{Error, Result};
use crate::invariants::TauPoly;
use crate::poly::{tau, MultiPoly, VariableSpace};
use crate::scalar::{GoldenScalar, Rational};

fn m(n: i64, d: i64, e: [u16; 3]) -> TauPoly {
    tau::mono(GoldenScalar::frac(n, d), e[0], e[1], e[2])
}

/// `a + b·ν`.
fn lin(a: i64, b: i64) -> TauPoly {
    &tau::k(a) + &tau::nu().scale(&GoldenScalar::from_int(b))
}

/// Coefficients of `f = Σ F_ij ∂ᵢ∂ⱼ + Σ Gⱼ ∂ⱼ` with formal ν. No entry
/// involves `∂₁`, so τ₁ acts as a parameter.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralOperator {
    pub f: [[TauPoly; 3]; 3],
    pub g: [TauPoly; 3],
}

impl IntegralOperator {
    pub fn reference() -> Self {
        let z = || MultiPoly::zero(VariableSpace::Tau);
        let f22 = &(&m(24, 5, [3, 1, 0]) + &m(-45, 4, [1, 0, 1])) + &m(18, 1, [0, 2, 0]);
        let f23 = &(&m(-8, 15, [2, 2, 0]) + &m(12, 1, [3, 0, 1])) + &m(30, 1, [0, 1, 1]);
        let f33 = &(&m(-64, 45, [1, 3, 0]) + &m(32, 3, [2, 1, 1])) + &m(50, 1, [0, 0, 2]);
        let g2 = &(&lin(1, 5) * &m(24, 5, [3, 0, 0])) + &(&lin(7, 30) * &m(3, 1, [0, 1, 0]));
        let g3 = &(&lin(2, 5) * &m(32, 15, [2, 1, 0])) + &(&lin(11, 30) * &m(5, 1, [0, 0, 1]));
        Self {
            f: [
                [z(), z(), z()],
                [z(), f22, f23.clone()],
                [z(), f23, f33],
            ],
            g: [z(), g2, g3],
        }
    }

    pub fn to_operator(&self) -> DiffOperator {
        let mut op = DiffOperator::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut beta = [0u16; 3];
                beta[i] += 1;
                beta[j] += 1;
                op.add_term(beta, &self.f[i][j]);
            }
            let mut beta = [0u16; 3];
            beta[i] = 1;
            op.add_term(beta, &self.g[i]);
        }
        op
    }

    pub fn nonzero_entries(&self) -> usize {
        let upper = (0..3)
            .flat_map(|i| (i..3).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.f[i][j].is_zero())
            .count();
        upper + self.g.iter().filter(|g| !g.is_zero()).count()
    }
}

pub fn build_f_formal() -> DiffOperator {
    IntegralOperator::reference().to_operator()
}

pub fn build_f(nu: &Rational) -> DiffOperator {
    // ω does not occur in f; any value works for the substitution
    build_f_formal().with_params(nu, &Rational::from_integer(1.into()))
}

/// Succeeds iff `[h, f]` is the zero operator.
pub fn verify_commutation(h: &DiffOperator, f: &DiffOperator) -> Result<()> {
    let c = h.commutator(f);
    if c.is_zero() {
        Ok(())
    } else {
        Err(Error::NonZeroCommutator(c.to_string()))
    }
}

/// `γ₀ = (15/2)ν(1+15ν)`, the lowest eigenvalue of the un-rotated integral.
pub fn gamma_offset() -> TauPoly {
    &tau::nu().scale(&GoldenScalar::frac(15, 2)) * &lin(1, 15)
}

/// The closed-form spectrum `2s² − 30k₂k₃ + (1+30ν)s` with `s = 3k₂+5k₃`,
/// without the additive offset.
pub fn gamma_value(k2: u32, k3: u32) -> TauPoly {
    let s = (3 * k2 + 5 * k3) as i64;
    let k = (k2 * k3) as i64;
    &tau::k(2 * s * s - 30 * k) + &lin(1, 30).scale(&GoldenScalar::from_int(s))
}

/// Diagonal entry of `f` on `τ₂^k₂ τ₃^k₃`: `2s² + (1+30ν)s`. Since `f` is
/// triangular in `3k₂+5k₃`, these are its eigenvalues.
pub fn f_diagonal(k2: u32, k3: u32) -> TauPoly {
    let s = (3 * k2 + 5 * k3) as i64;
    &tau::k(2 * s * s) + &lin(1, 30).scale(&GoldenScalar::from_int(s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GammaConvention {
    /// Eigenvalues of the gauge-rotated `f` (lowest value 0).
    WithoutOffset,
    /// Eigenvalues of the un-rotated integral, shifted by `γ₀`.
    WithOffset,
}

impl GammaConvention {
    pub fn display_value(self, k2: u32, k3: u32, nu: &Rational) -> GoldenScalar {
        let base = gamma_value(k2, k3);
        let v = match self {
            GammaConvention::WithoutOffset => base,
            GammaConvention::WithOffset => &base + &gamma_offset(),
        };
        v.with_params(nu, &Rational::from_integer(1.into())).constant_term()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaLabel {
    pub h_value: GoldenScalar,
    pub f_value: GoldenScalar,
    /// `(k₂, k₃)` whose display value equals `f_value`, if any.
    pub label: Option<(u32, u32)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    pub level: u32,
    pub convention: GammaConvention,
    pub labels: Vec<GammaLabel>,
    pub unmatched: usize,
}

/// Matches every joint f-eigenvalue against the closed-form display at
/// labels with `3k₂+5k₃ ≤ n`.
pub fn label_gamma(joint: &JointBasis, n: u32, nu: &Rational, convention: GammaConvention) -> GammaReport {
    let mut table = Vec::new();
    for k3 in 0..=n / 5 {
        for k2 in 0..=(n - 5 * k3) / 3 {
            table.push(((k2, k3), convention.display_value(k2, k3, nu)));
        }
    }
    let labels: Vec<GammaLabel> = joint
        .states
        .iter()
        .map(|s| GammaLabel {
            h_value: s.h_value.clone(),
            f_value: s.f_value.clone(),
            label: table.iter().find(|(_, v)| *v == s.f_value).map(|(k, _)| *k),
        })
        .collect();
    let unmatched = labels.iter().filter(|l| l.label.is_none()).count();
    GammaReport {
        level: n,
        convention,
        labels,
        unmatched,
    }
}

/// Joint spectrum on `P_n^(1,3,5)` labeled under both conventions.
pub fn gamma_check(
    h: &DiffOperator,
    f: &DiffOperator,
    n: u32,
    nu: &Rational,
) -> Result<(JointBasis, [GammaReport; 2])> {
    let space = FlagSpace::new(WeightVector::INTEGRAL, n);
    let joint = joint_eigenbasis(h, f, &space)?;
    let reports = [
        label_gamma(&joint, n, nu, GammaConvention::WithoutOffset),
        label_gamma(&joint, n, nu, GammaConvention::WithOffset),
    ];
    Ok((joint, reports))
}

/// First basis monomial of some `P_n^(1,2,3)`, `n ≤ max_n`, that `f` maps
/// outside the space.
pub fn minimal_flag_witness(f: &DiffOperator, max_n: u32) -> Option<(u32, String)> {
    (0..=max_n).find_map(|n| match preserves_flag(f, &FlagSpace::new(WeightVector::MINIMAL, n)) {
        Err(Error::NotInvariant { monomial }) => Some((n, monomial)),
        _ => None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceState {
    pub n: u32,
    pub i: u32,
    pub phi: TauPoly,
    pub epsilon: GoldenScalar,
    pub gamma: GoldenScalar,
}

/// The explicit common eigenfunctions `φ₀,₀ … φ₃,₁` at rational ν, ω.
pub fn reference_eigenfunctions(nu: &Rational, omega: &Rational) -> Result<Vec<ReferenceState>> {
    let g = |r: &Rational| GoldenScalar::from_rational(r.clone());
    let w = g(omega);
    let wi = w.inv()?;
    let l = |a: i64, b: i64| &GoldenScalar::from_int(a) + &(&GoldenScalar::from_int(b) * &g(nu));
    let c = |x: GoldenScalar| MultiPoly::constant(VariableSpace::Tau, x);
    let t1 = tau::t(0);
    let one = GoldenScalar::from_int(1);
    let fr = GoldenScalar::frac;

    let phi10 = &t1 - &c(&(&fr(3, 2) * &wi) * &l(1, 10));
    let phi20 = &(&t1.pow(2) - &t1.scale(&(&(&fr(5, 1) * &wi) * &l(1, 6))))
        + &c(&(&(&fr(15, 4) * &wi.pow(2)) * &l(1, 6)) * &l(1, 10));
    let a = l(1, 6);
    let b = l(7, 30);
    let phi30 = &(&(&t1.pow(3) - &t1.pow(2).scale(&(&(&fr(3, 2) * &wi) * &b)))
        + &t1.scale(&(&(&(&fr(15, 4) * &wi.pow(2)) * &a) * &b)))
        - &c(&(&(&(&fr(15, 8) * &wi.pow(3)) * &a) * &b) * &l(1, 10));
    let phi31 = &tau::t(1) + &t1.pow(3).scale(&(&(&fr(8, 5) * &l(1, 5)) / &b));

    let two_w = &GoldenScalar::from_int(2) * &w;
    let z = GoldenScalar::from_int(0);
    let st = |n, i, phi, k: i64, gamma| ReferenceState {
        n,
        i,
        phi,
        epsilon: &GoldenScalar::from_int(k) * &two_w,
        gamma,
    };
    Ok(vec![
        st(0, 0, c(one), 0, z.clone()),
        st(1, 0, phi10, 1, z.clone()),
        st(2, 0, phi20, 2, z.clone()),
        st(3, 0, phi30, 3, z),
        st(3, 1, phi31, 3, l(21, 90)),
    ])
}

/// Checks `hφ = −2εφ` and `fφ = γφ` for each reference state exactly.
pub fn check_reference_states(
    h: &DiffOperator,
    f: &DiffOperator,
    states: &[ReferenceState],
) -> Result<()> {
    for s in states {
        let hv = -(&GoldenScalar::from_int(2) * &s.epsilon);
        if h.apply(&s.phi) != s.phi.scale(&hv) {
            return Err(Error::CheckFailed(format!("h eigen-equation at ({}, {})", s.n, s.i)));
        }
        if f.apply(&s.phi) != s.phi.scale(&s.gamma) {
            return Err(Error::CheckFailed(format!("f eigen-equation at ({}, {})", s.n, s.i)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::Zero;

    #[test]
    fn table_shape() {
        let f = IntegralOperator::reference();
        assert_eq!(f.nonzero_entries(), 5);
        assert!(f.g[0].is_zero() && f.f[0][1].is_zero());
    }

    #[test]
    fn display_examples() {
        let nu = rat(1, 3);
        let v = |k2, k3| gamma_value(k2, k3).with_params(&nu, &rat(1, 1)).constant_term();
        assert_eq!(v(0, 0), GoldenScalar::zero());
        assert_eq!(v(1, 0), GoldenScalar::from_int(21 + 30));
        assert_eq!(v(0, 1), GoldenScalar::from_int(55 + 50));
    }
}
