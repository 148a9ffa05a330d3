//! The τ coordinates on the H₃ orbit space: their explicit x-space form,
//! exact rewriting of invariant polynomials in τ, normalization of orbit
//! averages, and the Jacobian / boundary-surface identity.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::coxeter::{mirror_product, orbit_average, Orbit};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, MultiPoly, VariableSpace};
use crate::scalar::{rat, GoldenScalar};

/// A polynomial in τ-space (τ₁, τ₂, τ₃ and the formal parameters).
pub type TauPoly = MultiPoly;

/// Degrees of τ₁, τ₂, τ₃ as x-polynomials.
pub const TAU_DEGREES: [u32; 3] = [2, 6, 10];

/// The invariant triple of degrees 2, 6 and 10.
#[derive(Clone, Debug, PartialEq)]
pub struct TauBasis {
    pub tau: [MultiPoly; 3],
}

fn g(n: i64, d: i64) -> GoldenScalar {
    GoldenScalar::frac(n, d)
}

/// `c·(x₁^a x₂^b x₃^c + x₂^a x₃^b x₁^c + x₃^a x₁^b x₂^c)`.
fn cyclic(p: &mut MultiPoly, c: &GoldenScalar, e: [u16; 3]) {
    let mut seen = BTreeSet::new();
    for e in [[e[0], e[1], e[2]], [e[2], e[0], e[1]], [e[1], e[2], e[0]]] {
        if seen.insert(e) {
            p.add_term(Monomial::from_exps(&e), c);
        }
    }
}

pub fn tau_basis() -> TauBasis {
    let x = VariableSpace::X;
    let pp = GoldenScalar::phi_plus();
    let pm = GoldenScalar::phi_minus();
    let five = GoldenScalar::from_int(5);
    let lin = |a: i64, s: i64, phi: &GoldenScalar| {
        &GoldenScalar::from_int(a) + &(&GoldenScalar::from_int(s) * &(&five * phi))
    };

    let mut t1 = MultiPoly::zero(x);
    cyclic(&mut t1, &GoldenScalar::from_int(1), [2, 0, 0]);

    let mut t2 = MultiPoly::zero(x);
    cyclic(&mut t2, &g(-3, 10), [6, 0, 0]);
    cyclic(&mut t2, &(&g(3, 10) * &lin(2, -1, &pp)), [2, 4, 0]);
    cyclic(&mut t2, &(&g(3, 10) * &lin(2, -1, &pm)), [2, 0, 4]);
    cyclic(&mut t2, &g(-39, 5), [2, 2, 2]);

    let mut t3 = MultiPoly::zero(x);
    cyclic(&mut t3, &g(2, 125), [10, 0, 0]);
    cyclic(&mut t3, &(&g(2, 25) * &lin(1, 1, &pm)), [8, 2, 0]);
    cyclic(&mut t3, &(&g(2, 25) * &lin(1, 1, &pp)), [8, 0, 2]);
    cyclic(&mut t3, &(&g(4, 25) * &lin(1, -1, &pm)), [6, 4, 0]);
    cyclic(&mut t3, &(&g(4, 25) * &lin(1, -1, &pp)), [6, 0, 4]);
    cyclic(&mut t3, &g(-112, 25), [6, 2, 2]);
    cyclic(&mut t3, &g(212, 25), [2, 4, 4]);

    TauBasis { tau: [t1, t2, t3] }
}

/// Exponent triples `(a, b, c)` with `2a + 6b + 10c = d`.
pub fn tau_monomials_of_degree(d: u32) -> Vec<[u16; 3]> {
    let mut out = Vec::new();
    if !d.is_multiple_of(2) {
        return out;
    }
    for c in 0..=d / 10 {
        for b in 0..=(d - 10 * c) / 6 {
            let rest = d - 10 * c - 6 * b;
            if rest.is_multiple_of(2) {
                out.push([(rest / 2) as u16, b as u16, c as u16]);
            }
        }
    }
    out
}

impl TauBasis {
    /// `R(τ₁(x), τ₂(x), τ₃(x))` for a parameter-free τ-polynomial.
    pub fn compose(&self, r: &TauPoly) -> Result<MultiPoly> {
        if r.space() != VariableSpace::Tau {
            return Err(Error::SpaceMismatch(
                r.space().to_string(),
                VariableSpace::Tau.to_string(),
            ));
        }
        let images: BTreeMap<usize, MultiPoly> =
            (0..3).map(|i| (i, self.tau[i].clone())).collect();
        r.substitute(&images, VariableSpace::X)
    }

    fn images_of_degree(
        &self,
        d: u32,
        powers: &mut BTreeMap<(usize, u16), MultiPoly>,
    ) -> (Vec<[u16; 3]>, Vec<MultiPoly>) {
        let exps = tau_monomials_of_degree(d);
        let images = exps
            .iter()
            .map(|e| {
                let mut acc = MultiPoly::one(VariableSpace::X);
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        let p = powers
                            .entry((i, k))
                            .or_insert_with(|| self.tau[i].pow(k as u32));
                        acc = &acc * p;
                    }
                }
                acc
            })
            .collect();
        (exps, images)
    }

    /// Rank and column count of the degree-`d` image system. Full column
    /// rank witnesses algebraic independence up to that degree.
    pub fn image_rank(&self, d: u32) -> (usize, usize) {
        let (exps, images) = self.images_of_degree(d, &mut BTreeMap::new());
        let (m, _) = image_matrix(&images);
        (m.rank(), exps.len())
    }

    /// The unique τ-polynomial `R` with `R∘τ = q`.
    pub fn decompose(&self, q: &MultiPoly) -> Result<TauPoly> {
        if q.space() != VariableSpace::X {
            return Err(Error::SpaceMismatch(
                q.space().to_string(),
                VariableSpace::X.to_string(),
            ));
        }
        let mut powers = BTreeMap::new();
        let mut out = MultiPoly::zero(VariableSpace::Tau);
        for (d, part) in q.homogeneous_parts() {
            let (exps, images) = self.images_of_degree(d, &mut powers);
            if exps.is_empty() {
                return Err(Error::NotInImage(format!("no τ-monomials of degree {d}")));
            }
            let (m, rows) = image_matrix(&images);
            let mut b = vec![GoldenScalar::zero(); m.rows()];
            for (mono, c) in part.terms() {
                match rows.get(mono) {
                    Some(&r) => b[r] = c.clone(),
                    None => {
                        return Err(Error::NotInImage(format!(
                            "degree-{d} part has a monomial outside the span"
                        )))
                    }
                }
            }
            let sol = m
                .solve(&b)?
                .ok_or_else(|| Error::NotInImage(format!("degree-{d} system is inconsistent")))?;
            for (e, c) in exps.iter().zip(sol) {
                out.add_term(Monomial::from_exps(e), &c);
            }
        }
        Ok(out)
    }
}

fn image_matrix(images: &[MultiPoly]) -> (Matrix, BTreeMap<Monomial, usize>) {
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in images {
        for (m, _) in p.terms() {
            let n = rows.len();
            rows.entry(*m).or_insert(n);
        }
    }
    let mut mat = Matrix::zeros(rows.len(), images.len());
    for (j, p) in images.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(rows[m], j, c.clone());
        }
    }
    (mat, rows)
}

/// Convenience wrapper over [`TauBasis::decompose`] with the standard basis.
pub fn decompose_in_tau(q: &MultiPoly) -> Result<TauPoly> {
    tau_basis().decompose(q)
}

/// How the averages `t₂, t₆, t₁₀` over an orbit relate to the τ basis.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizationReport {
    /// Scales with `s₂t₂ = τ₁` and unit leading τ-coefficient for `s₆t₆`, `s₁₀t₁₀`.
    pub s2: GoldenScalar,
    pub s6: GoldenScalar,
    pub s10: GoldenScalar,
    /// Mixing constants in the normalized convention:
    /// `τ₂ = T₆ + A·T₂³`, `τ₃ = T₁₀ + B·T₂²T₆ + C·T₂⁵` with `T_a = s_a t_a`.
    pub a: GoldenScalar,
    pub b: GoldenScalar,
    pub c: GoldenScalar,
    /// The same constants with unnormalized averages, `τ₂ ∝ t₆ + A·t₂³` etc.
    pub raw_a: GoldenScalar,
    pub raw_b: GoldenScalar,
    pub raw_c: GoldenScalar,
    /// The published constants, carried for side-by-side display.
    pub reference: [GoldenScalar; 3],
    pub t6_in_tau: String,
    pub t10_in_tau: String,
}

pub fn reference_mixing_constants() -> [GoldenScalar; 3] {
    [g(-13, 10), g(-76, 15), g(1531, 375)]
}

pub fn relate_orbit_invariants(orbit: &Orbit) -> Result<NormalizationReport> {
    let basis = tau_basis();
    let t2 = orbit_average(2, orbit);
    let t6 = orbit_average(6, orbit);
    let t10 = orbit_average(10, orbit);
    let inconsistent = |what: &str| Error::InconsistentBasis(what.to_string());

    let lambda = t2
        .ratio_to(&basis.tau[0])
        .ok_or_else(|| inconsistent("t2 is not proportional to tau1"))?;
    let s2 = lambda.inv()?;

    let r6 = basis.decompose(&t6)?;
    let r10 = basis.decompose(&t10)?;
    let a6 = r6.coeff_of(&[0, 1, 0]);
    let b6 = r6.coeff_of(&[3, 0, 0]);
    let c10 = r10.coeff_of(&[0, 0, 1]);
    let d10 = r10.coeff_of(&[2, 1, 0]);
    let e10 = r10.coeff_of(&[5, 0, 0]);
    if a6.is_zero() || c10.is_zero() || r6.len() > 2 || r10.len() > 3 {
        return Err(inconsistent("orbit averages do not generate tau2, tau3"));
    }
    let s6 = a6.inv()?;
    let s10 = c10.inv()?;
    let a = -(&b6 * &s6);
    let b = -(&d10 * &s10);
    let c = &(-(&e10 * &s10)) - &(&(&d10 * &s10) * &a);

    // Unnormalized: τ₂ ∝ t₆ + A'·t₂³ means A' = −b₆/λ³; τ₃ ∝ t₁₀ + B't₂²t₆ + C't₂⁵.
    let l2 = &lambda * &lambda;
    let l3 = &l2 * &lambda;
    let raw_a = -(&b6 / &l3);
    let raw_b = -(&d10 / &(&l2 * &a6));
    // t₁₀ + B't₂²t₆ + C't₂⁵ has τ₁⁵ coefficient e + B'λ²b₆ + C'λ⁵.
    let raw_c = -(&(&e10 + &(&(&raw_b * &l2) * &b6)) / &(&l3 * &l2));

    // Reconstruct τ₂, τ₃ from the normalized averages as an exact check.
    let big_t2 = t2.scale(&s2);
    let big_t6 = t6.scale(&s6);
    let big_t10 = t10.scale(&s10);
    let tau2 = &big_t6 + &big_t2.pow(3).scale(&a);
    let tau3 = &(&big_t10 + &(&big_t2.pow(2) * &big_t6).scale(&b)) + &big_t2.pow(5).scale(&c);
    if tau2 != basis.tau[1] || tau3 != basis.tau[2] {
        return Err(inconsistent("normalized averages do not reproduce tau2, tau3"));
    }
    Ok(NormalizationReport {
        s2,
        s6,
        s10,
        a,
        b,
        c,
        raw_a,
        raw_b,
        raw_c,
        reference: reference_mixing_constants(),
        t6_in_tau: r6.to_string(),
        t10_in_tau: r10.to_string(),
    })
}

/// `12960τ₁⁵τ₃² − 5760τ₁⁴τ₂²τ₃ + … + 50625τ₃³`, the boundary of the
/// configuration space in τ coordinates.
pub fn boundary_polynomial() -> TauPoly {
    let terms: [(i64, [u16; 3]); 7] = [
        (12960, [5, 0, 2]),
        (-5760, [4, 2, 1]),
        (640, [3, 4, 0]),
        (54000, [2, 1, 2]),
        (-21600, [1, 3, 1]),
        (2304, [0, 5, 0]),
        (50625, [0, 0, 3]),
    ];
    MultiPoly::from_terms(
        VariableSpace::Tau,
        terms
            .iter()
            .map(|(c, e)| (Monomial::from_exps(e), GoldenScalar::from_int(*c))),
    )
}

/// `det(∂τᵢ/∂x_k)`.
pub fn jacobian() -> MultiPoly {
    let basis = tau_basis();
    let d: Vec<Vec<MultiPoly>> = basis
        .tau
        .iter()
        .map(|t| (0..3).map(|k| t.derivative(k)).collect())
        .collect();
    let minor = |a: usize, b: usize| &(&d[1][a] * &d[2][b]) - &(&d[1][b] * &d[2][a]);
    &(&(&d[0][0] * &minor(1, 2)) - &(&d[0][1] * &minor(0, 2))) + &(&d[0][2] * &minor(0, 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub jacobian_degree: u32,
    /// `J = c·Δ₁Δ₂`.
    pub jacobian_over_mirrors: GoldenScalar,
    /// `decompose(J²) = k·(boundary polynomial)`.
    pub jacobian_sq_over_boundary: GoldenScalar,
    pub jacobian_sq_in_tau: String,
}

pub fn boundary_check() -> Result<BoundaryReport> {
    let j = jacobian();
    let jacobian_degree = j.total_degree()?;
    let c = j
        .ratio_to(&mirror_product())
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::ProportionalityFailure("J vs mirror product".into()))?;
    let j2 = decompose_in_tau(&(&j * &j))?;
    let k = j2
        .ratio_to(&boundary_polynomial())
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::ProportionalityFailure("J^2 vs boundary polynomial".into()))?;
    Ok(BoundaryReport {
        jacobian_degree,
        jacobian_over_mirrors: c,
        jacobian_sq_over_boundary: k,
        jacobian_sq_in_tau: j2.to_string(),
    })
}

/// `2(5+√5)`, the factor in `t₂ = λ·τ₁` over the orbit of w₁.
pub fn t2_factor_w1() -> GoldenScalar {
    GoldenScalar::new(rat(10, 1), rat(2, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tau;

    #[test]
    fn transcribed_coefficients() {
        let b = tau_basis();
        assert_eq!(b.tau[1].coeff_of(&[6, 0, 0]), g(-3, 10));
        assert_eq!(b.tau[2].coeff_of(&[10, 0, 0]), g(2, 125));
        assert!(b.tau[1].is_homogeneous() && b.tau[2].is_homogeneous());
    }

    #[test]
    fn enumerates_tau_monomials() {
        assert_eq!(tau_monomials_of_degree(6), vec![[3, 0, 0], [0, 1, 0]]);
        assert_eq!(tau_monomials_of_degree(7), Vec::<[u16; 3]>::new());
    }

    #[test]
    fn decomposes_gradient_square() {
        let b = tau_basis();
        let t1 = &b.tau[0];
        let grad_sq: MultiPoly = (0..3).map(|k| t1.derivative(k).pow(2)).fold(
            MultiPoly::zero(VariableSpace::X),
            |a, p| &a + &p,
        );
        assert_eq!(decompose_in_tau(&grad_sq).unwrap(), tau::t(0).scale(&GoldenScalar::from_int(4)));
    }

    #[test]
    fn rejects_non_invariant() {
        let x1 = MultiPoly::var(VariableSpace::X, 0).pow(2);
        assert!(matches!(decompose_in_tau(&x1), Err(Error::NotInImage(_))));
    }
}
