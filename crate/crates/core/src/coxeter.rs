//! The icosahedral reflection group H₃: mirror forms, the 120 group
//! elements, orbits and orbit-averaged invariants.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, VariableSpace};
use crate::scalar::GoldenScalar;

pub type Vec3 = [GoldenScalar; 3];

pub const GROUP_ORDER: usize = 120;

fn dot(a: &Vec3, b: &Vec3) -> GoldenScalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A nonzero linear form `α·x`, normalized so its first nonzero coefficient
/// is positive in the (rational part, irrational part) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec3,
}

impl LinearForm {
    pub fn new(coeffs: Vec3) -> Result<Self> {
        let lead = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroPolynomial)?;
        let coeffs = if lead.lex_sign() == Ordering::Less {
            coeffs.map(|c| -c)
        } else {
            coeffs
        };
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &Vec3 {
        &self.coeffs
    }

    pub fn norm_sq(&self) -> GoldenScalar {
        dot(&self.coeffs, &self.coeffs)
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(
            VariableSpace::X,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut m = Monomial::one();
                m.0[i] = 1;
                (m, c.clone())
            }),
        )
    }
}

/// The 15 positive mirror forms: three coordinate forms and twelve
/// `x_i ± φ₊x_j ± φ₋x_k` over the even permutations (i, j, k).
pub fn positive_forms() -> Vec<LinearForm> {
    let zero = GoldenScalar::zero;
    let mut forms = Vec::with_capacity(15);
    for k in 0..3 {
        let mut c = [zero(), zero(), zero()];
        c[k] = GoldenScalar::one();
        forms.push(LinearForm::new(c).expect("nonzero"));
    }
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                let mut c = [zero(), zero(), zero()];
                c[i] = GoldenScalar::one();
                c[j] = &GoldenScalar::from_int(s1) * &GoldenScalar::phi_plus();
                c[k] = &GoldenScalar::from_int(s2) * &GoldenScalar::phi_minus();
                forms.push(LinearForm::new(c).expect("nonzero"));
            }
        }
    }
    forms
}

/// A 3×3 orthogonal matrix with entries in ℚ(√5).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    m: [[GoldenScalar; 3]; 3],
}

impl GroupElement {
    pub fn identity() -> Self {
        let mut m: [[GoldenScalar; 3]; 3] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = GoldenScalar::one();
        }
        Self { m }
    }

    pub fn from_rows(m: [[GoldenScalar; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn entry(&self, i: usize, j: usize) -> &GoldenScalar {
        &self.m[i][j]
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let mut m: [[GoldenScalar; 3]; 3] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = (0..3).map(|k| &self.m[i][k] * &other.m[k][j]).sum();
            }
        }
        GroupElement { m }
    }

    pub fn transpose(&self) -> GroupElement {
        let mut m: [[GoldenScalar; 3]; 3] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.m[j][i].clone();
            }
        }
        GroupElement { m }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        [0, 1, 2].map(|i| dot(&self.m[i], v))
    }

    pub fn determinant(&self) -> GoldenScalar {
        let m = &self.m;
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d])
        };
        &(&(&m[0][0] * &minor(1, 2, 2, 1)) - &(&m[0][1] * &minor(0, 2, 2, 0)))
            + &(&m[0][2] * &minor(0, 1, 1, 0))
    }

    pub fn trace(&self) -> GoldenScalar {
        (0..3).map(|i| self.m[i][i].clone()).sum()
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().compose(self) == GroupElement::identity()
    }

    /// Involution with determinant −1 and trace 1.
    pub fn is_reflection(&self) -> bool {
        self.determinant() == GoldenScalar::from_int(-1)
            && self.trace() == GoldenScalar::one()
            && self.compose(self) == GroupElement::identity()
    }

    /// `p(x) ↦ p(g·x)`.
    pub fn act_on(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let images: BTreeMap<usize, MultiPoly> = (0..3)
            .map(|i| {
                let form = MultiPoly::from_terms(
                    VariableSpace::X,
                    (0..3).map(|j| {
                        let mut m = Monomial::one();
                        m.0[j] = 1;
                        (m, self.m[i][j].clone())
                    }),
                );
                (i, form)
            })
            .collect();
        p.substitute(&images, VariableSpace::X)
    }
}

/// `R = I − 2ααᵀ/|α|²`.
pub fn reflection_of(form: &LinearForm) -> GroupElement {
    let a = form.coeffs();
    let scale = &GoldenScalar::from_int(2) / &form.norm_sq();
    let mut m: [[GoldenScalar; 3]; 3] = Default::default();
    for (i, row) in m.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let delta = if i == j {
                GoldenScalar::one()
            } else {
                GoldenScalar::zero()
            };
            *slot = &delta - &(&scale * &(&a[i] * &a[j]));
        }
    }
    GroupElement { m }
}

#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl CoxeterGroup {
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.contains(g)
    }

    pub fn reflections(&self) -> Vec<&GroupElement> {
        self.elements.iter().filter(|g| g.is_reflection()).collect()
    }

    /// Exhaustive closure check over all ordered pairs.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&GroupElement> = self.elements.iter().collect();
        self.elements.iter().all(|a| {
            set.contains(&a.transpose()) && self.elements.iter().all(|b| set.contains(&a.compose(b)))
        })
    }

    pub fn orbit(&self, seed: &Vec3) -> Result<Orbit> {
        if seed.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPolynomial);
        }
        let mut seen = HashSet::new();
        let mut points = Vec::new();
        for g in &self.elements {
            let p = g.apply(seed);
            if seen.insert(p.clone()) {
                points.push(p);
            }
        }
        Ok(Orbit {
            seed: seed.clone(),
            points,
        })
    }

    pub fn stabilizer_order(&self, v: &Vec3) -> usize {
        self.elements.iter().filter(|g| g.apply(v) == *v).count()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Fixed by every mirror reflection, hence by the whole group they
    /// generate.
    pub fn is_invariant(&self, p: &MultiPoly) -> Result<bool> {
        for g in &self.generators {
            if g.act_on(p)? != *p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same answer as [`is_invariant`](Self::is_invariant), checked against
    /// all 120 elements.
    pub fn is_invariant_exhaustive(&self, p: &MultiPoly) -> Result<bool> {
        for g in &self.elements {
            if g.act_on(p)? != *p {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Breadth-first closure of the 15 mirror reflections.
pub fn generate_group() -> Result<CoxeterGroup> {
    let gens: Vec<GroupElement> = positive_forms().iter().map(reflection_of).collect();
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut elements = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(GroupElement::identity());
    elements.push(GroupElement::identity());
    queue.push_back(GroupElement::identity());
    while let Some(g) = queue.pop_front() {
        for r in &gens {
            let h = g.compose(r);
            if seen.insert(h.clone()) {
                if seen.len() > GROUP_ORDER {
                    return Err(Error::ClosureOverflow(GROUP_ORDER));
                }
                elements.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(CoxeterGroup {
        elements,
        generators: gens,
    })
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub seed: Vec3,
    pub points: Vec<Vec3>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The fundamental weights w₁, w₂, w₃.
pub fn fundamental_weights() -> [Vec3; 3] {
    let z = GoldenScalar::zero;
    let p = GoldenScalar::phi_plus();
    [
        [z(), p.clone(), GoldenScalar::one()],
        [GoldenScalar::one(), &p * &p, z()],
        [z(), &GoldenScalar::from_int(2) * &p, z()],
    ]
}

/// `t_a(x) = Σ_{w∈orbit} (w·x)^a`.
pub fn orbit_average(a: u32, orbit: &Orbit) -> MultiPoly {
    let mut acc = MultiPoly::zero(VariableSpace::X);
    for w in &orbit.points {
        let form = LinearForm { coeffs: w.clone() }.to_poly();
        acc = &acc + &form.pow(a);
    }
    acc
}

/// Product of the 15 positive mirror forms, a degree-15 polynomial
/// vanishing exactly on the mirrors.
pub fn mirror_product() -> MultiPoly {
    positive_forms()
        .iter()
        .fold(MultiPoly::one(VariableSpace::X), |acc, f| &acc * &f.to_poly())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_norms() {
        let forms = positive_forms();
        assert_eq!(forms.len(), 15);
        assert_eq!(forms[0].norm_sq(), GoldenScalar::one());
        for f in &forms[3..] {
            assert_eq!(f.norm_sq(), GoldenScalar::from_int(4));
        }
        let distinct: HashSet<_> = forms.iter().collect();
        assert_eq!(distinct.len(), 15);
    }

    #[test]
    fn reflections_are_involutive() {
        let e1 = [GoldenScalar::one(), GoldenScalar::zero(), GoldenScalar::zero()];
        let r = reflection_of(&positive_forms()[0]);
        assert_eq!(r.apply(&e1), e1.clone().map(|c| -c));
        for f in positive_forms() {
            let r = reflection_of(&f);
            assert_eq!(r.compose(&r), GroupElement::identity());
            assert_eq!(r.determinant(), GoldenScalar::from_int(-1));
            assert!(r.is_orthogonal());
        }
    }

    #[test]
    fn group_has_order_120_and_fifteen_reflections() {
        let g = generate_group().unwrap();
        assert_eq!(g.order(), GROUP_ORDER);
        assert!(g.contains(&GroupElement::identity()));
        assert_eq!(g.reflections().len(), 15);
        let lens: Vec<usize> = fundamental_weights()
            .iter()
            .map(|w| g.orbit(w).unwrap().len())
            .collect();
        assert_eq!(lens, vec![12, 20, 30]);
    }

    #[test]
    fn normalization_flips_sign() {
        let f = LinearForm::new([
            GoldenScalar::from_int(-1),
            GoldenScalar::phi_plus(),
            GoldenScalar::zero(),
        ])
        .unwrap();
        assert_eq!(f.coeffs()[0], GoldenScalar::one());
        assert!(LinearForm::new(Default::default()).is_err());
    }
}
