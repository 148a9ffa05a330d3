//! Exact linear algebra over ℚ(√5): dense matrices, characteristic
//! polynomials, nullspaces, and an incremental sparse echelon basis used for
//! span-membership questions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GoldenScalar;

/// Univariate polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<GoldenScalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GoldenScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![GoldenScalar::one()])
    }

    /// `λ − root`.
    pub fn linear(root: &GoldenScalar) -> Self {
        Self::new(vec![-root, GoldenScalar::one()])
    }

    pub fn coeffs(&self) -> &[GoldenScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &GoldenScalar) -> GoldenScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(GoldenScalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![GoldenScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }

    /// Synthetic division by `λ − root`: returns (quotient, remainder).
    pub fn div_linear(&self, root: &GoldenScalar) -> (UniPoly, GoldenScalar) {
        if self.coeffs.is_empty() {
            return (UniPoly::zero(), GoldenScalar::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![GoldenScalar::zero(); n - 1];
        let mut carry = GoldenScalar::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &(&carry * root);
            if i == 0 {
                return (UniPoly::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn product_of_linear<'a, I: IntoIterator<Item = &'a GoldenScalar>>(roots: I) -> UniPoly {
        roots
            .into_iter()
            .fold(UniPoly::one(), |acc, r| acc.mul(&UniPoly::linear(r)))
    }
}

impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if k > 0 {
                write!(f, "*lambda^{k}")?;
            }
        }
        Ok(())
    }
}

/// Dense square-or-rectangular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GoldenScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GoldenScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GoldenScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GoldenScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GoldenScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GoldenScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GoldenScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn diagonal(&self) -> Vec<GoldenScalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn trace(&self) -> GoldenScalar {
        self.diagonal().into_iter().sum()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[GoldenScalar]) -> Vec<GoldenScalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self − λ·I`.
    pub fn shifted(&self, lambda: &GoldenScalar) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let rv = self.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * rv);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self·v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<GoldenScalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GoldenScalar::zero(); self.cols];
                v[f] = GoldenScalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Solves `self·x = b`. `Ok(None)` when inconsistent; the particular
    /// solution sets free variables to zero.
    pub fn solve(&self, b: &[GoldenScalar]) -> Result<Option<Vec<GoldenScalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "rhs of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![GoldenScalar::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> Result<GoldenScalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GoldenScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(GoldenScalar::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for i in (c + 1)..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(λI − M)` by the division-free
    /// Berkowitz algorithm.
    pub fn charpoly(&self) -> Result<UniPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension("charpoly of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(UniPoly::one());
        }
        // c holds coefficients highest-degree first.
        let mut c: Vec<GoldenScalar> = vec![GoldenScalar::one(), -self.get(0, 0)];
        for k in 1..n {
            // Leading principal k×k block A, column R = M[0..k][k], row C = M[k][0..k].
            let a_kk = self.get(k, k).clone();
            let col: Vec<GoldenScalar> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let row: Vec<GoldenScalar> = (0..k).map(|j| self.get(k, j).clone()).collect();
            // Toeplitz column: 1, −a_kk, −C·R, −C·A·R, ..., −C·A^{k−1}·R
            let mut t = Vec::with_capacity(k + 2);
            t.push(GoldenScalar::one());
            t.push(-&a_kk);
            let mut v = col;
            for _ in 0..k {
                let dot: GoldenScalar = row
                    .iter()
                    .zip(&v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum();
                t.push(-dot);
                v = (0..k)
                    .map(|i| {
                        (0..k)
                            .filter(|&j| !self.get(i, j).is_zero() && !v[j].is_zero())
                            .map(|j| self.get(i, j) * &v[j])
                            .sum()
                    })
                    .collect();
            }
            // new c = T (lower-triangular Toeplitz, (k+2)×(k+1)) · c
            let mut next = vec![GoldenScalar::zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && !cj.is_zero() && !t[i - j].is_zero() {
                        *slot += &(&t[i - j] * cj);
                    }
                }
            }
            c = next;
        }
        c.reverse();
        Ok(UniPoly::new(c))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Splits a characteristic polynomial into linear factors whose roots are
/// drawn from `candidates`, returning `(root, multiplicity)` pairs and the
/// unresolved cofactor (constant 1 when fully split).
pub fn split_by_candidates(
    poly: &UniPoly,
    candidates: &[GoldenScalar],
) -> (Vec<(GoldenScalar, usize)>, UniPoly) {
    let mut rest = poly.clone();
    let mut roots = Vec::new();
    let mut seen: Vec<&GoldenScalar> = Vec::new();
    for cand in candidates {
        if seen.contains(&cand) {
            continue;
        }
        seen.push(cand);
        let mut mult = 0;
        loop {
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let (q, r) = rest.div_linear(cand);
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand.clone(), mult));
        }
    }
    (roots, rest)
}

/// Normalized vector and its combination over generator ids.
type EchelonRow<K> = (BTreeMap<K, GoldenScalar>, BTreeMap<usize, GoldenScalar>);

/// Incremental echelon basis of sparse vectors indexed by `K`, remembering
/// how each basis vector combines the inserted generators.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    /// Keyed by pivot.
    rows: BTreeMap<K, EchelonRow<K>>,
    generators: usize,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        Self {
            rows: BTreeMap::new(),
            generators: 0,
        }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// combination of generators that was subtracted.
    pub fn reduce(
        &self,
        v: &BTreeMap<K, GoldenScalar>,
    ) -> (BTreeMap<K, GoldenScalar>, BTreeMap<usize, GoldenScalar>) {
        let mut v = v.clone();
        let mut used: BTreeMap<usize, GoldenScalar> = BTreeMap::new();
        // Pivots are eliminated in decreasing key order; each basis vector
        // has no entries above its pivot.
        loop {
            let Some(key) = v
                .keys()
                .rev()
                .find(|k| self.rows.contains_key(*k))
                .cloned()
            else {
                break;
            };
            let f = v[&key].clone();
            let (row, comb) = &self.rows[&key];
            for (k, c) in row {
                axpy(&mut v, k, &-(&f * c));
            }
            for (g, c) in comb {
                axpy(&mut used, g, &(&f * c));
            }
        }
        (v, used)
    }

    /// Adds a generator; returns its id and whether it enlarged the span.
    pub fn insert(&mut self, v: &BTreeMap<K, GoldenScalar>) -> (usize, bool) {
        let id = self.generators;
        self.generators += 1;
        let (res, used) = self.reduce(v);
        let Some((pivot, pc)) = res.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return (id, false);
        };
        let inv = pc.inv().expect("nonzero pivot");
        let row: BTreeMap<K, GoldenScalar> = res.iter().map(|(k, c)| (k.clone(), c * &inv)).collect();
        // combination: (generator id − used) / pc
        let mut comb: BTreeMap<usize, GoldenScalar> = BTreeMap::new();
        comb.insert(id, inv.clone());
        for (g, c) in used {
            axpy(&mut comb, &g, &-(&c * &inv));
        }
        // keep rows fully reduced: eliminate the new pivot from older rows
        for (old_row, old_comb) in self.rows.values_mut() {
            let Some(f) = old_row.get(&pivot).cloned() else {
                continue;
            };
            for (k, c) in &row {
                axpy(old_row, k, &-(&f * c));
            }
            for (g, c) in &comb {
                axpy(old_comb, g, &-(&f * c));
            }
        }
        self.rows.insert(pivot, (row, comb));
        (id, true)
    }

    /// If `v` lies in the span, the combination of generator ids producing it.
    pub fn express(&self, v: &BTreeMap<K, GoldenScalar>) -> Option<BTreeMap<usize, GoldenScalar>> {
        let (res, used) = self.reduce(v);
        res.is_empty().then_some(used)
    }
}

fn axpy<K: Ord + Clone>(v: &mut BTreeMap<K, GoldenScalar>, k: &K, c: &GoldenScalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(k) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                v.remove(k);
            }
        }
        None => {
            v.insert(k.clone(), c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GoldenScalar {
        GoldenScalar::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| g(x)).collect()).collect())
    }

    /// det(λI − M) at a point, via elimination: an independent route to the
    /// characteristic polynomial.
    fn charpoly_at(mat: &Matrix, lambda: &GoldenScalar) -> GoldenScalar {
        let mut s = mat.shifted(lambda);
        for v in s.data.iter_mut() {
            *v = -v.clone();
        }
        s.determinant().unwrap()
    }

    #[test]
    fn berkowitz_matches_elimination() {
        let mats = [
            m(&[&[2, 1], &[1, 3]]),
            m(&[&[0, 1, 0], &[0, 0, 1], &[6, -11, 6]]),
            m(&[&[1, 2, 3, 4], &[0, -1, 5, 2], &[7, 0, 0, 1], &[3, 3, -2, 4]]),
        ];
        for mat in &mats {
            let cp = mat.charpoly().unwrap();
            assert_eq!(cp.degree(), Some(mat.rows()));
            for l in -3..=3 {
                assert_eq!(cp.eval(&g(l)), charpoly_at(mat, &g(l)));
            }
        }
        let golden = Matrix::from_rows(vec![
            vec![GoldenScalar::phi_plus(), g(1)],
            vec![g(2), GoldenScalar::phi_minus()],
        ]);
        let cp = golden.charpoly().unwrap();
        assert_eq!(cp.eval(&GoldenScalar::sqrt5()), charpoly_at(&golden, &GoldenScalar::sqrt5()));
    }

    #[test]
    fn companion_roots_split() {
        let mat = m(&[&[0, 1, 0], &[0, 0, 1], &[6, -11, 6]]);
        let cp = mat.charpoly().unwrap();
        let (roots, rest) = split_by_candidates(&cp, &[g(1), g(2), g(3), g(4)]);
        assert_eq!(roots, vec![(g(1), 1), (g(2), 1), (g(3), 1)]);
        assert_eq!(rest, UniPoly::one());
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        let x = a.solve(&[g(6), g(12)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![g(6), g(12)]);
        assert!(a.solve(&[g(1), g(1)]).unwrap().is_none());
    }

    #[test]
    fn sparse_span_membership() {
        let mut e: SparseEchelon<u32> = SparseEchelon::new();
        let v = |pairs: &[(u32, i64)]| -> BTreeMap<u32, GoldenScalar> {
            pairs.iter().map(|&(k, c)| (k, g(c))).collect()
        };
        assert!(e.insert(&v(&[(0, 1), (1, 1)])).1);
        assert!(e.insert(&v(&[(1, 1), (2, 1)])).1);
        assert!(!e.insert(&v(&[(0, 1), (2, -1)])).1);
        let target = v(&[(0, 2), (1, 5), (2, 3)]);
        let comb = e.express(&target).unwrap();
        assert_eq!(comb.get(&0), Some(&g(2)));
        assert_eq!(comb.get(&1), Some(&g(3)));
        assert!(e.express(&v(&[(3, 1)])).is_none());
    }
}
