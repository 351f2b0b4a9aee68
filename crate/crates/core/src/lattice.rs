//! Exact integer linear algebra: Smith and Hermite normal forms, integer
//! kernels and solves, and sublattices of `ℤ^k` with sum, intersection and
//! quotient invariants.
//!
//! All arithmetic is over `BigInt`. Pivot growth in the Smith form makes
//! fixed-width integers unsafe even for small ranks.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ambient rank mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("bad matrix entry `{0}`")]
    BadEntry(String),
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LatticeError::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(rows).expect("ragged rows")
    }

    /// Matrix whose columns are the given vectors, each of length `height`.
    pub fn from_columns(height: usize, columns: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        let mut m = Self::zeros(height, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != height {
                return Err(LatticeError::Dimension(format!("column {j} has length {}, expected {height}", col.len())));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        if v.len() != self.cols {
            return Err(LatticeError::Dimension(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum()).collect())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.rows != other.rows {
            return Err(LatticeError::Dimension("hstack row mismatch".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Columns `range` of the matrix.
    pub fn column_slice(&self, start: usize, end: usize) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = (start..end).map(|j| self.column(j)).collect();
        Self::from_columns(self.rows, &cols).expect("consistent heights")
    }

    /// Rows `start..end` of the matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> IntMatrix {
        Self::from_rows((start..end).map(|i| self.row(i)).collect())
            .unwrap_or_else(|_| Self::zeros(end - start, self.cols))
            .with_cols(self.cols)
    }

    fn with_cols(mut self, cols: usize) -> Self {
        if self.rows == 0 {
            self.cols = cols;
        }
        self
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * prev })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] += v;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Inverse of a unimodular square matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::NotUnimodular);
        }
        let snf = smith_normal_form(self);
        // U A V = S = I (up to the sign fix inside the SNF) ⇒ A⁻¹ = V U.
        if (0..self.rows).any(|i| !snf.s[(i, i)].is_one()) {
            return Err(LatticeError::NotUnimodular);
        }
        snf.v.mul(&snf.u)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<BigInt>().map_err(|_| LatticeError::BadEntry(s.clone())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        IntMatrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

/// `s = u · a · v` with `u`, `v` unimodular and `s` diagonal, its entries
/// nonnegative and each dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !s[(i, j)].is_zero())
            .min_by(|&p, &q| s[p].abs().cmp(&s[q].abs()));
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut dirty = false;
        for i in t + 1..m {
            let q = s[(i, t)].div_floor(&s[(t, t)]);
            let negq = -q;
            s.add_row_multiple(i, t, &negq);
            u.add_row_multiple(i, t, &negq);
            dirty |= !s[(i, t)].is_zero();
        }
        for j in t + 1..n {
            let q = s[(t, j)].div_floor(&s[(t, t)]);
            let negq = -q;
            s.add_col_multiple(j, t, &negq);
            v.add_col_multiple(j, t, &negq);
            dirty |= !s[(t, j)].is_zero();
        }
        if dirty {
            continue;
        }
        // Row and column cleared; enforce divisibility on the trailing block.
        let offender = (t + 1..m)
            .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
        if let Some((i, _)) = offender {
            let one = BigInt::one();
            s.add_row_multiple(t, i, &one);
            u.add_row_multiple(t, i, &one);
            continue;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { s, u, v }
}

/// Row-style Hermite normal form: echelon rows, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped, so
/// the result is the canonical basis of the row lattice.
pub fn row_hermite_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m).filter(|&i| !h[(i, c)].is_zero()).min_by(|&p, &q| h[(p, c)].abs().cmp(&h[(q, c)].abs()));
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    h.row_slice(0, r)
}

/// A ℤ-basis of `{x : a·x = 0}`, as the columns of the returned matrix.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    snf.v.column_slice(r, a.cols())
}

/// Some integer solution of `a·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
    if b.len() != a.rows() {
        return Err(LatticeError::Dimension("right-hand side length".into()));
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, target) in ub.iter().enumerate() {
        let d = if i < a.cols() { snf.s[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !target.is_zero() {
                return Ok(None);
            }
        } else {
            if !target.is_multiple_of(&d) {
                return Ok(None);
            }
            y[i] = target / &d;
        }
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}

/// A sublattice of `ℤ^ambient`, stored by its canonical Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient: usize,
    /// `ambient × rank`; the columns are the Hermite basis vectors.
    basis: IntMatrix,
}

impl Sublattice {
    /// The lattice generated by the columns of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let ambient = generators.rows();
        let hnf = row_hermite_form(&generators.transpose());
        let basis = if hnf.rows() == 0 { IntMatrix::zeros(ambient, 0) } else { hnf.transpose() };
        Sublattice { ambient, basis }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        Ok(Self::from_generators(&IntMatrix::from_columns(ambient, vectors)?))
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice { ambient, basis: IntMatrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generators(&IntMatrix::identity(ambient))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        if v.len() != self.ambient {
            return Err(LatticeError::AmbientMismatch(self.ambient, v.len()));
        }
        if self.rank() == 0 {
            return Ok(v.iter().all(Zero::is_zero));
        }
        Ok(solve_integer(&self.basis, v)?.is_some())
    }

    pub fn is_sublattice_of(&self, other: &Sublattice) -> Result<bool, LatticeError> {
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff `ℤ^ambient / self` is torsion free.
    pub fn is_primitive(&self) -> bool {
        quotient_invariants(self).torsion.is_empty()
    }
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(ambient {}, basis {:?})", self.ambient, self.basis.columns())
    }
}

pub fn lattice_sum(l1: &Sublattice, l2: &Sublattice) -> Result<Sublattice, LatticeError> {
    if l1.ambient != l2.ambient {
        return Err(LatticeError::AmbientMismatch(l1.ambient, l2.ambient));
    }
    Ok(Sublattice::from_generators(&l1.basis.hstack(&l2.basis)?))
}

/// Exact intersection, from the kernel of `[B1 | -B2]`.
pub fn lattice_intersection(l1: &Sublattice, l2: &Sublattice) -> Result<Sublattice, LatticeError> {
    if l1.ambient != l2.ambient {
        return Err(LatticeError::AmbientMismatch(l1.ambient, l2.ambient));
    }
    if l1.rank() == 0 || l2.rank() == 0 {
        return Ok(Sublattice::zero(l1.ambient));
    }
    let mut neg = l2.basis.clone();
    for j in 0..neg.cols() {
        neg.negate_col(j);
    }
    let kernel = integer_kernel(&l1.basis.hstack(&neg)?);
    let coeffs = kernel.row_slice(0, l1.rank());
    Ok(Sublattice::from_generators(&l1.basis.mul(&coeffs)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl QuotientInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for QuotientInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariant factors of `ℤ^ambient / L`.
pub fn quotient_invariants(l: &Sublattice) -> QuotientInvariants {
    let snf = smith_normal_form(&l.basis);
    let diag = snf.diagonal();
    let torsion = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    QuotientInvariants { free_rank: l.ambient - l.rank(), torsion }
}

/// Shorthand for building `BigInt` vectors in tests and fixtures.
pub fn ivec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(ambient: usize, vs: &[&[i64]]) -> Sublattice {
        Sublattice::from_vectors(ambient, &vs.iter().map(|v| ivec(v)).collect::<Vec<_>>()).unwrap()
    }

    fn check_smith(a: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(a);
        assert_eq!(f.u.mul(a).unwrap().mul(&f.v).unwrap(), f.s);
        assert!(f.u.determinant().unwrap().abs().is_one());
        assert!(f.v.determinant().unwrap().abs().is_one());
        f
    }

    #[test]
    fn smith_examples() {
        let f = check_smith(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(f.diagonal(), ivec(&[1, 6]));

        let z = IntMatrix::zeros(2, 3);
        let f = check_smith(&z);
        assert!(f.s.is_zero());
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));

        let f = check_smith(&IntMatrix::from_i64(&[&[1, -1], &[0, 0]]));
        assert_eq!(f.diagonal(), ivec(&[1, 0]));
    }

    /// Brute force over 2×2 unimodular pairs with entries in [-3, 3]: the
    /// smallest positive gcd of entries of U·A·V at position (0,0) is the
    /// first invariant factor, and |det| = d1·d2.
    #[test]
    fn smith_matches_brute_force_on_small_input() {
        let a = IntMatrix::from_i64(&[&[1, -1], &[0, 0]]);
        let mut unimods = Vec::new();
        for p in -3..=3i64 {
            for q in -3..=3 {
                for r in -3..=3 {
                    for s in -3..=3 {
                        if (p * s - q * r).abs() == 1 {
                            unimods.push(IntMatrix::from_i64(&[&[p, q], &[r, s]]));
                        }
                    }
                }
            }
        }
        let mut found = false;
        for u in &unimods {
            let ua = u.mul(&a).unwrap();
            for v in &unimods {
                let b = ua.mul(v).unwrap();
                if b == IntMatrix::from_i64(&[&[1, 0], &[0, 0]]) {
                    found = true;
                }
            }
        }
        assert!(found);
        assert_eq!(smith_normal_form(&a).diagonal(), ivec(&[1, 0]));
    }

    #[test]
    fn sum_examples() {
        let e1 = lat(2, &[&[1, 0]]);
        let e2 = lat(2, &[&[0, 1]]);
        assert_eq!(lattice_sum(&e1, &e2).unwrap(), Sublattice::full(2));
        assert_eq!(lattice_sum(&e1, &e1).unwrap(), e1);
        assert!(lattice_sum(&e1, &lat(3, &[&[1, 0, 0]])).is_err());
    }

    #[test]
    fn intersection_examples() {
        let e1 = lat(2, &[&[1, 0]]);
        let e2 = lat(2, &[&[0, 1]]);
        assert_eq!(lattice_intersection(&e1, &e2).unwrap().rank(), 0);
        let gamma = lat(2, &[&[-1, -1]]);
        let both = lattice_sum(&e1, &e2).unwrap();
        let h2 = lattice_intersection(&gamma, &both).unwrap();
        assert_eq!(h2, lat(2, &[&[1, 1]]));
        let l = lat(3, &[&[2, 4, 0], &[0, 3, 3]]);
        assert_eq!(lattice_intersection(&l, &l).unwrap(), l);
        // 2ℤ ∩ 3ℤ = 6ℤ
        assert_eq!(lattice_intersection(&lat(1, &[&[2]]), &lat(1, &[&[3]])).unwrap(), lat(1, &[&[6]]));
    }

    #[test]
    fn quotient_examples() {
        assert!(quotient_invariants(&Sublattice::full(2)).is_trivial());
        let q = quotient_invariants(&lat(2, &[&[2, 0]]));
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.torsion, ivec(&[2]));
        assert_eq!(q.to_string(), "Z + Z/2");
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = lat(2, &[&[1, 1], &[0, 2]]);
        let b = lat(2, &[&[1, -1], &[2, 0], &[1, 1]]);
        assert_eq!(a, b);
        assert_eq!(lat(2, &[&[0, 0]]).rank(), 0);
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_i64(&[&[2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        assert_eq!(solve_integer(&a, &ivec(&[3])).unwrap(), None);
        let x = solve_integer(&a, &ivec(&[8])).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), ivec(&[8]));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.determinant().unwrap(), BigInt::one());
        let inv = a.unimodular_inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntMatrix::identity(2));
        assert!(IntMatrix::from_i64(&[&[2, 0], &[0, 1]]).unimodular_inverse().is_err());
        assert_eq!(
            IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).determinant().unwrap(),
            BigInt::from(-3)
        );
    }

    #[test]
    fn json_uses_decimal_strings() {
        let a = IntMatrix::from_i64(&[&[1, -2]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1","-2"]]"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
