//! Exact linear algebra over ℚ(i): dense matrices, sparse row reduction and
//! canonical subspaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussRational as Q;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, r: usize) -> Vec<Q> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(r, c)] += &prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Q {
        let mut acc = Q::zero();
        for k in 0..self.rows.min(self.cols) {
            acc += &self[(k, k)];
        }
        acc
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert(dense_to_sparse(&self.row(r)));
        }
        ech.rank()
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Q::zero();
            };
            if p != col {
                for c in 0..n {
                    a.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                for c in col..n {
                    let delta = &f * &a[(col, c)];
                    a[(r, c)] -= &delta;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; a singular matrix is an error.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| Error::Singular(format!("no pivot in column {}", col + 1)))?;
            if p != col {
                for c in 0..n {
                    a.data.swap(p * n + c, col * n + c);
                    inv.data.swap(p * n + c, col * n + c);
                }
            }
            let pinv = a[(col, col)].inv()?;
            for c in 0..n {
                a[(col, c)] = &a[(col, c)] * &pinv;
                inv[(col, c)] = &inv[(col, c)] * &pinv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let da = &f * &a[(col, c)];
                    a[(r, c)] -= &da;
                    let di = &f * &inv[(col, c)];
                    inv[(r, c)] -= &di;
                }
            }
        }
        Ok(inv)
    }

    /// Basis of `{x : self·x = 0}` in canonical form.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut ech = Echelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert(dense_to_sparse(&self.row(r)));
        }
        ech.null_space()
            .into_iter()
            .map(|v| sparse_to_dense(&v, self.cols))
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            &self[(r / other.rows, c / other.cols)] * &other[(r % other.rows, c % other.cols)]
        })
    }
}

/// A sparse vector/row: column index → nonzero value.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn dense_to_sparse(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (&k, x) in v {
        out[k] = x.clone();
    }
    out
}

/// `acc += s * x`, dropping entries that cancel.
pub fn add_scaled(acc: &mut SparseVec, s: &Q, x: &SparseVec) {
    if s.is_zero() {
        return;
    }
    axpy(acc, &-s, x);
}

/// `row -= factor * pivot`, dropping entries that cancel.
fn axpy(row: &mut SparseVec, factor: &Q, pivot: &SparseVec) {
    for (&c, p) in pivot {
        let delta = factor * p;
        match row.get_mut(&c) {
            Some(x) => {
                *x -= &delta;
                if x.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, -delta);
            }
        }
    }
}

/// Incremental row echelon form with pivots normalized to 1.
///
/// Each stored row is keyed by its leading column. The reduced form is
/// unique for a given row space, so the null-space basis returned by
/// [`Echelon::null_space`] does not depend on insertion order.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseVec>,
    reduced: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
            reduced: true,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Reduces `row` against the stored pivots and returns the remainder.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let Some((&c, x)) = row.range(cursor..).next() else {
                return row;
            };
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = x.clone();
                    axpy(&mut row, &f, p);
                }
                None => cursor = c + 1,
            }
        }
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let row = self.reduce(row);
        let Some((&lead, x)) = row.iter().next() else {
            return false;
        };
        debug_assert!(lead < self.ncols);
        let inv = x.inv().expect("nonzero leading entry");
        let row: SparseVec = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        self.pivots.insert(lead, row);
        self.reduced = false;
        true
    }

    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Brings the stored rows to reduced row echelon form.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let pivot = self.pivots[&c].clone();
            for (_, row) in self.pivots.range_mut(..c) {
                if let Some(f) = row.get(&c).cloned() {
                    axpy(row, &f, &pivot);
                }
            }
        }
        self.reduced = true;
    }

    /// Reduced rows in increasing leading-column order.
    pub fn rows(&mut self) -> Vec<SparseVec> {
        self.make_reduced();
        self.pivots.values().cloned().collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Canonical null-space basis: one vector per free column (ascending),
    /// with a 1 in that column and zeros in every other free column.
    pub fn null_space(&mut self) -> Vec<SparseVec> {
        self.make_reduced();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(free, Q::one());
            for (&pc, row) in &self.pivots {
                if let Some(x) = row.get(&free) {
                    v.insert(pc, -x.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// A subspace of `Q^ambient`, stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(|k| unit(ambient, k)))
    }

    pub fn span<I: IntoIterator<Item = Vec<Q>>>(ambient: usize, vectors: I) -> Self {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length");
            ech.insert(dense_to_sparse(&v));
        }
        Subspace {
            ambient,
            basis: ech.rows(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.basis
            .iter()
            .map(|v| sparse_to_dense(v, self.ambient))
            .collect()
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient);
        for v in &self.basis {
            ech.insert(v.clone());
        }
        ech
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.echelon().contains(&dense_to_sparse(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let ech = other.echelon();
        self.basis.iter().all(|v| ech.contains(v))
    }

    /// Image of the subspace under `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::span(m.rows(), self.basis().iter().map(|v| m.mul_vec(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis().into_iter().chain(other.basis()))
    }

    /// Stable under `m` (which must be square of the ambient size).
    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.image(m).is_subspace_of(self)
    }
}

pub fn unit(len: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); len];
    v[k] = Q::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn empty_system_has_identity_null_space() {
        let mut e = Echelon::new(3);
        let ns = e.null_space();
        assert_eq!(ns.len(), 3);
        for (k, v) in ns.iter().enumerate() {
            assert_eq!(sparse_to_dense(v, 3), unit(3, k));
        }
    }

    #[test]
    fn two_rows_pin_everything() {
        let mut e = Echelon::new(2);
        e.insert(dense_to_sparse(&[q(1), q(-1)]));
        e.insert(dense_to_sparse(&[q(0), q(1)]));
        assert_eq!(e.nullity(), 0);
        assert!(e.null_space().is_empty());
    }

    #[test]
    fn null_space_independent_of_row_order() {
        let rows = vec![
            vec![q(1), q(2), q(0), q(3)],
            vec![q(2), q(4), q(1), q(1)],
            vec![q(3), q(6), q(1), q(4)],
        ];
        let mut a = Echelon::new(4);
        let mut b = Echelon::new(4);
        for r in &rows {
            a.insert(dense_to_sparse(r));
        }
        for r in rows.iter().rev() {
            b.insert(dense_to_sparse(r));
        }
        assert_eq!(a.null_space(), b.null_space());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]]);
        assert_eq!(m.det(), q(1));
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(2));
        let s = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(s.inverse().is_err());
        assert_eq!(s.det(), q(0));
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1), q(1)], vec![q(0), q(1), q(-1)]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn subspace_inclusion() {
        let a = Subspace::span(3, vec![unit(3, 0)]);
        let b = Subspace::span(3, vec![unit(3, 0), unit(3, 1)]);
        assert!(a.is_subspace_of(&b));
        assert!(!b.is_subspace_of(&a));
        assert_eq!(a.sum(&b), b);
    }
}
