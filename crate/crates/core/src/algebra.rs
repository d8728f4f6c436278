//! Elementary Lie algebras of order 3: `g = g0 ⊕ g1` with a bracket on g0,
//! an action of g0 on g1 and a totally symmetric 3-bracket `S³(g1) → g0`.
//!
//! Indices are 0-based in this module. The JSON layer shifts them by one.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, Matrix, SparseVec};
use crate::scalar::GaussRational as Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GradedDims {
    pub m: usize,
    pub n: usize,
}

/// Which bracket to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// g0 × g0 → g0
    B00,
    /// g0 × g1 → g1
    B01,
    /// g1 × g1 × g1 → g0
    B111,
}

pub type CKey = (usize, usize, usize);
pub type DKey = (usize, usize, usize);
pub type EKey = (usize, usize, usize, usize);

pub fn sort3(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// Distinct orderings of the multiset `{a, b, c}`.
pub fn perms3(a: usize, b: usize, c: usize) -> Vec<(usize, usize, usize)> {
    let mut out = vec![
        (a, b, c),
        (a, c, b),
        (b, a, c),
        (b, c, a),
        (c, a, b),
        (c, b, a),
    ];
    out.sort_unstable();
    out.dedup();
    out
}

/// A point of the structure-constant variety, valid or not.
///
/// Storage is canonical: `C` keys have `i < j`, `E` keys have `a ≤ b ≤ c`,
/// and no zero is ever stored. Equality ignores the label.
#[derive(Clone)]
pub struct AlgebraOrder3 {
    pub label: String,
    dims: GradedDims,
    c: BTreeMap<CKey, Q>,
    d: BTreeMap<DKey, Q>,
    e: BTreeMap<EKey, Q>,
}

/// A triple of multilinear maps with the shape of a bracket; used for
/// deformation terms and cochains.
pub type BracketTriple = AlgebraOrder3;

impl PartialEq for AlgebraOrder3 {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.c == other.c && self.d == other.d && self.e == other.e
    }
}

impl Eq for AlgebraOrder3 {}

impl fmt::Debug for AlgebraOrder3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (m={}, n={})", self.label, self.dims.m, self.dims.n)?;
        for ((i, j, k), v) in &self.c {
            writeln!(f, "  C[{},{}->{}] = {}", i + 1, j + 1, k + 1, v)?;
        }
        for ((i, b, c), v) in &self.d {
            writeln!(f, "  D[{},{}->{}] = {}", i + 1, b + 1, c + 1, v)?;
        }
        for ((a, b, c, i), v) in &self.e {
            writeln!(f, "  E[{},{},{}->{}] = {}", a + 1, b + 1, c + 1, i + 1, v)?;
        }
        Ok(())
    }
}

fn accumulate<K: Ord + Copy>(map: &mut BTreeMap<K, Q>, key: K, v: &Q) {
    if v.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(Q::zero);
    *entry += v;
    if entry.is_zero() {
        map.remove(&key);
    }
}

fn insert_checked<K: Ord + Copy>(
    map: &mut BTreeMap<K, Q>,
    key: K,
    v: Q,
    describe: impl Fn() -> String,
) -> Result<()> {
    match map.get(&key) {
        Some(old) if *old != v => Err(Error::Inconsistent(format!(
            "{}: {} vs {}",
            describe(),
            old,
            v
        ))),
        _ => {
            map.insert(key, v);
            Ok(())
        }
    }
}

impl AlgebraOrder3 {
    /// The zero bracket on `g0 ⊕ g1` with the given dimensions.
    pub fn zero(label: impl Into<String>, m: usize, n: usize) -> Self {
        AlgebraOrder3 {
            label: label.into(),
            dims: GradedDims { m, n },
            c: BTreeMap::new(),
            d: BTreeMap::new(),
            e: BTreeMap::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dims(&self) -> GradedDims {
        self.dims
    }

    pub fn m(&self) -> usize {
        self.dims.m
    }

    pub fn n(&self) -> usize {
        self.dims.n
    }

    pub fn c_entries(&self) -> &BTreeMap<CKey, Q> {
        &self.c
    }

    pub fn d_entries(&self) -> &BTreeMap<DKey, Q> {
        &self.d
    }

    pub fn e_entries(&self) -> &BTreeMap<EKey, Q> {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty() && self.d.is_empty() && self.e.is_empty()
    }

    fn check_c(&self, i: usize, j: usize, k: usize) {
        let m = self.dims.m;
        assert!(i < m && j < m && k < m, "C index out of range");
    }

    fn check_d(&self, i: usize, b: usize, c: usize) {
        assert!(i < self.dims.m && b < self.dims.n && c < self.dims.n, "D index out of range");
    }

    fn check_e(&self, a: usize, b: usize, c: usize, i: usize) {
        let n = self.dims.n;
        assert!(a < n && b < n && c < n && i < self.dims.m, "E index out of range");
    }

    /// Adds `v` to `C_{ij}^k` (and `−v` to `C_{ji}^k`).
    pub fn add_c(&mut self, i: usize, j: usize, k: usize, v: &Q) {
        self.check_c(i, j, k);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => accumulate(&mut self.c, (i, j, k), v),
            std::cmp::Ordering::Greater => accumulate(&mut self.c, (j, i, k), &-v),
            std::cmp::Ordering::Equal => {
                assert!(v.is_zero(), "C_ii must vanish");
            }
        }
    }

    pub fn add_d(&mut self, i: usize, b: usize, c: usize, v: &Q) {
        self.check_d(i, b, c);
        accumulate(&mut self.d, (i, b, c), v);
    }

    /// Adds `v` to the symmetric entry `E_{abc}^i`.
    pub fn add_e(&mut self, a: usize, b: usize, c: usize, i: usize, v: &Q) {
        self.check_e(a, b, c, i);
        let (a, b, c) = sort3(a, b, c);
        accumulate(&mut self.e, (a, b, c, i), v);
    }

    /// Logical value `C_{ij}^k` (antisymmetric).
    pub fn c(&self, i: usize, j: usize, k: usize) -> Q {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.c.get(&(i, j, k)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => -self.c.get(&(j, i, k)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Equal => Q::zero(),
        }
    }

    pub fn d(&self, i: usize, b: usize, c: usize) -> Q {
        self.d.get(&(i, b, c)).cloned().unwrap_or_default()
    }

    /// Logical value `E_{abc}^i` (totally symmetric).
    pub fn e(&self, a: usize, b: usize, c: usize, i: usize) -> Q {
        let (a, b, c) = sort3(a, b, c);
        self.e.get(&(a, b, c, i)).cloned().unwrap_or_default()
    }

    /// Builds a canonical algebra from raw entries in any key order.
    ///
    /// Entries that are equivalent under the symmetries must agree;
    /// conflicting values are an error naming the entry (1-based).
    pub fn from_raw(
        label: impl Into<String>,
        m: usize,
        n: usize,
        c: &[(CKey, Q)],
        d: &[(DKey, Q)],
        e: &[(EKey, Q)],
    ) -> Result<Self> {
        let mut alg = AlgebraOrder3::zero(label, m, n);
        for &((i, j, k), ref v) in c {
            if i >= m || j >= m || k >= m {
                return Err(Error::IndexOutOfRange(format!(
                    "C entry ({},{},{}) with m = {}",
                    i + 1,
                    j + 1,
                    k + 1,
                    m
                )));
            }
            let (key, val) = match i.cmp(&j) {
                std::cmp::Ordering::Less => ((i, j, k), v.clone()),
                std::cmp::Ordering::Greater => ((j, i, k), -v),
                std::cmp::Ordering::Equal => {
                    if v.is_zero() {
                        continue;
                    }
                    return Err(Error::Inconsistent(format!(
                        "C entry ({},{},{}) must vanish by antisymmetry",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            };
            insert_checked(&mut alg.c, key, val, || {
                format!("C entry ({},{},{})", i + 1, j + 1, k + 1)
            })?;
        }
        for &((i, b, cc), ref v) in d {
            if i >= m || b >= n || cc >= n {
                return Err(Error::IndexOutOfRange(format!(
                    "D entry ({},{},{}) with m = {}, n = {}",
                    i + 1,
                    b + 1,
                    cc + 1,
                    m,
                    n
                )));
            }
            insert_checked(&mut alg.d, (i, b, cc), v.clone(), || {
                format!("D entry ({},{},{})", i + 1, b + 1, cc + 1)
            })?;
        }
        for &((a, b, cc, i), ref v) in e {
            if a >= n || b >= n || cc >= n || i >= m {
                return Err(Error::IndexOutOfRange(format!(
                    "E entry ({},{},{},{}) with m = {}, n = {}",
                    a + 1,
                    b + 1,
                    cc + 1,
                    i + 1,
                    m,
                    n
                )));
            }
            let (x, y, z) = sort3(a, b, cc);
            insert_checked(&mut alg.e, (x, y, z, i), v.clone(), || {
                format!("E entry ({},{},{},{})", a + 1, b + 1, cc + 1, i + 1)
            })?;
        }
        alg.c.retain(|_, v| !v.is_zero());
        alg.d.retain(|_, v| !v.is_zero());
        alg.e.retain(|_, v| !v.is_zero());
        Ok(alg)
    }

    /// Re-runs canonicalization on the stored entries. Storage is always
    /// canonical, so this is the identity; it exists for API symmetry with
    /// [`AlgebraOrder3::from_raw`].
    pub fn canonicalize(&self) -> Result<Self> {
        let c: Vec<_> = self.c.iter().map(|(k, v)| (*k, v.clone())).collect();
        let d: Vec<_> = self.d.iter().map(|(k, v)| (*k, v.clone())).collect();
        let e: Vec<_> = self.e.iter().map(|(k, v)| (*k, v.clone())).collect();
        AlgebraOrder3::from_raw(self.label.clone(), self.dims.m, self.dims.n, &c, &d, &e)
    }

    // ---- linear structure on bracket triples ----

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "adding triples of different shape");
        let mut out = self.clone();
        for (k, v) in &other.c {
            accumulate(&mut out.c, *k, v);
        }
        for (k, v) in &other.d {
            accumulate(&mut out.d, *k, v);
        }
        for (k, v) in &other.e {
            accumulate(&mut out.e, *k, v);
        }
        out
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = AlgebraOrder3::zero(self.label.clone(), self.dims.m, self.dims.n);
        if s.is_zero() {
            return out;
        }
        out.c = self.c.iter().map(|(k, v)| (*k, v * s)).collect();
        out.d = self.d.iter().map(|(k, v)| (*k, v * s)).collect();
        out.e = self.e.iter().map(|(k, v)| (*k, v * s)).collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    /// Keeps only the three components selected.
    pub fn parts(&self, c: bool, d: bool, e: bool) -> Self {
        let mut out = AlgebraOrder3::zero(self.label.clone(), self.dims.m, self.dims.n);
        if c {
            out.c = self.c.clone();
        }
        if d {
            out.d = self.d.clone();
        }
        if e {
            out.e = self.e.clone();
        }
        out
    }

    pub fn set_e_tensor(&mut self, e: BTreeMap<EKey, Q>) {
        for &(a, b, c, i) in e.keys() {
            self.check_e(a, b, c, i);
            assert!(a <= b && b <= c, "E key not sorted");
        }
        self.e = e.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    }

    // ---- brackets on basis elements ----

    /// `[X_i, X_j]` as a sparse vector of g0.
    pub fn br00(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => SparseVec::new(),
            std::cmp::Ordering::Less => self
                .c
                .range((i, j, 0)..=(i, j, usize::MAX))
                .map(|(&(_, _, k), v)| (k, v.clone()))
                .collect(),
            std::cmp::Ordering::Greater => self
                .c
                .range((j, i, 0)..=(j, i, usize::MAX))
                .map(|(&(_, _, k), v)| (k, -v))
                .collect(),
        }
    }

    /// `[X_i, Y_b]` as a sparse vector of g1.
    pub fn br01(&self, i: usize, b: usize) -> SparseVec {
        self.d
            .range((i, b, 0)..=(i, b, usize::MAX))
            .map(|(&(_, _, c), v)| (c, v.clone()))
            .collect()
    }

    /// `{Y_a, Y_b, Y_c}` as a sparse vector of g0.
    pub fn br111(&self, a: usize, b: usize, c: usize) -> SparseVec {
        let (a, b, c) = sort3(a, b, c);
        self.e
            .range((a, b, c, 0)..=(a, b, c, usize::MAX))
            .map(|(&(_, _, _, i), v)| (i, v.clone()))
            .collect()
    }

    /// Bilinear extension of `br00` to sparse vectors.
    pub fn act00(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, xi) in x {
            for (&j, yj) in y {
                if i != j {
                    add_scaled(&mut out, &(xi * yj), &self.br00(i, j));
                }
            }
        }
        out
    }

    pub fn act01(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, xi) in x {
            for (&b, yb) in y {
                add_scaled(&mut out, &(xi * yb), &self.br01(i, b));
            }
        }
        out
    }

    pub fn act111(&self, y1: &SparseVec, y2: &SparseVec, y3: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&a, ya) in y1 {
            for (&b, yb) in y2 {
                let ab = ya * yb;
                for (&c, yc) in y3 {
                    add_scaled(&mut out, &(&ab * yc), &self.br111(a, b, c));
                }
            }
        }
        out
    }

    /// Evaluates one of the three brackets on dense coordinate vectors.
    pub fn evaluate_brackets(&self, which: Which, args: &[&[Q]]) -> Result<Vec<Q>> {
        let (m, n) = (self.dims.m, self.dims.n);
        let expect: &[usize] = match which {
            Which::B00 => &[m, m],
            Which::B01 => &[m, n],
            Which::B111 => &[n, n, n],
        };
        if args.len() != expect.len() || args.iter().zip(expect).any(|(a, &l)| a.len() != l) {
            return Err(Error::DimensionMismatch(format!(
                "{:?} expects argument lengths {:?}, got {:?}",
                which,
                expect,
                args.iter().map(|a| a.len()).collect::<Vec<_>>()
            )));
        }
        let mut out;
        match which {
            Which::B00 => {
                out = vec![Q::zero(); m];
                let (x, y) = (args[0], args[1]);
                for (&(i, j, k), v) in &self.c {
                    let w = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
                    if !w.is_zero() {
                        out[k] += &(v * &w);
                    }
                }
            }
            Which::B01 => {
                out = vec![Q::zero(); n];
                let (x, y) = (args[0], args[1]);
                for (&(i, b, c), v) in &self.d {
                    let w = &x[i] * &y[b];
                    if !w.is_zero() {
                        out[c] += &(v * &w);
                    }
                }
            }
            Which::B111 => {
                out = vec![Q::zero(); m];
                let (y1, y2, y3) = (args[0], args[1], args[2]);
                for (&(a, b, c, i), v) in &self.e {
                    let mut s = Q::zero();
                    for (p, q, r) in perms3(a, b, c) {
                        let t = &y1[p] * &y2[q];
                        if !t.is_zero() {
                            s += &(&t * &y3[r]);
                        }
                    }
                    if !s.is_zero() {
                        out[i] += &(v * &s);
                    }
                }
            }
        }
        Ok(out)
    }

    // ---- Jacobi identities ----

    pub fn jacobi_residuals(&self) -> JacobiResiduals {
        let (m, n) = (self.dims.m, self.dims.n);
        let unit = |k: usize| -> SparseVec { [(k, Q::one())].into_iter().collect() };
        let mut res = JacobiResiduals::default();

        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let mut r = self.act00(&self.br00(i, j), &unit(k));
                    add_scaled(&mut r, &Q::one(), &self.act00(&self.br00(j, k), &unit(i)));
                    add_scaled(&mut r, &Q::one(), &self.act00(&self.br00(k, i), &unit(j)));
                    if !r.is_empty() {
                        res.r1.insert((i, j, k), r);
                    }
                }
            }
        }

        for i in 0..m {
            for j in i + 1..m {
                for b in 0..n {
                    let mut r = self.act01(&self.br00(i, j), &unit(b));
                    add_scaled(&mut r, &-Q::one(), &self.act01(&unit(i), &self.br01(j, b)));
                    add_scaled(&mut r, &Q::one(), &self.act01(&unit(j), &self.br01(i, b)));
                    if !r.is_empty() {
                        res.r2.insert((i, j, b), r);
                    }
                }
            }
        }

        let minus = -Q::one();
        for i in 0..m {
            for a in 0..n {
                for b in a..n {
                    for c in b..n {
                        let mut r = self.act00(&unit(i), &self.br111(a, b, c));
                        let (ua, ub, uc) = (unit(a), unit(b), unit(c));
                        add_scaled(&mut r, &minus, &self.act111(&self.br01(i, a), &ub, &uc));
                        add_scaled(&mut r, &minus, &self.act111(&ua, &self.br01(i, b), &uc));
                        add_scaled(&mut r, &minus, &self.act111(&ua, &ub, &self.br01(i, c)));
                        if !r.is_empty() {
                            res.r3.insert((i, a, b, c), r);
                        }
                    }
                }
            }
        }

        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    for d in c..n {
                        let mut r = self.act01(&self.br111(b, c, d), &unit(a));
                        add_scaled(&mut r, &Q::one(), &self.act01(&self.br111(a, c, d), &unit(b)));
                        add_scaled(&mut r, &Q::one(), &self.act01(&self.br111(a, b, d), &unit(c)));
                        add_scaled(&mut r, &Q::one(), &self.act01(&self.br111(a, b, c), &unit(d)));
                        if !r.is_empty() {
                            res.r4.insert((a, b, c, d), r);
                        }
                    }
                }
            }
        }
        res
    }

    pub fn is_valid(&self) -> bool {
        self.jacobi_residuals().is_zero()
    }

    /// Checks only the Lie-algebra and module identities (J1, J2).
    pub fn j1_j2_hold(&self) -> bool {
        let r = self.parts(true, true, false).jacobi_residuals();
        r.r1.is_empty() && r.r2.is_empty()
    }

    // ---- basis change ----

    /// `φ'(X1, X2) = h0⁻¹ φ(h0 X1, h0 X2)` and likewise on the other slots.
    pub fn transform(&self, h: &BasisChange) -> Result<Self> {
        let (m, n) = (self.dims.m, self.dims.n);
        if h.h0.rows() != m || h.h1.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "basis change is {}+{}, algebra is {}+{}",
                h.h0.rows(),
                h.h1.rows(),
                m,
                n
            )));
        }
        let h0inv = h.h0.inverse()?;
        let h1inv = h.h1.inverse()?;
        let cols0: Vec<Vec<Q>> = (0..m).map(|k| h.h0.column(k)).collect();
        let cols1: Vec<Vec<Q>> = (0..n).map(|k| h.h1.column(k)).collect();
        let mut out = AlgebraOrder3::zero(self.label.clone(), m, n);
        if !self.c.is_empty() {
            for i in 0..m {
                for j in i + 1..m {
                    let v = self.evaluate_brackets(Which::B00, &[&cols0[i], &cols0[j]])?;
                    for (k, x) in h0inv.mul_vec(&v).into_iter().enumerate() {
                        accumulate(&mut out.c, (i, j, k), &x);
                    }
                }
            }
        }
        if !self.d.is_empty() {
            for i in 0..m {
                for b in 0..n {
                    let v = self.evaluate_brackets(Which::B01, &[&cols0[i], &cols1[b]])?;
                    for (c, x) in h1inv.mul_vec(&v).into_iter().enumerate() {
                        accumulate(&mut out.d, (i, b, c), &x);
                    }
                }
            }
        }
        if !self.e.is_empty() {
            for a in 0..n {
                for b in a..n {
                    for c in b..n {
                        let v = self.evaluate_brackets(
                            Which::B111,
                            &[&cols1[a], &cols1[b], &cols1[c]],
                        )?;
                        for (i, x) in h0inv.mul_vec(&v).into_iter().enumerate() {
                            accumulate(&mut out.e, (a, b, c, i), &x);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The g0 action on g1 as `m` matrices with `(ρ_i)_{cb} = D_{ib}^c`.
    pub fn rep_matrices(&self) -> Vec<Matrix> {
        let (m, n) = (self.dims.m, self.dims.n);
        let mut mats = vec![Matrix::zeros(n, n); m];
        for (&(i, b, c), v) in &self.d {
            mats[i][(c, b)] = v.clone();
        }
        mats
    }

    /// Sets the D tensor from operator matrices.
    pub fn set_rep_matrices(&mut self, mats: &[Matrix]) {
        assert_eq!(mats.len(), self.dims.m, "one matrix per g0 generator");
        self.d.clear();
        for (i, mat) in mats.iter().enumerate() {
            assert_eq!((mat.rows(), mat.cols()), (self.dims.n, self.dims.n));
            for c in 0..self.dims.n {
                for b in 0..self.dims.n {
                    let v = &mat[(c, b)];
                    if !v.is_zero() {
                        self.d.insert((i, b, c), v.clone());
                    }
                }
            }
        }
    }

    /// Number of stored nonzero constants.
    pub fn support_size(&self) -> usize {
        self.c.len() + self.d.len() + self.e.len()
    }
}

/// Nonzero residuals of the four Jacobi identities, keyed by the basis
/// elements the identity was instantiated on.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JacobiResiduals {
    /// `(i<j<k)`: J1 on `X_i, X_j, X_k`.
    pub r1: BTreeMap<(usize, usize, usize), SparseVec>,
    /// `(i<j, b)`: J2 on `X_i, X_j, Y_b`.
    pub r2: BTreeMap<(usize, usize, usize), SparseVec>,
    /// `(i; a≤b≤c)`: J3 on `X_i` and `Y_a, Y_b, Y_c`.
    pub r3: BTreeMap<(usize, usize, usize, usize), SparseVec>,
    /// `(a≤b≤c≤d)`: J4 on the multiset `Y_a, Y_b, Y_c, Y_d`.
    pub r4: BTreeMap<(usize, usize, usize, usize), SparseVec>,
}

impl JacobiResiduals {
    pub fn is_zero(&self) -> bool {
        self.r1.is_empty() && self.r2.is_empty() && self.r3.is_empty() && self.r4.is_empty()
    }

    pub fn counts(&self) -> [usize; 4] {
        [self.r1.len(), self.r2.len(), self.r3.len(), self.r4.len()]
    }

    /// Human-readable name of the first failing instance (1-based).
    pub fn first_violation(&self) -> Option<String> {
        if let Some(((i, j, k), r)) = self.r1.iter().next() {
            return Some(format!("J1 on (X{}, X{}, X{}): {}", i + 1, j + 1, k + 1, fmt_sparse(r, "X")));
        }
        if let Some(((i, j, b), r)) = self.r2.iter().next() {
            return Some(format!("J2 on (X{}, X{}, Y{}): {}", i + 1, j + 1, b + 1, fmt_sparse(r, "Y")));
        }
        if let Some(((i, a, b, c), r)) = self.r3.iter().next() {
            return Some(format!(
                "J3 on X{} and (Y{}, Y{}, Y{}): {}",
                i + 1,
                a + 1,
                b + 1,
                c + 1,
                fmt_sparse(r, "X")
            ));
        }
        if let Some(((a, b, c, d), r)) = self.r4.iter().next() {
            return Some(format!(
                "J4 on (Y{}, Y{}, Y{}, Y{}): {}",
                a + 1,
                b + 1,
                c + 1,
                d + 1,
                fmt_sparse(r, "Y")
            ));
        }
        None
    }
}

pub fn fmt_sparse(v: &SparseVec, sym: &str) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(k, x)| format!("({}){}{}", x, sym, k + 1))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A pair `(h0, h1) ∈ GL(m) × GL(n)`. Columns of `h0` are the images of the
/// old g0 basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub h0: Matrix,
    pub h1: Matrix,
}

impl BasisChange {
    pub fn new(h0: Matrix, h1: Matrix) -> Result<Self> {
        for (name, h) in [("h0", &h0), ("h1", &h1)] {
            if !h.is_square() {
                return Err(Error::DimensionMismatch(format!("{} is not square", name)));
            }
            if h.det().is_zero() {
                return Err(Error::Singular(format!("{} has zero determinant", name)));
            }
        }
        Ok(BasisChange { h0, h1 })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        BasisChange {
            h0: Matrix::identity(m),
            h1: Matrix::identity(n),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(BasisChange {
            h0: self.h0.inverse()?,
            h1: self.h1.inverse()?,
        })
    }

    /// First apply `self`, then `other`.
    pub fn then(&self, other: &BasisChange) -> BasisChange {
        BasisChange {
            h0: self.h0.mul(&other.h0),
            h1: self.h1.mul(&other.h1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn g31_like(a1: i64, a2: i64) -> AlgebraOrder3 {
        let mut g = AlgebraOrder3::zero("g", 1, 1);
        g.add_d(0, 0, 0, &q(a1));
        g.add_e(0, 0, 0, 0, &q(a2));
        g
    }

    #[test]
    fn zero_algebra_is_valid() {
        assert!(AlgebraOrder3::zero("0", 3, 4).is_valid());
    }

    #[test]
    fn two_dim_candidates() {
        assert!(g31_like(0, 1).is_valid());
        assert!(g31_like(1, 0).is_valid());
        let bad = g31_like(1, 1);
        let r = bad.jacobi_residuals();
        assert!(!r.r3.is_empty());
        // [X,{YYY}] − 3{[X,Y],Y,Y} = 0 − 3α1α2 X
        assert_eq!(r.r3[&(0, 0, 0, 0)][&0], q(-3));
    }

    #[test]
    fn canonicalize_rules() {
        let a = AlgebraOrder3::from_raw("x", 3, 0, &[((1, 0, 2), q(5))], &[], &[]).unwrap();
        assert_eq!(a.c_entries()[&(0, 1, 2)], q(-5));
        let b = AlgebraOrder3::from_raw(
            "x",
            1,
            2,
            &[],
            &[],
            &[((0, 1, 0, 0), q(1)), ((0, 0, 1, 0), q(1))],
        )
        .unwrap();
        assert_eq!(b.e_entries().len(), 1);
        assert_eq!(b.e_entries()[&(0, 0, 1, 0)], q(1));
        let err = AlgebraOrder3::from_raw(
            "x",
            1,
            2,
            &[],
            &[],
            &[((0, 1, 0, 0), q(1)), ((0, 0, 1, 0), q(2))],
        );
        assert!(matches!(err, Err(Error::Inconsistent(_))));
        assert_eq!(b.canonicalize().unwrap(), b);
    }

    #[test]
    fn out_of_range_is_named() {
        let err = AlgebraOrder3::from_raw("x", 2, 0, &[((0, 1, 2), q(1))], &[], &[]).unwrap_err();
        assert!(err.to_string().contains("C entry (1,2,3)"));
    }

    #[test]
    fn bracket00_antisymmetric() {
        let mut a = AlgebraOrder3::zero("x", 2, 0);
        a.add_c(0, 1, 1, &q(1));
        let x = vec![q(2), q(3)];
        let r = a.evaluate_brackets(Which::B00, &[&x, &x]).unwrap();
        assert!(r.iter().all(Zero::is_zero));
        assert!(a.evaluate_brackets(Which::B00, &[&x]).is_err());
    }

    #[test]
    fn cubic_rescaling() {
        let g = g31_like(0, 1);
        let h = BasisChange::new(Matrix::identity(1), Matrix::diagonal(&[q(2)])).unwrap();
        let t = g.transform(&h).unwrap();
        assert_eq!(t.e(0, 0, 0, 0), q(8));
        assert!(t.is_valid());
    }

    #[test]
    fn singular_change_rejected() {
        assert!(BasisChange::new(Matrix::zeros(1, 1), Matrix::identity(1)).is_err());
    }
}
