//! Circle products, formal deformations, coboundaries and linear cocycles.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::AlgebraOrder3;
use crate::error::{Error, Result};
use crate::json::SeriesData;
use crate::linalg::{add_scaled, Echelon, Matrix, SparseVec};
use crate::scalar::{GaussRational as Q, TruncPoly};

pub type DeformationSeries = SeriesData;

/// Default truncation order of deformation series.
pub const DEFAULT_ORDER: usize = 4;

/// Values of `φ ∘_i φ'` on basis tuples, zero values omitted.
///
/// Keys: `(i,j,k)` with `i<j<k` for ∘1; `(i,j,b)` with `i<j` for ∘2;
/// `(i,a,b,c)` with `a≤b≤c` for ∘3; `(a,b,c,d)` nondecreasing for ∘4.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CircleTensor {
    pub index: usize,
    pub values: BTreeMap<Vec<usize>, SparseVec>,
}

impl CircleTensor {
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&mut self, other: &CircleTensor) {
        for (k, v) in &other.values {
            let slot = self.values.entry(k.clone()).or_default();
            add_scaled(slot, &Q::one(), v);
            if slot.is_empty() {
                self.values.remove(k);
            }
        }
    }

    pub fn first(&self) -> Option<String> {
        self.values.iter().next().map(|(k, v)| {
            let idx: Vec<String> = k.iter().map(|x| (x + 1).to_string()).collect();
            format!("circle {} at ({}): {}", self.index, idx.join(","), crate::algebra::fmt_sparse(v, "e"))
        })
    }
}

fn unit(k: usize) -> SparseVec {
    [(k, Q::one())].into_iter().collect()
}

fn check_dims(a: &AlgebraOrder3, b: &AlgebraOrder3) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch(format!(
            "{}+{} vs {}+{}",
            a.m(),
            a.n(),
            b.m(),
            b.n()
        )));
    }
    Ok(())
}

/// `φ ∘_i φ'` for `i ∈ 1..=4`; `φ2(Y, X)` means `−φ2(X, Y)`.
pub fn gerstenhaber(phi: &AlgebraOrder3, psi: &AlgebraOrder3, i: usize) -> Result<CircleTensor> {
    check_dims(phi, psi)?;
    let (m, n) = (phi.m(), phi.n());
    let mut out = CircleTensor { index: i, values: BTreeMap::new() };
    let mut put = |k: Vec<usize>, v: SparseVec| {
        if !v.is_empty() {
            out.values.insert(k, v);
        }
    };
    let one = Q::one();
    let minus = -Q::one();
    match i {
        1 => {
            for a in 0..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        let mut r = phi.act00(&psi.br00(a, b), &unit(c));
                        add_scaled(&mut r, &one, &phi.act00(&psi.br00(c, a), &unit(b)));
                        add_scaled(&mut r, &one, &phi.act00(&psi.br00(b, c), &unit(a)));
                        put(vec![a, b, c], r);
                    }
                }
            }
        }
        2 => {
            for a in 0..m {
                for b in a + 1..m {
                    for y in 0..n {
                        let mut r = phi.act01(&psi.br00(a, b), &unit(y));
                        add_scaled(&mut r, &minus, &phi.act01(&unit(a), &psi.br01(b, y)));
                        add_scaled(&mut r, &one, &phi.act01(&unit(b), &psi.br01(a, y)));
                        put(vec![a, b, y], r);
                    }
                }
            }
        }
        3 => {
            for x in 0..m {
                for a in 0..n {
                    for b in a..n {
                        for c in b..n {
                            let (ua, ub, uc) = (unit(a), unit(b), unit(c));
                            let mut r = phi.act00(&unit(x), &psi.br111(a, b, c));
                            add_scaled(&mut r, &minus, &phi.act111(&psi.br01(x, a), &ub, &uc));
                            add_scaled(&mut r, &minus, &phi.act111(&ua, &psi.br01(x, b), &uc));
                            add_scaled(&mut r, &minus, &phi.act111(&ua, &ub, &psi.br01(x, c)));
                            put(vec![x, a, b, c], r);
                        }
                    }
                }
            }
        }
        4 => {
            for a in 0..n {
                for b in a..n {
                    for c in b..n {
                        for d in c..n {
                            let q4 = [a, b, c, d];
                            let mut r = SparseVec::new();
                            for x in 0..4 {
                                let o: Vec<usize> = (0..4).filter(|&y| y != x).map(|y| q4[y]).collect();
                                add_scaled(
                                    &mut r,
                                    &minus,
                                    &phi.act01(&psi.br111(o[0], o[1], o[2]), &unit(q4[x])),
                                );
                            }
                            put(q4.to_vec(), r);
                        }
                    }
                }
            }
        }
        _ => return Err(Error::BadParams(format!("circle product index {} not in 1..4", i))),
    }
    Ok(out)
}

pub fn all_circles(phi: &AlgebraOrder3, psi: &AlgebraOrder3) -> Result<[CircleTensor; 4]> {
    Ok([
        gerstenhaber(phi, psi, 1)?,
        gerstenhaber(phi, psi, 2)?,
        gerstenhaber(phi, psi, 3)?,
        gerstenhaber(phi, psi, 4)?,
    ])
}

/// `φ ∘_i φ = 0` for all four products.
pub fn jacobi_via_circle(alg: &AlgebraOrder3) -> bool {
    all_circles(alg, alg).expect("same dims").iter().all(CircleTensor::is_zero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderResidual {
    pub r: usize,
    pub circles: [CircleTensor; 4],
}

impl OrderResidual {
    pub fn is_zero(&self) -> bool {
        self.circles.iter().all(CircleTensor::is_zero)
    }
}

/// `R(r, i) = Σ_{p+q=r} ψ^(p) ∘_i ψ^(q)` for `r = 0..=2N`, with `ψ^(0) = φ`.
pub fn deformation_residuals(s: &DeformationSeries) -> Result<Vec<OrderResidual>> {
    let mut psi = vec![s.base.clone()];
    psi.extend(s.terms.iter().cloned());
    let n = s.order.max(s.terms.len());
    let get = |p: usize| psi.get(p);
    let mut out = Vec::new();
    for r in 0..=2 * n {
        let mut circles: [CircleTensor; 4] =
            std::array::from_fn(|i| CircleTensor { index: i + 1, values: BTreeMap::new() });
        for p in 0..=r {
            let (Some(a), Some(b)) = (get(p), get(r - p)) else { continue };
            if a.is_zero() || b.is_zero() {
                continue;
            }
            for (i, c) in circles.iter_mut().enumerate() {
                c.add(&gerstenhaber(a, b, i + 1)?);
            }
        }
        out.push(OrderResidual { r, circles });
    }
    Ok(out)
}

/// `φ + t ψ1 + … ` at a given `t`.
pub fn evaluate_series(s: &DeformationSeries, t: &Q) -> AlgebraOrder3 {
    let mut acc = s.base.clone();
    let mut tp = Q::one();
    for term in &s.terms {
        tp = &tp * t;
        acc = acc.add(&term.scale(&tp));
    }
    acc
}

/// A pair of linear maps `f0: g0 → g0`, `f1: g1 → g1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMap {
    pub f0: Matrix,
    pub f1: Matrix,
}

impl CochainMap {
    pub fn identity(m: usize, n: usize) -> Self {
        CochainMap { f0: Matrix::identity(m), f1: Matrix::identity(n) }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        CochainMap { f0: Matrix::zeros(m, m), f1: Matrix::zeros(n, n) }
    }
}

fn mat_sparse(f: &Matrix, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (&k, x) in v {
        for r in 0..f.rows() {
            let c = &f[(r, k)];
            if !c.is_zero() {
                add_scaled(&mut out, &(c * x), &unit(r));
            }
        }
    }
    out
}

fn col(f: &Matrix, k: usize) -> SparseVec {
    (0..f.rows())
        .filter(|&r| !f[(r, k)].is_zero())
        .map(|r| (r, f[(r, k)].clone()))
        .collect()
}

/// `δ_φ f`: first-order change of `φ` under the basis change `Id + t f`.
/// With `printed`, the third line uses `f0` on the last g1 slot (requires
/// `m = n`); the result is then stored at sorted keys only.
pub fn coboundary(phi: &AlgebraOrder3, f: &CochainMap, printed: bool) -> Result<AlgebraOrder3> {
    let (m, n) = (phi.m(), phi.n());
    if f.f0.rows() != m || f.f1.rows() != n || !f.f0.is_square() || !f.f1.is_square() {
        return Err(Error::DimensionMismatch("cochain map does not match algebra".into()));
    }
    if printed && m != n {
        return Err(Error::DimensionMismatch(
            "the printed variant applies f0 to a g1 slot and needs m = n".into(),
        ));
    }
    let mut out = AlgebraOrder3::zero(format!("delta {}", phi.label), m, n);
    let minus = -Q::one();
    for i in 0..m {
        for j in i + 1..m {
            let mut r = phi.act00(&col(&f.f0, i), &unit(j));
            add_scaled(&mut r, &Q::one(), &phi.act00(&unit(i), &col(&f.f0, j)));
            add_scaled(&mut r, &minus, &mat_sparse(&f.f0, &phi.br00(i, j)));
            for (k, v) in r {
                out.add_c(i, j, k, &v);
            }
        }
    }
    for i in 0..m {
        for b in 0..n {
            let mut r = phi.act01(&col(&f.f0, i), &unit(b));
            add_scaled(&mut r, &Q::one(), &phi.act01(&unit(i), &col(&f.f1, b)));
            add_scaled(&mut r, &minus, &mat_sparse(&f.f1, &phi.br01(i, b)));
            for (k, v) in r {
                out.add_d(i, b, k, &v);
            }
        }
    }
    let third = if printed { &f.f0 } else { &f.f1 };
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let (ua, ub, uc) = (unit(a), unit(b), unit(c));
                let mut r = phi.act111(&col(&f.f1, a), &ub, &uc);
                add_scaled(&mut r, &Q::one(), &phi.act111(&ua, &col(&f.f1, b), &uc));
                add_scaled(&mut r, &Q::one(), &phi.act111(&ua, &ub, &col(third, c)));
                add_scaled(&mut r, &minus, &mat_sparse(&f.f0, &phi.br111(a, b, c)));
                for (k, v) in r {
                    out.add_e(a, b, c, k, &v);
                }
            }
        }
    }
    Ok(out)
}

/// `φ ∘_i ψ + ψ ∘_i φ = 0` for all `i`.
pub fn is_linear_cocycle(phi: &AlgebraOrder3, psi: &AlgebraOrder3) -> Result<bool> {
    for i in 1..=4 {
        let mut c = gerstenhaber(phi, psi, i)?;
        c.add(&gerstenhaber(psi, phi, i)?);
        if !c.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---- series from a formal basis change ----

type PolyVec = BTreeMap<usize, TruncPoly>;

fn pv_add(acc: &mut PolyVec, k: usize, p: &TruncPoly) {
    let slot = acc.entry(k).or_insert_with(|| TruncPoly::zero(p.order()));
    *slot = slot.add(p);
}

/// `Id + t f` applied to basis vector `k`.
fn lifted_column(f: &Matrix, k: usize, order: usize) -> PolyVec {
    let mut v = PolyVec::new();
    for r in 0..f.rows() {
        let mut c = vec![Q::zero(); 2];
        if r == k {
            c[0] = Q::one();
        }
        c[1] = f[(r, k)].clone();
        let p = TruncPoly::from_coeffs(&c, order);
        if !p.is_zero() {
            v.insert(r, p);
        }
    }
    v
}

/// `(Id + t f)^{-1} = Σ_k (−t f)^k` modulo `t^{order+1}`, as a matrix of polynomials.
fn neumann_inverse(f: &Matrix, order: usize) -> Vec<Vec<TruncPoly>> {
    let d = f.rows();
    let mut out: Vec<Vec<TruncPoly>> = vec![vec![TruncPoly::zero(order); d]; d];
    let mut power = Matrix::identity(d);
    let neg = f.scale(&-Q::one());
    for k in 0..=order {
        for r in 0..d {
            for c in 0..d {
                if !power[(r, c)].is_zero() {
                    let mut coeffs = vec![Q::zero(); k + 1];
                    coeffs[k] = power[(r, c)].clone();
                    out[r][c] = out[r][c].add(&TruncPoly::from_coeffs(&coeffs, order));
                }
            }
        }
        power = power.mul(&neg);
    }
    out
}

fn apply_poly_matrix(m: &[Vec<TruncPoly>], v: &PolyVec, order: usize) -> PolyVec {
    let mut out = PolyVec::new();
    for (r, row) in m.iter().enumerate() {
        let mut acc = TruncPoly::zero(order);
        for (k, x) in v {
            if !row[*k].is_zero() {
                acc = acc.add(&row[*k].mul_trunc(x, order));
            }
        }
        if !acc.is_zero() {
            out.insert(r, acc);
        }
    }
    out
}

/// Structure constants of `φ` in the basis `Id + t f`, expanded to `order`.
pub fn transform_series(phi: &AlgebraOrder3, f: &CochainMap, order: usize) -> Result<DeformationSeries> {
    let (m, n) = (phi.m(), phi.n());
    if f.f0.rows() != m || f.f1.rows() != n {
        return Err(Error::DimensionMismatch("cochain map does not match algebra".into()));
    }
    let h0: Vec<PolyVec> = (0..m).map(|k| lifted_column(&f.f0, k, order)).collect();
    let h1: Vec<PolyVec> = (0..n).map(|k| lifted_column(&f.f1, k, order)).collect();
    let inv0 = neumann_inverse(&f.f0, order);
    let inv1 = neumann_inverse(&f.f1, order);
    let mut coeffs: Vec<AlgebraOrder3> =
        (0..=order).map(|_| AlgebraOrder3::zero(phi.label.clone(), m, n)).collect();

    for i in 0..m {
        for j in i + 1..m {
            let mut v = PolyVec::new();
            for (p, x) in &h0[i] {
                for (r, y) in &h0[j] {
                    let xy = x.mul_trunc(y, order);
                    for (k, c) in phi.br00(*p, *r) {
                        pv_add(&mut v, k, &xy.scale(&c));
                    }
                }
            }
            for (k, poly) in apply_poly_matrix(&inv0, &v, order) {
                for (deg, c) in poly.coeffs().iter().enumerate() {
                    coeffs[deg].add_c(i, j, k, c);
                }
            }
        }
    }
    for i in 0..m {
        for b in 0..n {
            let mut v = PolyVec::new();
            for (p, x) in &h0[i] {
                for (r, y) in &h1[b] {
                    let xy = x.mul_trunc(y, order);
                    for (k, c) in phi.br01(*p, *r) {
                        pv_add(&mut v, k, &xy.scale(&c));
                    }
                }
            }
            for (k, poly) in apply_poly_matrix(&inv1, &v, order) {
                for (deg, c) in poly.coeffs().iter().enumerate() {
                    coeffs[deg].add_d(i, b, k, c);
                }
            }
        }
    }
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let mut v = PolyVec::new();
                for (p, x) in &h1[a] {
                    for (r, y) in &h1[b] {
                        let xy = x.mul_trunc(y, order);
                        for (s, z) in &h1[c] {
                            let br = phi.br111(*p, *r, *s);
                            if br.is_empty() {
                                continue;
                            }
                            let xyz = xy.mul_trunc(z, order);
                            for (k, e) in br {
                                pv_add(&mut v, k, &xyz.scale(&e));
                            }
                        }
                    }
                }
                for (k, poly) in apply_poly_matrix(&inv0, &v, order) {
                    for (deg, x) in poly.coeffs().iter().enumerate() {
                        coeffs[deg].add_e(a, b, c, k, x);
                    }
                }
            }
        }
    }
    let base = coeffs.remove(0);
    Ok(DeformationSeries { base, order, terms: coeffs })
}

// ---- linear cocycles ----

/// Coordinates of a bracket triple: C at `(i<j, k)`, then D, then E.
struct Coords {
    m: usize,
    n: usize,
    keys: Vec<(u8, [usize; 4])>,
    index: BTreeMap<(u8, [usize; 4]), usize>,
}

impl Coords {
    fn new(m: usize, n: usize) -> Self {
        let mut keys = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in 0..m {
                    keys.push((0, [i, j, k, 0]));
                }
            }
        }
        for i in 0..m {
            for b in 0..n {
                for c in 0..n {
                    keys.push((1, [i, b, c, 0]));
                }
            }
        }
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    for i in 0..m {
                        keys.push((2, [a, b, c, i]));
                    }
                }
            }
        }
        let index = keys.iter().enumerate().map(|(k, x)| (*x, k)).collect();
        Coords { m, n, keys, index }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn unit(&self, k: usize) -> AlgebraOrder3 {
        let mut a = AlgebraOrder3::zero("unit", self.m, self.n);
        let (t, [x, y, z, w]) = self.keys[k];
        match t {
            0 => a.add_c(x, y, z, &Q::one()),
            1 => a.add_d(x, y, z, &Q::one()),
            _ => a.add_e(x, y, z, w, &Q::one()),
        }
        a
    }

    fn vector(&self, a: &AlgebraOrder3) -> SparseVec {
        let mut v = SparseVec::new();
        for (&(i, j, k), x) in a.c_entries() {
            v.insert(self.index[&(0, [i, j, k, 0])], x.clone());
        }
        for (&(i, b, c), x) in a.d_entries() {
            v.insert(self.index[&(1, [i, b, c, 0])], x.clone());
        }
        for (&(a_, b, c, i), x) in a.e_entries() {
            v.insert(self.index[&(2, [a_, b, c, i])], x.clone());
        }
        v
    }

    fn algebra(&self, v: &SparseVec) -> AlgebraOrder3 {
        let mut a = AlgebraOrder3::zero("cocycle", self.m, self.n);
        for (&k, x) in v {
            let (t, [p, q, r, s]) = self.keys[k];
            match t {
                0 => a.add_c(p, q, r, x),
                1 => a.add_d(p, q, r, x),
                _ => a.add_e(p, q, r, s, x),
            }
        }
        a
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub unknowns: usize,
    /// Nullity of `φ∘ψ + ψ∘φ = 0`.
    pub dim_z2_linear: usize,
    pub dim_b2: usize,
    /// `dim Z²_linear − dim B²`; only the linear part of the cocycle condition.
    pub dim_h2_linear: usize,
    pub b2_in_z2: bool,
    /// Basis vectors of the linear cocycle space with `ψ∘ψ = 0`.
    pub quadratic_zero: usize,
    pub z2_basis: Vec<AlgebraOrder3>,
}

pub fn cocycle_spaces(phi: &AlgebraOrder3) -> Result<CocycleReport> {
    if let Some(v) = phi.jacobi_residuals().first_violation() {
        return Err(Error::JacobiViolation(v));
    }
    let (m, n) = (phi.m(), phi.n());
    let coords = Coords::new(m, n);
    // rows of the linear map, keyed by (circle, tuple, component)
    let mut rows: BTreeMap<(usize, Vec<usize>, usize), SparseVec> = BTreeMap::new();
    for col in 0..coords.len() {
        let u = coords.unit(col);
        for i in 1..=4 {
            let mut c = gerstenhaber(phi, &u, i)?;
            c.add(&gerstenhaber(&u, phi, i)?);
            for (tuple, v) in c.values {
                for (comp, x) in v {
                    rows.entry((i, tuple.clone(), comp)).or_default().insert(col, x);
                }
            }
        }
    }
    let mut ech = Echelon::new(coords.len());
    for r in rows.into_values() {
        ech.insert(r);
    }
    let null = ech.null_space();
    let z2_basis: Vec<AlgebraOrder3> = null.iter().map(|v| coords.algebra(v)).collect();
    let mut z2 = Echelon::new(coords.len());
    for v in &null {
        z2.insert(v.clone());
    }

    let mut b2 = Echelon::new(coords.len());
    let mut b_in_z = true;
    for (rows_, which) in [(m, 0), (n, 1)] {
        for r in 0..rows_ {
            for c in 0..rows_ {
                let mut f = CochainMap::zero(m, n);
                if which == 0 {
                    f.f0[(r, c)] = Q::one();
                } else {
                    f.f1[(r, c)] = Q::one();
                }
                let d = coboundary(phi, &f, false)?;
                let v = coords.vector(&d);
                b_in_z &= z2.reduce(v.clone()).is_empty();
                b2.insert(v);
            }
        }
    }
    let quadratic_zero = z2_basis
        .iter()
        .map(|z| Ok(all_circles(z, z)?.iter().all(CircleTensor::is_zero)))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|x| *x)
        .count();
    Ok(CocycleReport {
        unknowns: coords.len(),
        dim_z2_linear: z2_basis.len(),
        dim_b2: b2.rank(),
        dim_h2_linear: z2_basis.len() - b2.rank(),
        b2_in_z2: b_in_z,
        quadratic_zero,
        z2_basis,
    })
}

// ---- the Poincaré deformation ----

/// Deformation of the contracted algebra whose value at `t = 1` is the
/// so(2,3) algebra. Bases as in `lege_mica`: g0 = `(L_mn, P_m)`,
/// g1 = `(V_mn, V_m)`.
pub fn build_poincare_deformation(order: usize) -> DeformationSeries {
    use crate::catalog::eta;
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let pair = |a: usize, b: usize| -> Option<(usize, i64)> {
        if a == b {
            return None;
        }
        let (k, s) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
        pairs.iter().position(|&p| p == k).map(|i| (i, s))
    };
    let g = |i: usize, j: usize| -> i64 {
        let ((a, b), (c, d)) = (pairs[i], pairs[j]);
        eta(a, c) * eta(b, d) - eta(a, d) * eta(b, c)
    };
    let q = |x: i64| Q::from_int(x);
    let base = crate::catalog::lege_mica();

    let mut psi1 = AlgebraOrder3::zero("psi1", 10, 10);
    for m in 0..4 {
        // P_m on V_pq: η_mp V_q − η_mq V_p
        for (k, &(p, qq)) in pairs.iter().enumerate() {
            psi1.add_d(6 + m, k, 6 + qq, &q(eta(m, p)));
            psi1.add_d(6 + m, k, 6 + p, &q(-eta(m, qq)));
        }
        // P_m on V_p: −V_mp
        for p in 0..4 {
            if let Some((k, s)) = pair(m, p) {
                psi1.add_d(6 + m, 6 + p, k, &q(-s));
            }
        }
    }
    // {V_mn, V_pq, V_rs} = g(mn,pq) L_rs + g(mn,rs) L_pq + g(pq,rs) L_mn
    for a in 0..6 {
        for b in a..6 {
            for c in b..6 {
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    psi1.add_e(a, b, c, z, &q(g(x, y)));
                }
            }
        }
    }
    // {V_mn, V_p, V_r} = η_pr L_mn
    for k in 0..6 {
        for p in 0..4 {
            psi1.add_e(k, 6 + p, 6 + p, k, &q(eta(p, p)));
        }
    }

    let mut psi2 = AlgebraOrder3::zero("psi2", 10, 10);
    for m in 0..4 {
        for p in m + 1..4 {
            let (k, s) = pair(m, p).expect("distinct");
            psi2.add_c(6 + m, 6 + p, k, &q(-s));
        }
    }
    DeformationSeries { base, order, terms: vec![psi1, psi2] }
}

/// Reads an algebra on `(L_mn, P_m) ⊕ (V_mn, V_m)` as one on
/// `(M_mn, M_m4) ⊕ (J_mn, J_m4)`; the orderings coincide.
pub fn relabel_poincare_to_so23(alg: &AlgebraOrder3) -> Result<AlgebraOrder3> {
    if alg.m() != 10 || alg.n() != 10 {
        return Err(Error::DimensionMismatch(format!("expected 10+10, got {}+{}", alg.m(), alg.n())));
    }
    Ok(alg.clone().with_label("so23_order3"))
}
