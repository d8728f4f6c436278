//! Contractions: diagonal ε-power rescalings and general ε-curves of bases.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraOrder3, BasisChange, CKey, DKey, EKey};
use crate::error::{Error, Result};
use crate::scalar::{GaussRational as Q, RatExp, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionExponents {
    pub a: Vec<RatExp>,
    pub b: Vec<RatExp>,
}

impl ContractionExponents {
    pub fn new(a: Vec<RatExp>, b: Vec<RatExp>) -> Self {
        ContractionExponents { a, b }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        ContractionExponents { a: vec![RatExp::int(0); m], b: vec![RatExp::int(0); n] }
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = |x: &[RatExp], y: &[RatExp]| -> Vec<RatExp> {
            x.iter().zip(y).map(|(p, q)| RatExp(&p.0 + &q.0)).collect()
        };
        ContractionExponents { a: s(&self.a, &other.a), b: s(&self.b, &other.b) }
    }

    /// Parses `a1,…,am;b1,…,bn`. Without `;` the first `/` separates the
    /// two lists, so fractions are only allowed after it.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(';')
            .or_else(|| s.split_once('/'))
            .ok_or_else(|| Error::BadParams(format!("exponents {:?}: expected a-list;b-list", s)))?;
        let list = |t: &str| -> Result<Vec<RatExp>> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            t.split(',').map(|x| x.trim().parse::<RatExp>()).collect()
        };
        Ok(ContractionExponents { a: list(a)?, b: list(b)? })
    }

    /// Least common denominator of all exponents.
    pub fn denominator(&self) -> i64 {
        self.a
            .iter()
            .chain(&self.b)
            .fold(1i64, |acc, e| acc.lcm(&e.0.denom().to_i64().expect("small denominator")))
    }
}

impl fmt::Display for ContractionExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[RatExp]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", j(&self.a), j(&self.b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DegreeReport {
    pub c: BTreeMap<CKey, Rational>,
    pub d: BTreeMap<DKey, Rational>,
    pub e: BTreeMap<EKey, Rational>,
}

impl DegreeReport {
    pub fn min_degree(&self) -> Option<Rational> {
        self.c.values().chain(self.d.values()).chain(self.e.values()).min().cloned()
    }

    /// First entry with negative degree, described 1-based.
    pub fn first_negative(&self) -> Option<String> {
        let neg = |r: &Rational| r.is_negative();
        if let Some(((i, j, k), r)) = self.c.iter().find(|(_, r)| neg(r)) {
            return Some(format!("C entry ({},{},{}) has degree {}", i + 1, j + 1, k + 1, r));
        }
        if let Some(((i, b, c), r)) = self.d.iter().find(|(_, r)| neg(r)) {
            return Some(format!("D entry ({},{},{}) has degree {}", i + 1, b + 1, c + 1, r));
        }
        if let Some(((a, b, c, i), r)) = self.e.iter().find(|(_, r)| neg(r)) {
            return Some(format!("E entry ({},{},{},{}) has degree {}", a + 1, b + 1, c + 1, i + 1, r));
        }
        None
    }

    pub fn count_with_degree(&self, deg: &Rational) -> usize {
        self.c.values().chain(self.d.values()).chain(self.e.values()).filter(|r| *r == deg).count()
    }
}

pub fn ww_degrees(alg: &AlgebraOrder3, exps: &ContractionExponents) -> Result<DegreeReport> {
    if exps.a.len() != alg.m() || exps.b.len() != alg.n() {
        return Err(Error::DimensionMismatch(format!(
            "exponents {}+{}, algebra {}+{}",
            exps.a.len(),
            exps.b.len(),
            alg.m(),
            alg.n()
        )));
    }
    let a = |i: usize| &exps.a[i].0;
    let b = |i: usize| &exps.b[i].0;
    Ok(DegreeReport {
        c: alg.c_entries().keys().map(|&(i, j, k)| ((i, j, k), a(i) + a(j) - a(k))).collect(),
        d: alg.d_entries().keys().map(|&(i, x, y)| ((i, x, y), a(i) + b(x) - b(y))).collect(),
        e: alg
            .e_entries()
            .keys()
            .map(|&(x, y, z, i)| ((x, y, z, i), b(x) + b(y) + b(z) - a(i)))
            .collect(),
    })
}

/// Limit `ε → 0` of the diagonal rescaling: degree-0 entries survive,
/// positive degrees vanish, any negative degree means there is no limit.
pub fn ww_contract(alg: &AlgebraOrder3, exps: &ContractionExponents) -> Result<AlgebraOrder3> {
    let rep = ww_degrees(alg, exps)?;
    if let Some(msg) = rep.first_negative() {
        return Err(Error::NoLimit(msg));
    }
    let mut out = AlgebraOrder3::zero(format!("{} contracted", alg.label), alg.m(), alg.n());
    for (&(i, j, k), v) in alg.c_entries() {
        if rep.c[&(i, j, k)].is_zero() {
            out.add_c(i, j, k, v);
        }
    }
    for (&(i, b, c), v) in alg.d_entries() {
        if rep.d[&(i, b, c)].is_zero() {
            out.add_d(i, b, c, v);
        }
    }
    for (&(a, b, c, i), v) in alg.e_entries() {
        if rep.e[&(a, b, c, i)].is_zero() {
            out.add_e(a, b, c, i, v);
        }
    }
    if let Some(v) = out.jacobi_residuals().first_violation() {
        return Err(Error::Inconsistent(format!("contracted algebra is not valid: {}", v)));
    }
    Ok(out)
}

/// Laurent polynomial in `ε^{1/q}`; exponents are in units of `1/q`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, Q>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(e: i64, c: Q) -> Self {
        let mut l = Laurent::zero();
        if !c.is_zero() {
            l.terms.insert(e, c);
        }
        l
    }

    pub fn terms(&self) -> &BTreeMap<i64, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, e: i64) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, e: i64, c: &Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c);
        }
        r
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, &-c.clone());
        }
        r
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                r.add_term(e + f, &(c * d));
            }
        }
        r
    }

    pub fn scale(&self, s: &Q) -> Laurent {
        let mut r = Laurent::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, &(c * s));
        }
        r
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Laurent) -> Result<Laurent> {
        let d0 = d.min_exp().ok_or(Error::DivisionByZero)?;
        let dtop = *d.terms.keys().next_back().expect("nonzero");
        let lead = d.terms[&dtop].clone();
        let Some(qmin) = self.min_exp().map(|e| e - d0) else {
            return Ok(Laurent::zero());
        };
        let mut rem = self.clone();
        let mut quot = Laurent::zero();
        // long division from the top degree
        while let Some(&top) = rem.terms.keys().next_back() {
            if top - dtop < qmin {
                return Err(Error::Inconsistent("inexact Laurent division".into()));
            }
            let c = rem.terms[&top].checked_div(&lead)?;
            let shift = top - dtop;
            quot.add_term(shift, &c);
            for (e, v) in &d.terms {
                rem.add_term(e + shift, &-(v * &c));
            }
        }
        Ok(quot)
    }

    pub fn eval(&self, eps: &Q) -> Result<Q> {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                eps.pow(*e as u32)
            } else {
                eps.inv()?.pow((-e) as u32)
            };
            s += &(c * &p);
        }
        Ok(s)
    }
}

type LMatrix = Vec<Vec<Laurent>>;

/// Basis change depending on `ε`; entries are Laurent polynomials in `ε^{1/q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveBasisChange {
    pub q: i64,
    pub h0: LMatrix,
    pub h1: LMatrix,
}

impl CurveBasisChange {
    pub fn constant(h: &BasisChange) -> Self {
        let lift = |m: &crate::linalg::Matrix| -> LMatrix {
            (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| Laurent::constant(m[(r, c)].clone())).collect())
                .collect()
        };
        CurveBasisChange { q: 1, h0: lift(&h.h0), h1: lift(&h.h1) }
    }

    /// `diag(ε^{a_1}, …)` and `diag(ε^{b_1}, …)`.
    pub fn diagonal(exps: &ContractionExponents) -> Self {
        let q = exps.denominator();
        let diag = |v: &[RatExp]| -> LMatrix {
            (0..v.len())
                .map(|r| {
                    (0..v.len())
                        .map(|c| {
                            if r == c {
                                let e = &v[r].0 * Rational::from_integer(q.into());
                                Laurent::monomial(e.to_integer().to_i64().expect("small"), Q::one())
                            } else {
                                Laurent::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        };
        CurveBasisChange { q, h0: diag(&exps.a), h1: diag(&exps.b) }
    }
}

/// `(d, R)` with `A⁻¹ = R / d`, by fraction-free Gauss-Jordan elimination.
fn inverse_fraction_free(a: &LMatrix) -> Result<(Laurent, LMatrix)> {
    let n = a.len();
    let mut m: LMatrix = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|c| if c == r { Laurent::constant(Q::one()) } else { Laurent::zero() }));
            row
        })
        .collect();
    let mut prev = Laurent::constant(Q::one());
    for k in 0..n {
        let p = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .ok_or_else(|| Error::Singular(format!("curve basis change is singular at column {}", k + 1)))?;
        m.swap(k, p);
        let piv = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..2 * n {
                let v = piv.mul(&m[i][j]).sub(&f.mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev)?;
            }
        }
        prev = piv;
    }
    // every diagonal entry now equals the last pivot
    let d = prev;
    let mut r: LMatrix = Vec::with_capacity(n);
    for (i, row) in m.iter().enumerate() {
        let diag = &row[i];
        let mut out = Vec::with_capacity(n);
        for x in &row[n..] {
            // x / diag = y / d  ⇒  y = x·d / diag
            out.push(x.mul(&d).div_exact(diag)?);
        }
        r.push(out);
    }
    Ok((d, r))
}

fn lmul_vec(m: &LMatrix, v: &[Laurent]) -> Vec<Laurent> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Laurent::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
        })
        .collect()
}

fn column(m: &LMatrix, c: usize) -> Vec<Laurent> {
    m.iter().map(|row| row[c].clone()).collect()
}

/// `lim_{ε→0} N/d` for a vector numerator.
fn limit(num: &[Laurent], d: &Laurent, q: i64, what: &dyn Fn(usize) -> String) -> Result<Vec<Q>> {
    let k = d.min_exp().expect("nonzero determinant");
    let lead = d.coeff(k);
    num.iter()
        .enumerate()
        .map(|(o, n)| match n.min_exp() {
            None => Ok(Q::zero()),
            Some(e) if e < k => Err(Error::NoLimit(format!(
                "{} has a term of order eps^{}",
                what(o),
                Rational::new((e - k).into(), q.into())
            ))),
            Some(_) => n.coeff(k).checked_div(&lead),
        })
        .collect()
}

/// Structure constants of the algebra in the basis `h(ε)`, and their limit.
pub fn curve_contract(alg: &AlgebraOrder3, h: &CurveBasisChange) -> Result<AlgebraOrder3> {
    let (m, n) = (alg.m(), alg.n());
    if h.h0.len() != m || h.h1.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "curve is {}+{}, algebra is {}+{}",
            h.h0.len(),
            h.h1.len(),
            m,
            n
        )));
    }
    let (d0, r0) = inverse_fraction_free(&h.h0)?;
    let (d1, r1) = inverse_fraction_free(&h.h1)?;
    let cols0: Vec<Vec<Laurent>> = (0..m).map(|c| column(&h.h0, c)).collect();
    let cols1: Vec<Vec<Laurent>> = (0..n).map(|c| column(&h.h1, c)).collect();
    let mut out = AlgebraOrder3::zero(format!("{} contracted", alg.label), m, n);

    for i in 0..m {
        for j in i + 1..m {
            let mut v = vec![Laurent::zero(); m];
            for (p, x) in cols0[i].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (r, y) in cols0[j].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    let xy = x.mul(y);
                    for (k, c) in alg.br00(p, r) {
                        v[k] = v[k].add(&xy.scale(&c));
                    }
                }
            }
            let lim = limit(&lmul_vec(&r0, &v), &d0, h.q, &|k| {
                format!("C entry ({},{},{})", i + 1, j + 1, k + 1)
            })?;
            for (k, c) in lim.iter().enumerate() {
                out.add_c(i, j, k, c);
            }
        }
    }
    for i in 0..m {
        for b in 0..n {
            let mut v = vec![Laurent::zero(); n];
            for (p, x) in cols0[i].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (r, y) in cols1[b].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    let xy = x.mul(y);
                    for (k, c) in alg.br01(p, r) {
                        v[k] = v[k].add(&xy.scale(&c));
                    }
                }
            }
            let lim = limit(&lmul_vec(&r1, &v), &d1, h.q, &|k| {
                format!("D entry ({},{},{})", i + 1, b + 1, k + 1)
            })?;
            for (k, c) in lim.iter().enumerate() {
                out.add_d(i, b, k, c);
            }
        }
    }
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let mut v = vec![Laurent::zero(); m];
                for (p, x) in cols1[a].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (r, y) in cols1[b].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let xy = x.mul(y);
                        for (s, z) in cols1[c].iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                            let xyz = xy.mul(z);
                            for (k, e) in alg.br111(p, r, s) {
                                v[k] = v[k].add(&xyz.scale(&e));
                            }
                        }
                    }
                }
                let lim = limit(&lmul_vec(&r0, &v), &d0, h.q, &|k| {
                    format!("E entry ({},{},{},{})", a + 1, b + 1, c + 1, k + 1)
                })?;
                for (k, x) in lim.iter().enumerate() {
                    out.add_e(a, b, c, k, x);
                }
            }
        }
    }
    if let Some(v) = out.jacobi_residuals().first_violation() {
        return Err(Error::Inconsistent(format!("limit algebra is not valid: {}", v)));
    }
    Ok(out)
}

/// A closed, basis-independent condition (`C = 0`, `D = 0` or `E = 0`) that
/// holds on `from` but not on `to`; when one exists, `to` is not in the
/// orbit closure of `from`.
pub fn contraction_obstruction(from: &AlgebraOrder3, to: &AlgebraOrder3) -> Option<String> {
    let checks = [
        ("C", from.c_entries().is_empty(), to.c_entries().is_empty()),
        ("D", from.d_entries().is_empty(), to.d_entries().is_empty()),
        ("E", from.e_entries().is_empty(), to.e_entries().is_empty()),
    ];
    checks
        .iter()
        .find(|(_, f, t)| *f && !*t)
        .map(|(name, _, _)| format!("{} vanishes on {} but not on {}", name, from.label, to.label))
}

// ---- JSON form of a curve ----

/// Entry: map from exponent (`"1/3"`) to coefficient (`"2-i"`).
type EntryJson = BTreeMap<RatExp, Q>;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub h0: Vec<Vec<EntryJson>>,
    pub h1: Vec<Vec<EntryJson>>,
}

impl CurveJson {
    pub fn to_curve(&self) -> Result<CurveBasisChange> {
        let all = self.h0.iter().chain(&self.h1).flatten().flat_map(|e| e.keys());
        let q = all.fold(1i64, |acc, e| acc.lcm(&e.0.denom().to_i64().unwrap_or(1)));
        let conv = |m: &Vec<Vec<EntryJson>>, name: &str| -> Result<LMatrix> {
            let size = m.len();
            m.iter()
                .enumerate()
                .map(|(r, row)| {
                    if row.len() != size {
                        return Err(Error::DimensionMismatch(format!(
                            "{} row {} has {} entries, expected {}",
                            name,
                            r + 1,
                            row.len(),
                            size
                        )));
                    }
                    Ok(row
                        .iter()
                        .map(|e| {
                            let mut l = Laurent::zero();
                            for (x, c) in e {
                                let k = (&x.0 * Rational::from_integer(q.into())).to_integer();
                                l.add_term(k.to_i64().expect("small"), c);
                            }
                            l
                        })
                        .collect())
                })
                .collect()
        };
        Ok(CurveBasisChange { q, h0: conv(&self.h0, "h0")?, h1: conv(&self.h1, "h1")? })
    }
}

pub fn parse_curve(s: &str) -> Result<CurveBasisChange> {
    let j: CurveJson = serde_json::from_str(s)?;
    j.to_curve()
}
