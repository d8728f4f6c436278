//! JSON interchange: algebras, deformation series and curve basis changes.
//!
//! Indices are 1-based on disk, scalars are strings such as `"1/3+2/5*i"`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraOrder3;
use crate::error::{Error, Result};
use crate::scalar::GaussRational as Q;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DimsJson {
    pub m: usize,
    pub n: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub v: Q,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DEntry {
    pub i: usize,
    pub b: usize,
    pub c: usize,
    pub v: Q,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub i: usize,
    pub v: Q,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    #[serde(default)]
    pub label: String,
    pub dims: DimsJson,
    #[serde(rename = "C", default)]
    pub c: Vec<CEntry>,
    #[serde(rename = "D", default)]
    pub d: Vec<DEntry>,
    #[serde(rename = "E", default)]
    pub e: Vec<EEntry>,
}

/// Tensors of one series term, without label or dims.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(rename = "C", default)]
    pub c: Vec<CEntry>,
    #[serde(rename = "D", default)]
    pub d: Vec<DEntry>,
    #[serde(rename = "E", default)]
    pub e: Vec<EEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub base: AlgebraJson,
    pub order: usize,
    pub terms: Vec<TermJson>,
}

fn zero_based(x: usize, what: &str) -> Result<usize> {
    x.checked_sub(1)
        .ok_or_else(|| Error::IndexOutOfRange(format!("{}: indices are 1-based, got 0", what)))
}

fn term_to_algebra(
    label: &str,
    m: usize,
    n: usize,
    c: &[CEntry],
    d: &[DEntry],
    e: &[EEntry],
) -> Result<AlgebraOrder3> {
    let mut cc = Vec::with_capacity(c.len());
    for x in c {
        let what = format!("C entry ({},{},{})", x.i, x.j, x.k);
        cc.push((
            (zero_based(x.i, &what)?, zero_based(x.j, &what)?, zero_based(x.k, &what)?),
            x.v.clone(),
        ));
    }
    let mut dd = Vec::with_capacity(d.len());
    for x in d {
        let what = format!("D entry ({},{},{})", x.i, x.b, x.c);
        dd.push((
            (zero_based(x.i, &what)?, zero_based(x.b, &what)?, zero_based(x.c, &what)?),
            x.v.clone(),
        ));
    }
    let mut ee = Vec::with_capacity(e.len());
    for x in e {
        let what = format!("E entry ({},{},{},{})", x.a, x.b, x.c, x.i);
        ee.push((
            (
                zero_based(x.a, &what)?,
                zero_based(x.b, &what)?,
                zero_based(x.c, &what)?,
                zero_based(x.i, &what)?,
            ),
            x.v.clone(),
        ));
    }
    AlgebraOrder3::from_raw(label, m, n, &cc, &dd, &ee)
}

fn algebra_to_term(alg: &AlgebraOrder3) -> TermJson {
    TermJson {
        c: alg
            .c_entries()
            .iter()
            .map(|(&(i, j, k), v)| CEntry { i: i + 1, j: j + 1, k: k + 1, v: v.clone() })
            .collect(),
        d: alg
            .d_entries()
            .iter()
            .map(|(&(i, b, c), v)| DEntry { i: i + 1, b: b + 1, c: c + 1, v: v.clone() })
            .collect(),
        e: alg
            .e_entries()
            .iter()
            .map(|(&(a, b, c, i), v)| EEntry {
                a: a + 1,
                b: b + 1,
                c: c + 1,
                i: i + 1,
                v: v.clone(),
            })
            .collect(),
    }
}

impl AlgebraJson {
    pub fn from_algebra(alg: &AlgebraOrder3) -> Self {
        let t = algebra_to_term(alg);
        AlgebraJson {
            label: alg.label.clone(),
            dims: DimsJson { m: alg.m(), n: alg.n() },
            c: t.c,
            d: t.d,
            e: t.e,
        }
    }

    pub fn to_algebra(&self) -> Result<AlgebraOrder3> {
        term_to_algebra(&self.label, self.dims.m, self.dims.n, &self.c, &self.d, &self.e)
    }
}

pub fn algebra_to_string(alg: &AlgebraOrder3) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(alg)).expect("serializable")
}

pub fn algebra_from_str(s: &str) -> Result<AlgebraOrder3> {
    let j: AlgebraJson = serde_json::from_str(s)?;
    j.to_algebra()
}

pub fn parse_algebra(path: &Path) -> Result<AlgebraOrder3> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?;
    algebra_from_str(&s).map_err(|e| match e {
        Error::Malformed(msg) => Error::Malformed(format!("{}: {}", path.display(), msg)),
        other => other,
    })
}

pub fn serialize_algebra(alg: &AlgebraOrder3, path: &Path) -> Result<()> {
    let mut s = algebra_to_string(alg);
    s.push('\n');
    std::fs::write(path, s).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
}

/// A series `φ + t ψ1 + … + t^k ψk` in algebra form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesData {
    pub base: AlgebraOrder3,
    pub order: usize,
    pub terms: Vec<AlgebraOrder3>,
}

impl SeriesJson {
    pub fn from_series(s: &SeriesData) -> Self {
        SeriesJson {
            base: AlgebraJson::from_algebra(&s.base),
            order: s.order,
            terms: s.terms.iter().map(algebra_to_term).collect(),
        }
    }

    pub fn to_series(&self) -> Result<SeriesData> {
        let base = self.base.to_algebra()?;
        let (m, n) = (base.m(), base.n());
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(r, t)| {
                term_to_algebra(&format!("term {}", r + 1), m, n, &t.c, &t.d, &t.e).map_err(|e| {
                    match e {
                        Error::IndexOutOfRange(s) => {
                            Error::IndexOutOfRange(format!("term {}: {}", r + 1, s))
                        }
                        Error::Inconsistent(s) => Error::Inconsistent(format!("term {}: {}", r + 1, s)),
                        other => other,
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesData { base, order: self.order, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn round_trip_with_gaussian_scalar() {
        let mut a = AlgebraOrder3::zero("t", 1, 1);
        a.add_e(0, 0, 0, 0, &"1/3+2/5*i".parse().unwrap());
        a.add_d(0, 0, 0, &q(0));
        let s = algebra_to_string(&a);
        assert!(s.contains("\"1/3+2/5*i\""));
        let b = algebra_from_str(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(algebra_to_string(&b), s);
    }

    #[test]
    fn bad_index_is_named() {
        let s = r#"{"label":"x","dims":{"m":1,"n":0},"C":[{"i":1,"j":2,"k":1,"v":"1"}]}"#;
        let err = algebra_from_str(s).unwrap_err().to_string();
        assert!(err.contains("C entry (1,2,1)"), "{}", err);
        let s = r#"{"label":"x","dims":{"m":1,"n":1},"D":[{"i":0,"b":1,"c":1,"v":"1"}]}"#;
        assert!(algebra_from_str(s).is_err());
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(algebra_from_str("{"), Err(Error::Malformed(_))));
        let s = r#"{"label":"x","dims":{"m":1,"n":1},"E":[{"a":1,"b":1,"c":1,"i":1,"v":"1/0"}]}"#;
        assert!(algebra_from_str(s).is_err());
    }
}
