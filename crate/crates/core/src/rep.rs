//! Characters, cubic plethysm, equivariant-map typing and nilpotent filtrations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::catalog::{real_translations, RepAction};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::GaussRational as Q;

/// Laurent polynomial with integer coefficients in `q` or `(q1, q2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl CharacterPoly {
    pub fn zero(nvars: usize) -> Self {
        CharacterPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(exps: Vec<i64>, coeff: i64) -> Self {
        let mut c = Self::zero(exps.len());
        c.add_term(exps, coeff);
        c
    }

    /// `q^ℓ + q^{ℓ−2} + … + q^{−ℓ}`.
    pub fn irrep(l: usize) -> Self {
        let mut c = Self::zero(1);
        for p in 0..=l {
            c.add_term(vec![l as i64 - 2 * p as i64], 1);
        }
        c
    }

    pub fn irrep2(a: usize, b: usize) -> Self {
        let ca = Self::irrep(a);
        let cb = Self::irrep(b);
        let mut c = Self::zero(2);
        for (ea, x) in &ca.terms {
            for (eb, y) in &cb.terms {
                c.add_term(vec![ea[0], eb[0]], x * y);
            }
        }
        c
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[i64]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<i64>, coeff: i64) {
        assert_eq!(exps.len(), self.nvars);
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(exps).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.clone();
        for (e, v) in &other.terms {
            c.add_term(e.clone(), *v);
        }
        c
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut c = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            c.add_term(e.clone(), v * s);
        }
        c
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut c = Self::zero(self.nvars);
        for (ea, x) in &self.terms {
            for (eb, y) in &other.terms {
                c.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), x * y);
            }
        }
        c
    }

    /// Adams operation `q ↦ q^k` in every variable.
    pub fn adams(&self, k: i64) -> Self {
        let mut c = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            c.add_term(e.iter().map(|x| x * k).collect(), *v);
        }
        c
    }

    pub fn divide_exact(&self, d: i64) -> Result<Self> {
        let mut c = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            if v % d != 0 {
                return Err(Error::NotACharacter(format!(
                    "coefficient {} of {} not divisible by {}",
                    v,
                    fmt_monomial(e),
                    d
                )));
            }
            c.add_term(e.clone(), v / d);
        }
        Ok(c)
    }

    /// Value at `q = 1`, the dimension of the module.
    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, v)| self.coeff(&e.iter().map(|x| -x).collect::<Vec<_>>()) == *v)
    }

    /// Second symmetric and exterior powers.
    pub fn sym2(&self) -> Result<Self> {
        self.mul(self).add(&self.adams(2)).divide_exact(2)
    }

    pub fn alt2(&self) -> Result<Self> {
        self.mul(self).sub(&self.adams(2)).divide_exact(2)
    }
}

fn fmt_monomial(e: &[i64]) -> String {
    match e {
        [a] => format!("q^{}", a),
        _ => e
            .iter()
            .enumerate()
            .map(|(k, a)| format!("q{}^{}", k + 1, a))
            .collect::<Vec<_>>()
            .join(" "),
    }
}

impl fmt::Display for CharacterPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, v) in self.terms.iter().rev() {
            let (sign, abs) = if *v < 0 { ("-", -v) } else { ("+", *v) };
            if first {
                if *v < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let constant = e.iter().all(|x| *x == 0);
            if abs != 1 || constant {
                write!(f, "{}", abs)?;
            }
            if !constant {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(k, x)| {
                        let name = if self.nvars == 1 { "q".to_string() } else { format!("q{}", k + 1) };
                        if *x == 1 { name } else { format!("{}^{}", name, x) }
                    })
                    .collect();
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Weights of the Cartan generators at `cartan` (indices into the
/// generator list), read off their diagonals.
pub fn character(rep: &RepAction, cartan: &[usize]) -> Result<CharacterPoly> {
    let mut c = CharacterPoly::zero(cartan.len());
    for &h in cartan {
        if !rep.generators[h].is_diagonal() {
            return Err(Error::NonDiagonalCartan(format!(
                "generator {} is not diagonal in the given basis",
                h + 1
            )));
        }
    }
    for p in 0..rep.dim {
        let mut exps = Vec::with_capacity(cartan.len());
        for &h in cartan {
            let w = &rep.generators[h][(p, p)];
            if !w.is_real() || !w.re.is_integer() {
                return Err(Error::NonDiagonalCartan(format!(
                    "weight {} of generator {} on basis vector {} is not an integer",
                    w,
                    h + 1,
                    p + 1
                )));
            }
            exps.push(w.re.to_integer().try_into().expect("small weight"));
        }
        c.add_term(exps, 1);
    }
    Ok(c)
}

/// Character for `sl2` (Cartan `X0` at index 1).
pub fn character_sl2(rep: &RepAction) -> Result<CharacterPoly> {
    character(rep, &[1])
}

/// Character for `sl2⊕sl2` (Cartans `U0`, `V0` at indices 1 and 4).
pub fn character_sl2sl2(rep: &RepAction) -> Result<CharacterPoly> {
    character(rep, &[1, 4])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlethysmTriple {
    pub sym3: CharacterPoly,
    pub mixed: CharacterPoly,
    pub alt3: CharacterPoly,
}

pub fn plethysm_cube(chi: &CharacterPoly) -> Result<PlethysmTriple> {
    let c3 = chi.mul(chi).mul(chi);
    let c12 = chi.mul(&chi.adams(2));
    let p3 = chi.adams(3);
    Ok(PlethysmTriple {
        sym3: c3.add(&c12.scale(3)).add(&p3.scale(2)).divide_exact(6)?,
        mixed: c3.sub(&p3).divide_exact(3)?,
        alt3: c3.sub(&c12.scale(3)).add(&p3.scale(2)).divide_exact(6)?,
    })
}

/// Multiset of irreducibles, highest weight first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Decomposition(pub Vec<(Vec<usize>, i64)>);

impl Decomposition {
    pub fn multiplicity(&self, hw: &[usize]) -> i64 {
        self.0.iter().find(|(w, _)| w == hw).map_or(0, |(_, m)| *m)
    }

    pub fn dim(&self) -> i64 {
        self.0
            .iter()
            .map(|(w, m)| m * w.iter().map(|a| *a as i64 + 1).product::<i64>())
            .sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(w, m)| {
                let label = format!(
                    "D{}",
                    w.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
                );
                if *m == 1 { label } else { format!("{} {}", m, label) }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Greedy peeling from the (lexicographically) highest weight.
pub fn decompose(chi: &CharacterPoly) -> Result<Decomposition> {
    let mut rest = chi.clone();
    let mut out = Vec::new();
    while let Some((top, &c)) = rest.terms.iter().next_back() {
        let top = top.clone();
        if c < 0 || top.iter().any(|x| *x < 0) {
            return Err(Error::NotACharacter(format!(
                "peeling reached coefficient {} at {}",
                c,
                fmt_monomial(&top)
            )));
        }
        let hw: Vec<usize> = top.iter().map(|x| *x as usize).collect();
        let irr = match hw.as_slice() {
            [a] => CharacterPoly::irrep(*a),
            [a, b] => CharacterPoly::irrep2(*a, *b),
            _ => return Err(Error::NotACharacter("only 1 or 2 variables".into())),
        };
        rest = rest.sub(&irr.scale(c));
        out.push((hw, c));
    }
    Ok(Decomposition(out))
}

/// Multiplicity of the irreducible `hw` in `chi`.
pub fn multiplicity(chi: &CharacterPoly, hw: &[usize]) -> Result<i64> {
    Ok(decompose(chi)?.multiplicity(hw))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MapType {
    #[serde(rename = "I_S")]
    IS,
    #[serde(rename = "I_M")]
    IM,
    #[serde(rename = "I_A")]
    IA,
    #[serde(rename = "II_S")]
    IIS,
    #[serde(rename = "II_A")]
    IIA,
    #[serde(rename = "III")]
    III,
}

impl fmt::Display for MapType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapType::IS => "I_S",
            MapType::IM => "I_M",
            MapType::IA => "I_A",
            MapType::IIS => "II_S",
            MapType::IIA => "II_A",
            MapType::III => "III",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    /// Summand indices, 1-based, nondecreasing.
    pub summands: [usize; 3],
    pub labels: [String; 3],
    /// Multiplicity of the target per type (all types of the triple's shape).
    pub types: Vec<(MapType, i64)>,
    /// `D = D_{a,a}` with `a` odd (cube shape only).
    pub zero_type_i: bool,
    /// `a, b` even and `D' = D_{1,1}` (square shape only).
    pub zero_type_ii_s: bool,
}

impl TripleReport {
    pub fn applicable(&self) -> Vec<MapType> {
        self.types.iter().filter(|(_, m)| *m > 0).map(|(t, _)| *t).collect()
    }

    pub fn total(&self) -> i64 {
        self.types.iter().map(|(_, m)| m).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivariantTypeReport {
    pub single_sl2: bool,
    pub target: String,
    pub triples: Vec<TripleReport>,
}

impl EquivariantTypeReport {
    /// Upper bound on the number of independent equivariant cubic maps.
    pub fn total(&self) -> i64 {
        self.triples.iter().map(TripleReport::total).sum()
    }
}

fn summand_label(s: (usize, usize), single: bool) -> String {
    if single { format!("D{}", s.0) } else { format!("D{},{}", s.0, s.1) }
}

/// For each multiset of three summands of `g1`, multiplicities of the
/// target (`D1,1`, or the adjoint `D2` for a single sl(2)) in the relevant
/// cubic piece. With two factors the pieces factor through each sl(2) and
/// the per-factor multiplicities of `D1` multiply.
pub fn equivariant_existence(summands: &[(usize, usize)], single_sl2: bool) -> Result<EquivariantTypeReport> {
    // per-factor data: list of (character of factor 1, factor 2)
    let factors: Vec<Vec<CharacterPoly>> = summands
        .iter()
        .map(|&(a, b)| {
            if single_sl2 {
                vec![CharacterPoly::irrep(a)]
            } else {
                vec![CharacterPoly::irrep(a), CharacterPoly::irrep(b)]
            }
        })
        .collect();
    let target: usize = if single_sl2 { 2 } else { 1 };
    let mult = |c: &CharacterPoly| multiplicity(c, &[target]);
    let product = |f: &dyn Fn(usize) -> Result<i64>| -> Result<i64> {
        let nf = if single_sl2 { 1 } else { 2 };
        let mut p = 1;
        for k in 0..nf {
            p *= f(k)?;
        }
        Ok(p)
    };
    let mut triples = Vec::new();
    let n = summands.len();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let idx = [i, j, k];
                let labels = idx.map(|x| summand_label(summands[x], single_sl2));
                let mut types = Vec::new();
                let mut zero_i = false;
                let mut zero_ii = false;
                if i == j && j == k {
                    let pl: Vec<PlethysmTriple> =
                        factors[i].iter().map(plethysm_cube).collect::<Result<_>>()?;
                    types.push((MapType::IS, product(&|f| mult(&pl[f].sym3))?));
                    types.push((MapType::IM, product(&|f| mult(&pl[f].mixed))?));
                    types.push((MapType::IA, product(&|f| mult(&pl[f].alt3))?));
                    let (a, b) = summands[i];
                    zero_i = !single_sl2 && a == b && a % 2 == 1;
                } else if i == j || j == k {
                    let (d, dp) = if i == j { (i, k) } else { (k, i) };
                    let s2: Vec<CharacterPoly> =
                        factors[d].iter().map(|c| c.sym2()).collect::<Result<_>>()?;
                    let a2: Vec<CharacterPoly> =
                        factors[d].iter().map(|c| c.alt2()).collect::<Result<_>>()?;
                    types.push((MapType::IIS, product(&|f| mult(&s2[f].mul(&factors[dp][f])))?));
                    types.push((MapType::IIA, product(&|f| mult(&a2[f].mul(&factors[dp][f])))?));
                    let (a, b) = summands[d];
                    zero_ii = !single_sl2 && a % 2 == 0 && b % 2 == 0 && summands[dp] == (1, 1);
                } else {
                    types.push((
                        MapType::III,
                        product(&|f| mult(&factors[i][f].mul(&factors[j][f]).mul(&factors[k][f])))?,
                    ));
                }
                triples.push(TripleReport {
                    summands: idx.map(|x| x + 1),
                    labels,
                    types,
                    zero_type_i: zero_i,
                    zero_type_ii_s: zero_ii,
                });
            }
        }
    }
    Ok(EquivariantTypeReport {
        single_sl2,
        target: if single_sl2 { "D2".into() } else { "D1,1".into() },
        triples,
    })
}

/// Kernel filtration of a nilpotent translation action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    /// `A_1 ⊆ … ⊆ A_N`, with `A_N` the whole space.
    pub a: Vec<Subspace>,
    /// `B_p = Σ_m ρ(P_m) A_p`, same indexing as `a`.
    pub b: Vec<Subspace>,
    /// `ρ(P_m) A_p` for the real translations `P_0..P_3`.
    pub b_components: Vec<[Subspace; 4]>,
    /// `A_p` stable under the six rotation generators.
    pub module_invariant: Vec<bool>,
    /// `B_p ⊆ A_{p−1}`.
    pub b_in_previous: Vec<bool>,
    /// `ρ(P_0) A_p = ρ(P_i) A_p` for `i = 1, 2, 3`.
    pub b_components_agree: Vec<bool>,
}

impl Filtration {
    pub fn length(&self) -> usize {
        self.a.len()
    }

    pub fn all_invariant(&self) -> bool {
        self.module_invariant.iter().all(|x| *x)
    }
}

/// Subspace `{v : M_k v ∈ S for all k}`.
fn preimage_all(mats: &[Matrix], s: &Subspace) -> Subspace {
    let d = s.ambient();
    // annihilator of s: functionals f with f·b = 0 for basis vectors b
    let basis = s.basis();
    let ann: Vec<Vec<Q>> = if basis.is_empty() {
        (0..d).map(|k| crate::linalg::unit(d, k)).collect()
    } else {
        Matrix::from_rows(basis).kernel()
    };
    if ann.is_empty() {
        return Subspace::whole(d);
    }
    let f = Matrix::from_rows(ann);
    let mut rows = Vec::new();
    for m in mats {
        let fm = f.mul(m);
        for r in 0..fm.rows() {
            rows.push(fm.row(r));
        }
    }
    Subspace::span(d, Matrix::from_rows(rows).kernel())
}

/// Builds `A_p` for a 10-generator action in `iso13c` order (rotations
/// first, then `p++, p+−, p−+, p−−`).
pub fn nilpotent_filtration(rep: &RepAction) -> Result<Filtration> {
    if rep.generators.len() != 10 {
        return Err(Error::DimensionMismatch(format!(
            "expected 10 generators, got {}",
            rep.generators.len()
        )));
    }
    let d = rep.dim;
    let ps: Vec<Matrix> = real_translations()
        .iter()
        .map(|coef| {
            let mut m = Matrix::zeros(d, d);
            for (k, c) in coef.iter().enumerate() {
                if !c.is_zero() {
                    m = m.add(&rep.generators[6 + k].scale(c));
                }
            }
            m
        })
        .collect();
    for x in 0..4 {
        for y in x + 1..4 {
            if !ps[x].commutator(&ps[y]).is_zero() {
                return Err(Error::NotNilpotent(format!("P{} and P{} do not commute", x, y)));
            }
        }
    }
    let rot = &rep.generators[..6];
    let mut a: Vec<Subspace> = Vec::new();
    let mut prev = Subspace::zero(d);
    loop {
        let next = preimage_all(&ps, &prev);
        if next.dim() == prev.dim() {
            return Err(Error::NotNilpotent(format!(
                "kernel chain stalls at dimension {} of {}",
                prev.dim(),
                d
            )));
        }
        a.push(next.clone());
        if next.dim() == d {
            break;
        }
        prev = next;
    }
    let mut b = Vec::new();
    let mut comps = Vec::new();
    let mut inv = Vec::new();
    let mut b_prev = Vec::new();
    let mut agree = Vec::new();
    for (p, ap) in a.iter().enumerate() {
        let c: [Subspace; 4] = std::array::from_fn(|m| ap.image(&ps[m]));
        let total = c.iter().skip(1).fold(c[0].clone(), |acc, s| acc.sum(s));
        inv.push(rot.iter().all(|r| ap.is_invariant_under(r)));
        let below = if p == 0 { Subspace::zero(d) } else { a[p - 1].clone() };
        b_prev.push(total.is_subspace_of(&below));
        agree.push(c[1..].iter().all(|s| *s == c[0]));
        b.push(total);
        comps.push(c);
    }
    Ok(Filtration {
        a,
        b,
        b_components: comps,
        module_invariant: inv,
        b_in_previous: b_prev,
        b_components_agree: agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{irrep_sl2, nilpotent_extension, rep_sl2sl2};

    #[test]
    fn irrep_characters() {
        assert_eq!(character_sl2(&irrep_sl2(1)).unwrap().to_string(), "q + q^-1");
        assert_eq!(character_sl2(&irrep_sl2(2)).unwrap(), CharacterPoly::irrep(2));
        assert_eq!(character_sl2sl2(&rep_sl2sl2(1, 1)).unwrap(), CharacterPoly::irrep2(1, 1));
        assert_eq!(character_sl2sl2(&rep_sl2sl2(2, 3)).unwrap(), CharacterPoly::irrep2(2, 3));
    }

    #[test]
    fn non_diagonal_cartan_rejected() {
        let r = irrep_sl2(1);
        let h = Matrix::from_rows(vec![vec![Q::from_int(1), Q::from_int(1)], vec![Q::from_int(0), Q::from_int(1)]]);
        let r = r.conjugate(&h).unwrap();
        assert!(matches!(character_sl2(&r), Err(Error::NonDiagonalCartan(_))));
    }

    #[test]
    fn clebsch_gordan() {
        let d2 = CharacterPoly::irrep(2);
        assert_eq!(decompose(&d2.mul(&d2)).unwrap().to_string(), "D4 + D2 + D0");
        assert_eq!(decompose(&CharacterPoly::one(1)).unwrap().to_string(), "D0");
        let s = plethysm_cube(&d2).unwrap();
        assert_eq!(decompose(&s.sym3).unwrap().to_string(), "D6 + D2");
    }

    #[test]
    fn plethysm_of_d1() {
        let d1 = CharacterPoly::irrep(1);
        let p = plethysm_cube(&d1).unwrap();
        assert_eq!(p.mixed, d1);
        assert!(p.alt3.is_zero());
        assert_eq!(p.sym3, CharacterPoly::irrep(3));
    }

    #[test]
    fn non_character_rejected() {
        let bad = CharacterPoly::monomial(vec![1], 1);
        assert!(decompose(&bad).is_err());
        let neg = CharacterPoly::irrep(2).sub(&CharacterPoly::irrep(4));
        assert!(decompose(&neg).is_err());
    }

    #[test]
    fn type_report_examples() {
        let r = equivariant_existence(&[(1, 1)], false).unwrap();
        assert_eq!(r.triples[0].applicable(), vec![MapType::IM]);
        assert!(r.triples[0].zero_type_i);
        let r = equivariant_existence(&[(1, 1), (2, 0), (0, 2)], false).unwrap();
        let t = r.triples.iter().find(|t| t.summands == [1, 2, 2]).unwrap();
        assert!(t.zero_type_ii_s);
        assert!(t.applicable().contains(&MapType::IIS));
        let r = equivariant_existence(&[(4, 0)], true).unwrap();
        assert!(r.triples[0].total() >= 0);
    }

    #[test]
    fn filtrations() {
        let v = nilpotent_filtration(&nilpotent_extension("vector_plus_scalar").unwrap()).unwrap();
        assert_eq!(v.length(), 2);
        assert_eq!(v.a[0].dim(), 4);
        assert!(v.all_invariant());
        let t = nilpotent_filtration(&nilpotent_extension("spinor_triple").unwrap()).unwrap();
        assert_eq!(t.a[0].dim(), 4);
        assert_eq!(t.b[1].dim(), 2);
        let trivial = rep_sl2sl2(1, 1).pad(4);
        let f = nilpotent_filtration(&trivial).unwrap();
        assert_eq!(f.length(), 1);
    }
}
