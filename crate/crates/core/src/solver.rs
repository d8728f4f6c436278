//! Linear solve for the 3-bracket: fixing `C` and `D`, the identities J3 and
//! J4 are linear in `E`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{sort3, AlgebraOrder3, BasisChange, EKey};
use crate::catalog::{rep_sl2sl2, RepAction};
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, Echelon, Matrix, SparseVec};
use crate::scalar::GaussRational as Q;

/// Unknowns `E_{abc}^i` with `a ≤ b ≤ c`, ordered lexicographically by
/// `(a, b, c, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unknowns {
    pub m: usize,
    pub n: usize,
    triples: Vec<(usize, usize, usize)>,
    index: BTreeMap<(usize, usize, usize), usize>,
}

impl Unknowns {
    pub fn new(m: usize, n: usize) -> Self {
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    triples.push((a, b, c));
                }
            }
        }
        let index = triples.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        Unknowns { m, n, triples, index }
    }

    pub fn len(&self) -> usize {
        self.triples.len() * self.m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column(&self, a: usize, b: usize, c: usize, i: usize) -> usize {
        self.index[&sort3(a, b, c)] * self.m + i
    }

    pub fn key(&self, col: usize) -> EKey {
        let (a, b, c) = self.triples[col / self.m];
        (a, b, c, col % self.m)
    }
}

/// Which identity instance a row comes from (0-based internally).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowTag {
    J3 { i: usize, a: usize, b: usize, c: usize, k: usize },
    J4 { a: usize, b: usize, c: usize, d: usize, l: usize },
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RowTag::J3 { i, a, b, c, k } => {
                write!(f, "J3 X{} (Y{}, Y{}, Y{}) component X{}", i + 1, a + 1, b + 1, c + 1, k + 1)
            }
            RowTag::J4 { a, b, c, d, l } => {
                write!(f, "J4 (Y{}, Y{}, Y{}, Y{}) component Y{}", a + 1, b + 1, c + 1, d + 1, l + 1)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub unknowns: Unknowns,
    pub rows: Vec<(SparseVec, RowTag)>,
}

impl LinearSystem {
    pub fn ncols(&self) -> usize {
        self.unknowns.len()
    }

    /// Residual of one row on a candidate E tensor.
    pub fn apply(&self, e: &BTreeMap<EKey, Q>) -> Vec<Q> {
        let x: SparseVec = e
            .iter()
            .map(|(&(a, b, c, i), v)| (self.unknowns.column(a, b, c, i), v.clone()))
            .collect();
        self.rows
            .iter()
            .map(|(row, _)| {
                row.iter()
                    .filter_map(|(k, v)| x.get(k).map(|y| v * y))
                    .fold(Q::zero(), |acc, t| acc + t)
            })
            .collect()
    }
}

/// Rows of J3 and J4 with `C` and `D` taken from `alg` (its `E` is ignored).
pub fn build_constraints(alg: &AlgebraOrder3) -> Result<LinearSystem> {
    if !alg.j1_j2_hold() {
        let r = alg.parts(true, true, false).jacobi_residuals();
        return Err(Error::JacobiViolation(
            r.first_violation().unwrap_or_else(|| "J1/J2".into()),
        ));
    }
    let (m, n) = (alg.m(), alg.n());
    let u = Unknowns::new(m, n);
    let mut rows = Vec::new();
    let push = |rows: &mut Vec<(SparseVec, RowTag)>, r: SparseVec, tag: RowTag| {
        if !r.is_empty() {
            rows.push((r, tag));
        }
    };

    // J3: [X_i, {Y_a Y_b Y_c}] − {[X_i,Y_a], Y_b, Y_c} − … = 0, component k.
    for i in 0..m {
        let ad: Vec<SparseVec> = (0..n).map(|b| alg.br01(i, b)).collect();
        let cij: Vec<SparseVec> = (0..m).map(|j| alg.br00(i, j)).collect();
        for &(a, b, c) in &u.triples {
            let mut per_k: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (j, col) in cij.iter().enumerate() {
                for (&k, v) in col {
                    add_scaled(per_k.entry(k).or_default(), v, &single(u.column(a, b, c, j)));
                }
            }
            for (slot, others) in [(a, (b, c)), (b, (a, c)), (c, (a, b))] {
                for (&d, v) in &ad[slot] {
                    for k in 0..m {
                        add_scaled(
                            per_k.entry(k).or_default(),
                            &-v.clone(),
                            &single(u.column(d, others.0, others.1, k)),
                        );
                    }
                }
            }
            for (k, r) in per_k {
                push(&mut rows, r, RowTag::J3 { i, a, b, c, k });
            }
        }
    }

    // J4: Σ_x [μ(others), Y_x] = 0, component l.
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for d in c..n {
                    let quad = [a, b, c, d];
                    let mut per_l: BTreeMap<usize, SparseVec> = BTreeMap::new();
                    for x in 0..4 {
                        let o: Vec<usize> = (0..4).filter(|&y| y != x).map(|y| quad[y]).collect();
                        for i in 0..m {
                            let col = u.column(o[0], o[1], o[2], i);
                            for (&l, v) in &alg.br01(i, quad[x]) {
                                add_scaled(per_l.entry(l).or_default(), v, &single(col));
                            }
                        }
                    }
                    for (l, r) in per_l {
                        push(&mut rows, r, RowTag::J4 { a, b, c, d, l });
                    }
                }
            }
        }
    }
    Ok(LinearSystem { unknowns: u, rows })
}

fn single(col: usize) -> SparseVec {
    [(col, Q::one())].into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub unknown_count: usize,
    pub rank: usize,
    pub nullity: usize,
    /// Canonical basis: one vector per free unknown, free entry 1.
    pub basis: Vec<BTreeMap<EKey, Q>>,
}

pub fn null_space(sys: &LinearSystem) -> SolutionSpace {
    let mut ech = Echelon::new(sys.ncols());
    for (r, _) in &sys.rows {
        ech.insert(r.clone());
    }
    let basis = ech
        .null_space()
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|(col, x)| (sys.unknowns.key(col), x))
                .collect::<BTreeMap<_, _>>()
        })
        .collect::<Vec<_>>();
    SolutionSpace {
        unknown_count: sys.ncols(),
        rank: ech.rank(),
        nullity: basis.len(),
        basis,
    }
}

impl SolutionSpace {
    /// The algebra built from `(C, D)` of `base` and basis vector `k`.
    pub fn algebra(&self, base: &AlgebraOrder3, k: usize) -> AlgebraOrder3 {
        let mut a = base.parts(true, true, false);
        a.set_e_tensor(self.basis[k].clone());
        a
    }
}

/// Solves for all admissible 3-brackets over `(g0, rep)` and re-checks each
/// basis element against the full identities.
pub fn solve_brackets(g0: &AlgebraOrder3, rep: &RepAction) -> Result<SolutionSpace> {
    if rep.generators.len() != g0.m() {
        return Err(Error::DimensionMismatch(format!(
            "representation has {} generators, g0 has dimension {}",
            rep.generators.len(),
            g0.m()
        )));
    }
    let base = rep.to_algebra(g0, "solve");
    solve_for(&base)
}

/// Same, with `C` and `D` read from an algebra.
pub fn solve_for(base: &AlgebraOrder3) -> Result<SolutionSpace> {
    let sys = build_constraints(base)?;
    let sol = null_space(&sys);
    for k in 0..sol.nullity {
        let a = sol.algebra(base, k);
        if let Some(v) = a.jacobi_residuals().first_violation() {
            return Err(Error::Inconsistent(format!("solution {} fails: {}", k + 1, v)));
        }
    }
    Ok(sol)
}

/// `transform(alg1, h) == alg2`, labels ignored.
pub fn check_isomorphism(alg1: &AlgebraOrder3, alg2: &AlgebraOrder3, h: &BasisChange) -> Result<bool> {
    if alg1.dims() != alg2.dims() {
        return Err(Error::DimensionMismatch(format!(
            "{}+{} vs {}+{}",
            alg1.m(),
            alg1.n(),
            alg2.m(),
            alg2.n()
        )));
    }
    Ok(alg1.transform(h)? == *alg2)
}

/// Scalar `λ` with `a = λ b` on the E tensors, if one exists.
pub fn proportionality(a: &BTreeMap<EKey, Q>, b: &BTreeMap<EKey, Q>) -> Option<Q> {
    if a.keys().ne(b.keys()) {
        return None;
    }
    let (k0, b0) = b.iter().next()?;
    let lambda = a[k0].checked_div(b0).ok()?;
    a.iter().all(|(k, v)| *v == &lambda * &b[k]).then_some(lambda)
}

// ---- the 1+1 dimensional variety ----

/// One branch of the `m = n = 1` case split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDimBranch {
    pub condition: &'static str,
    /// Representative `D` value on the branch.
    pub alpha1: Q,
    pub nullity: usize,
    pub classes: Vec<&'static str>,
}

/// J3 for `[X,Y] = α1 Y`, `{Y,Y,Y} = α2 X`: the only nonzero residual
/// entry, equal to `−3 α1 α2`.
pub fn two_dim_constraint(a1: &Q, a2: &Q) -> Q {
    let alg = crate::catalog::two_dim(a1, a2);
    alg.jacobi_residuals()
        .r3
        .get(&(0, 0, 0, 0))
        .and_then(|r| r.get(&0).cloned())
        .unwrap_or_else(Q::zero)
}

/// The `α1 = 0` / `α1 ≠ 0` split: on each branch `D` is fixed (to 0 or,
/// after rescaling `X`, to 1) and the admissible `E` are solved for.
pub fn two_dim_case_split() -> Result<Vec<TwoDimBranch>> {
    let mut out = Vec::new();
    for (cond, a1) in [("alpha1 = 0", Q::zero()), ("alpha1 != 0 (scaled to 1)", Q::one())] {
        let base = crate::catalog::two_dim(&a1, &Q::zero());
        let sol = solve_for(&base)?;
        let classes = if sol.nullity == 0 {
            vec![if a1.is_zero() { "g33" } else { "g32" }]
        } else if a1.is_zero() {
            vec!["g31", "g33"]
        } else {
            vec!["g32"]
        };
        out.push(TwoDimBranch { condition: cond, alpha1: a1, nullity: sol.nullity, classes });
    }
    Ok(out)
}

/// Names the class of a point `(α1, α2)` of the 1+1 variety and returns a
/// basis change carrying the point to the class representative.
pub fn classify_two_dim(a1: &Q, a2: &Q) -> Result<(&'static str, BasisChange)> {
    let r = two_dim_constraint(a1, a2);
    if !r.is_zero() {
        return Err(Error::JacobiViolation(format!(
            "J3 on X1 and (Y1, Y1, Y1): alpha1*alpha2 = {} must vanish",
            a1 * a2
        )));
    }
    let one = Matrix::identity(1);
    let h = |x: Q| BasisChange::new(Matrix::diagonal(&[x]), one.clone());
    if !a1.is_zero() {
        Ok(("g32", h(a1.inv()?)?))
    } else if !a2.is_zero() {
        Ok(("g31", h(a2.clone())?))
    } else {
        Ok(("g33", BasisChange::identity(1, 1)))
    }
}

// ---- four-dimensional modules of the complexified Poincaré algebra ----

/// The six 4-dimensional sl(2)⊕sl(2) modules, translations acting trivially.
pub fn poincare_four_dim_candidates() -> Vec<(&'static str, RepAction)> {
    let sum = |parts: &[(usize, usize)]| {
        RepAction::direct_sum(&parts.iter().map(|&(a, b)| rep_sl2sl2(a, b)).collect::<Vec<_>>())
            .pad(4)
    };
    vec![
        ("D3,0", sum(&[(3, 0)])),
        ("D2,0+D0,0", sum(&[(2, 0), (0, 0)])),
        ("D1,1", sum(&[(1, 1)])),
        ("D1,0+D0,1", sum(&[(1, 0), (0, 1)])),
        ("D1,0+D0,0+D0,0", sum(&[(1, 0), (0, 0), (0, 0)])),
        ("4 D0,0", sum(&[(0, 0), (0, 0), (0, 0), (0, 0)])),
    ]
}

/// Change of g1 basis from the standard `D1,1` to the four `V_m`, as an
/// intertwiner for the rotation generators of the complexified algebra.
pub fn vector_intertwiner() -> Result<Matrix> {
    let h = crate::catalog::complexify_poincare_basis();
    let p = crate::catalog::poincare3().transform(&h)?;
    let target = p.rep_matrices();
    let source = rep_sl2sl2(1, 1);
    // ρ_V(g) T − T ρ_std(g) = 0 for the six rotations
    let mut ech = Echelon::new(16);
    for g in 0..6 {
        for r in 0..4 {
            for c in 0..4 {
                let mut row = SparseVec::new();
                for k in 0..4 {
                    let v = &target[g][(r, k)];
                    if !v.is_zero() {
                        add_scaled(&mut row, v, &single(k * 4 + c));
                    }
                    let w = &source.generators[g][(k, c)];
                    if !w.is_zero() {
                        add_scaled(&mut row, &-w.clone(), &single(r * 4 + k));
                    }
                }
                ech.insert(row);
            }
        }
    }
    let ns = ech.null_space();
    if ns.len() != 1 {
        return Err(Error::Inconsistent(format!("intertwiner space has dimension {}", ns.len())));
    }
    let v = &ns[0];
    let t = Matrix::from_fn(4, 4, |r, c| v.get(&(r * 4 + c)).cloned().unwrap_or_else(Q::zero));
    if t.det().is_zero() {
        return Err(Error::Singular("intertwiner".into()));
    }
    Ok(t)
}

/// The vector-representation algebra in the complexified basis with `g1`
/// in the standard `D1,1` basis.
pub fn poincare3_standard_basis() -> Result<AlgebraOrder3> {
    let h0 = crate::catalog::complexify_poincare_basis().h0;
    let h = BasisChange::new(h0, vector_intertwiner()?)?;
    crate::catalog::poincare3().transform(&h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{irrep_sl2, sl2, sl2adj, sl2spin, two_dim, RepAction};
    use crate::scalar::q;

    fn nullity(rep: RepAction) -> usize {
        solve_brackets(&sl2(), &rep).unwrap().nullity
    }

    #[test]
    fn unknown_count() {
        let base = irrep_sl2(2).to_algebra(&sl2(), "x");
        assert_eq!(build_constraints(&base).unwrap().ncols(), 30);
    }

    #[test]
    fn abelian_one_dim() {
        let sys = build_constraints(&two_dim(&q(0), &q(0))).unwrap();
        assert!(sys.rows.is_empty());
        assert_eq!(null_space(&sys).nullity, 1);
        let sys = build_constraints(&two_dim(&q(1), &q(0))).unwrap();
        assert_eq!(null_space(&sys).nullity, 0);
    }

    #[test]
    fn irreducible_table() {
        for l in [0, 1, 3, 4, 5, 6] {
            assert_eq!(nullity(irrep_sl2(l)), 0, "l = {}", l);
        }
        let sol = solve_brackets(&sl2(), &irrep_sl2(2)).unwrap();
        assert_eq!(sol.nullity, 1);
        assert!(proportionality(sl2adj(&q(1)).e_entries(), &sol.basis[0]).is_some());
    }

    #[test]
    fn spin_case() {
        let rep = RepAction::direct_sum(&[irrep_sl2(1), irrep_sl2(0)]);
        let sol = solve_brackets(&sl2(), &rep).unwrap();
        assert_eq!(sol.nullity, 1);
        assert!(proportionality(sl2spin().e_entries(), &sol.basis[0]).is_some());
    }

    #[test]
    fn rejects_bad_input() {
        let mut a = two_dim(&q(1), &q(0));
        a.add_c(0, 0, 0, &q(0));
        let mut bad = AlgebraOrder3::zero("x", 2, 1);
        bad.add_c(0, 1, 0, &q(1));
        bad.add_d(0, 0, 0, &q(1));
        bad.add_d(1, 0, 0, &q(1));
        assert!(matches!(build_constraints(&bad), Err(Error::JacobiViolation(_))));
    }

    #[test]
    fn two_dim_split() {
        assert_eq!(two_dim_constraint(&q(1), &q(1)), q(-3));
        let b = two_dim_case_split().unwrap();
        assert_eq!(b[0].nullity, 1);
        assert_eq!(b[1].nullity, 0);
        let (name, h) = classify_two_dim(&q(5), &q(0)).unwrap();
        assert_eq!(name, "g32");
        assert!(check_isomorphism(&two_dim(&q(5), &q(0)), &crate::catalog::g32(), &h).unwrap());
        assert!(classify_two_dim(&q(1), &q(2)).is_err());
    }

    #[test]
    fn cubic_rescaling() {
        let h = BasisChange::new(Matrix::identity(3), Matrix::identity(3).scale(&q(2))).unwrap();
        assert!(check_isomorphism(&sl2adj(&q(1)), &sl2adj(&q(8)), &h).unwrap());
        let g = BasisChange::identity(1, 1);
        assert!(!check_isomorphism(&crate::catalog::g31(), &crate::catalog::g32(), &g).unwrap());
    }
}
