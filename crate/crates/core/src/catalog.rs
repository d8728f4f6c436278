//! Named algebras, representations and basis changes.

use num_traits::{One, Zero};

use crate::algebra::{AlgebraOrder3, BasisChange};
use crate::error::{Error, Result};
use crate::linalg::{dense_to_sparse, sparse_to_dense, Echelon, Matrix};
use crate::scalar::{q, GaussRational as Q};

/// Matrices of the g0 generators acting on g1, with `(ρ_i)_{cb} = D_{ib}^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepAction {
    pub generators: Vec<Matrix>,
    pub dim: usize,
    pub labels: Vec<String>,
}

impl RepAction {
    pub fn new(generators: Vec<Matrix>, labels: Vec<String>) -> Self {
        let dim = labels.len();
        assert!(generators.iter().all(|g| g.rows() == dim && g.cols() == dim));
        RepAction { generators, dim, labels }
    }

    pub fn trivial(ngens: usize, dim: usize) -> Self {
        RepAction::new(
            vec![Matrix::zeros(dim, dim); ngens],
            (0..dim).map(|k| format!("e{}", k + 1)).collect(),
        )
    }

    /// Block-diagonal sum. Labels of later summands get primes when they
    /// collide with earlier ones.
    pub fn direct_sum(parts: &[RepAction]) -> RepAction {
        let ngens = parts.first().map_or(0, |p| p.generators.len());
        assert!(parts.iter().all(|p| p.generators.len() == ngens));
        let generators = (0..ngens)
            .map(|g| {
                Matrix::direct_sum(&parts.iter().map(|p| p.generators[g].clone()).collect::<Vec<_>>())
            })
            .collect();
        let mut labels: Vec<String> = Vec::new();
        for p in parts {
            for l in &p.labels {
                let mut l = l.clone();
                while labels.contains(&l) {
                    l.push('\'');
                }
                labels.push(l);
            }
        }
        RepAction::new(generators, labels)
    }

    /// Appends `extra` zero generators (e.g. translations acting trivially).
    pub fn pad(&self, extra: usize) -> RepAction {
        let mut g = self.generators.clone();
        g.extend(std::iter::repeat(Matrix::zeros(self.dim, self.dim)).take(extra));
        RepAction::new(g, self.labels.clone())
    }

    /// Conjugates by `h`: new basis vectors are the columns of `h`.
    pub fn conjugate(&self, h: &Matrix) -> Result<RepAction> {
        let hinv = h.inverse()?;
        Ok(RepAction::new(
            self.generators.iter().map(|g| hinv.mul(g).mul(h)).collect(),
            (0..self.dim).map(|k| format!("e{}", k + 1)).collect(),
        ))
    }

    /// Checks `[ρ_i, ρ_j] = C_{ij}^k ρ_k` against the bracket of `g0`.
    pub fn satisfies_relations(&self, g0: &AlgebraOrder3) -> bool {
        self.relation_defect(g0).is_none()
    }

    /// First pair of generators whose commutator is wrong (1-based).
    pub fn relation_defect(&self, g0: &AlgebraOrder3) -> Option<(usize, usize)> {
        let m = self.generators.len();
        if g0.m() != m {
            return Some((0, 0));
        }
        for i in 0..m {
            for j in i + 1..m {
                let lhs = self.generators[i].commutator(&self.generators[j]);
                let mut rhs = Matrix::zeros(self.dim, self.dim);
                for (k, v) in g0.br00(i, j) {
                    rhs = rhs.add(&self.generators[k].scale(&v));
                }
                if lhs != rhs {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    /// `g0` with this action as D and no 3-bracket.
    pub fn to_algebra(&self, g0: &AlgebraOrder3, label: &str) -> AlgebraOrder3 {
        let mut alg = AlgebraOrder3::zero(label, g0.m(), self.dim);
        for (&(i, j, k), v) in g0.c_entries() {
            alg.add_c(i, j, k, v);
        }
        alg.set_rep_matrices(&self.generators);
        alg
    }

    pub fn from_algebra(alg: &AlgebraOrder3) -> RepAction {
        RepAction::new(
            alg.rep_matrices(),
            (0..alg.n()).map(|k| format!("Y{}", k + 1)).collect(),
        )
    }
}

/// Minkowski metric diag(1, −1, −1, −1), indices 0..3.
pub fn eta(a: usize, b: usize) -> i64 {
    match (a == b, a) {
        (false, _) => 0,
        (true, 0) => 1,
        (true, _) => -1,
    }
}

/// The so(2,3) metric diag(1, −1, −1, −1, 1), indices 0..4.
pub fn eta5(a: usize, b: usize) -> i64 {
    if a == 4 && b == 4 {
        1
    } else if a == 4 || b == 4 {
        0
    } else {
        eta(a, b)
    }
}

/// Ordered list of antisymmetric index pairs `M_ab` with `a < b`.
struct Pairs(Vec<(usize, usize)>);

impl Pairs {
    fn lorentz() -> Self {
        Pairs(vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn so23() -> Self {
        let mut p = Pairs::lorentz().0;
        p.extend([(0, 4), (1, 4), (2, 4), (3, 4)]);
        Pairs(p)
    }

    /// Index and sign of `M_ab`; `None` for `a == b`.
    fn index(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        if a == b {
            return None;
        }
        let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
        self.0.iter().position(|&p| p == key).map(|k| (k, sign))
    }

    /// `[M_ab, M_cd] = −η_bd M_ac − η_ac M_bd + η_ad M_bc + η_bc M_ad`.
    fn bracket(&self, i: usize, j: usize, g: fn(usize, usize) -> i64) -> Vec<(usize, i64)> {
        let (a, b) = self.0[i];
        let (c, d) = self.0[j];
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (coef, x, y) in [
            (-g(b, d), a, c),
            (-g(a, c), b, d),
            (g(a, d), b, c),
            (g(b, c), a, d),
        ] {
            if coef == 0 {
                continue;
            }
            if let Some((k, s)) = self.index(x, y) {
                match out.iter_mut().find(|(kk, _)| *kk == k) {
                    Some(e) => e.1 += coef * s,
                    None => out.push((k, coef * s)),
                }
            }
        }
        out.retain(|&(_, v)| v != 0);
        out
    }

    /// Invariant form `η_ac η_bd − η_ad η_bc`.
    fn form(&self, i: usize, j: usize, g: fn(usize, usize) -> i64) -> i64 {
        let (a, b) = self.0[i];
        let (c, d) = self.0[j];
        g(a, c) * g(b, d) - g(a, d) * g(b, c)
    }
}

fn sl2_g0() -> AlgebraOrder3 {
    // basis (X+, X0, X−)
    let mut g = AlgebraOrder3::zero("sl2", 3, 0);
    g.add_c(0, 1, 0, &q(-2));
    g.add_c(0, 2, 1, &q(1));
    g.add_c(1, 2, 2, &q(-2));
    g
}

/// sl(2) with basis `(X+, X0, X−)`, `[X0, X±] = ±2X±`, `[X+, X−] = X0`.
pub fn sl2() -> AlgebraOrder3 {
    sl2_g0()
}

/// Irreducible sl(2) module of dimension `ℓ+1` on `Y_ℓ, Y_{ℓ−2}, …, Y_{−ℓ}`.
///
/// `X+ Y_w = ((ℓ−w)/2) Y_{w+2}` and `X− Y_w = ((ℓ+w)/2) Y_{w−2}`, except for
/// `ℓ = 2` which uses the adjoint normalization `X+ Y0 = −2Y2`, `X− Y0 = 2Y−2`,
/// `X+ Y−2 = Y0`, `X− Y2 = −Y0`.
pub fn irrep_sl2(l: usize) -> RepAction {
    let dim = l + 1;
    let mut xp = Matrix::zeros(dim, dim);
    let mut x0 = Matrix::zeros(dim, dim);
    let mut xm = Matrix::zeros(dim, dim);
    for p in 0..dim {
        let w = l as i64 - 2 * p as i64;
        x0[(p, p)] = q(w);
        if p > 0 {
            xp[(p - 1, p)] = q(p as i64);
        }
        if p + 1 < dim {
            xm[(p + 1, p)] = q((l - p) as i64);
        }
    }
    if l == 2 {
        xp[(0, 1)] = q(-2);
        xp[(1, 2)] = q(1);
        xm[(1, 0)] = q(-1);
        xm[(2, 1)] = q(2);
    }
    let labels = (0..dim)
        .map(|p| format!("Y{}", l as i64 - 2 * p as i64))
        .collect();
    RepAction::new(vec![xp, x0, xm], labels)
}

/// `D_i ⊗ D_j` for sl(2)⊕sl(2) with generators `(U+, U0, U−, V+, V0, V−)`.
pub fn rep_sl2sl2(i: usize, j: usize) -> RepAction {
    let a = irrep_sl2(i);
    let b = irrep_sl2(j);
    let ia = Matrix::identity(a.dim);
    let ib = Matrix::identity(b.dim);
    let mut gens = Vec::with_capacity(6);
    for g in &a.generators {
        gens.push(g.kron(&ib));
    }
    for g in &b.generators {
        gens.push(ia.kron(g));
    }
    let mut labels = Vec::new();
    for p in 0..a.dim {
        for r in 0..b.dim {
            labels.push(format!("({},{})", i as i64 - 2 * p as i64, j as i64 - 2 * r as i64));
        }
    }
    RepAction::new(gens, labels)
}

/// sl(2)⊕sl(2) in basis `(U+, U0, U−, V+, V0, V−)`.
pub fn sl2sl2() -> AlgebraOrder3 {
    let s = sl2_g0();
    let mut g = AlgebraOrder3::zero("sl2+sl2", 6, 0);
    for (&(i, j, k), v) in s.c_entries() {
        g.add_c(i, j, k, v);
        g.add_c(i + 3, j + 3, k + 3, v);
    }
    g
}

/// `Tr(ρ_a ρ_b)`.
pub fn killing_form(rep: &RepAction) -> Matrix {
    let m = rep.generators.len();
    Matrix::from_fn(m, m, |a, b| rep.generators[a].mul(&rep.generators[b]).trace())
}

/// Adjoint representation of a Lie algebra given by its C tensor.
pub fn adjoint_rep(g0: &AlgebraOrder3) -> RepAction {
    let m = g0.m();
    let gens = (0..m)
        .map(|i| {
            let mut mat = Matrix::zeros(m, m);
            for j in 0..m {
                for (k, v) in g0.br00(i, j) {
                    mat[(k, j)] = v;
                }
            }
            mat
        })
        .collect();
    RepAction::new(gens, (0..m).map(|k| format!("A{}", k + 1)).collect())
}

/// Adds `E_{abc} = g_ab X_c + g_bc X_a + g_ca X_b` (times `t`), where `g1`
/// basis index `a` is identified with g0 index `a + offset`... no offset:
/// both bases are listed in the same order.
fn add_form_cube(alg: &mut AlgebraOrder3, form: &Matrix, t: &Q) {
    let n = alg.n();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    let g = &form[(x, y)];
                    if !g.is_zero() {
                        alg.add_e(a, b, c, z, &(g * t));
                    }
                }
            }
        }
    }
}

/// Trace form of sl(2) normalized to `g+- = 1`, `g00 = 2`.
pub fn sl2_form() -> Matrix {
    Matrix::from_rows(vec![
        vec![q(0), q(0), q(1)],
        vec![q(0), q(2), q(0)],
        vec![q(1), q(0), q(0)],
    ])
}

/// `sl(2) ⊕ D2` with `{Y_a, Y_b, Y_c} = t(g_ab X_c + g_bc X_a + g_ca X_b)`.
/// `kappa` rescales the adjoint trace form; `1/4` gives `g+- = 1, g00 = 2`.
pub fn sl2adj_with(t: &Q, kappa: &Q) -> AlgebraOrder3 {
    let rep = irrep_sl2(2);
    let mut alg = rep.to_algebra(&sl2_g0(), "sl2adj");
    let form = killing_form(&adjoint_rep(&sl2_g0())).scale(kappa);
    add_form_cube(&mut alg, &form, t);
    alg
}

pub fn sl2adj(t: &Q) -> AlgebraOrder3 {
    sl2adj_with(t, &Q::from_ratio(1, 4))
}

/// `sl(2) ⊕ D2 ⊕ D0^k` with `{λ_i, λ_j, Y_w} = α_ij X_w`.
pub fn sl2red(alpha: &Matrix) -> Result<AlgebraOrder3> {
    let k = alpha.rows();
    if !alpha.is_square() || *alpha != alpha.transpose() {
        return Err(Error::BadParams("alpha must be a symmetric k x k matrix".into()));
    }
    let rep = RepAction::direct_sum(&[irrep_sl2(2), RepAction::trivial(3, k)]);
    let mut alg = rep.to_algebra(&sl2_g0(), "sl2red");
    for i in 0..k {
        for j in i..k {
            let a = &alpha[(i, j)];
            if a.is_zero() {
                continue;
            }
            for w in 0..3 {
                alg.add_e(3 + i, 3 + j, w, w, a);
            }
        }
    }
    Ok(alg)
}

/// `sl(2) ⊕ D1 ⊕ D0` on `(Y1, Y−1, λ)`.
pub fn sl2spin() -> AlgebraOrder3 {
    let rep = RepAction::direct_sum(&[irrep_sl2(1), RepAction::trivial(3, 1)]);
    let mut alg = rep.to_algebra(&sl2_g0(), "sl2spin");
    alg.add_e(2, 0, 0, 0, &q(-2));
    alg.add_e(2, 0, 1, 1, &q(1));
    alg.add_e(2, 1, 1, 2, &q(2));
    alg
}

/// Poincaré algebra `(L01, L02, L03, L12, L13, L23, P0, P1, P2, P3)`.
pub fn poincare_g0() -> AlgebraOrder3 {
    let pairs = Pairs::lorentz();
    let mut g = AlgebraOrder3::zero("iso(1,3)", 10, 0);
    for i in 0..6 {
        for j in i + 1..6 {
            for (k, v) in pairs.bracket(i, j, eta) {
                g.add_c(i, j, k, &q(v));
            }
        }
        // [L_mn, P_p] = η_np P_m − η_mp P_n
        let (m, n) = pairs.0[i];
        for p in 0..4 {
            g.add_c(i, 6 + p, 6 + m, &q(eta(n, p)));
            g.add_c(i, 6 + p, 6 + n, &q(-eta(m, p)));
        }
    }
    g
}

/// Lorentz vector action `[L_mn, V_p] = η_np V_m − η_mp V_n` as 6 matrices.
fn lorentz_vector() -> Vec<Matrix> {
    let pairs = Pairs::lorentz();
    (0..6)
        .map(|i| {
            let (m, n) = pairs.0[i];
            Matrix::from_fn(4, 4, |r, p| {
                if r == m {
                    q(eta(n, p))
                } else if r == n {
                    q(-eta(m, p))
                } else {
                    q(0)
                }
            })
        })
        .collect()
}

/// Lorentz adjoint action on the six `V_mn`.
fn lorentz_adjoint() -> Vec<Matrix> {
    let pairs = Pairs::lorentz();
    (0..6)
        .map(|i| {
            let mut mat = Matrix::zeros(6, 6);
            for j in 0..6 {
                for (k, v) in pairs.bracket(i, j, eta) {
                    mat[(k, j)] = q(v);
                }
            }
            mat
        })
        .collect()
}

/// Four-dimensional Poincaré algebra of order 3 on the vector representation.
pub fn poincare3() -> AlgebraOrder3 {
    let g0 = poincare_g0();
    let mut gens = lorentz_vector();
    gens.extend(std::iter::repeat(Matrix::zeros(4, 4)).take(4));
    let rep = RepAction::new(gens, (0..4).map(|m| format!("V{}", m)).collect());
    let mut alg = rep.to_algebra(&g0, "poincare3");
    for a in 0..4 {
        for b in a..4 {
            for c in b..4 {
                // η_mn P_r + η_mr P_n + η_rn P_m
                alg.add_e(a, b, c, 6 + c, &q(eta(a, b)));
                alg.add_e(a, b, c, 6 + b, &q(eta(a, c)));
                alg.add_e(a, b, c, 6 + a, &q(eta(c, b)));
            }
        }
    }
    alg
}

/// so(2,3) in basis `(M01, M02, M03, M12, M13, M23, M04, M14, M24, M34)`.
pub fn so23_g0() -> AlgebraOrder3 {
    let pairs = Pairs::so23();
    let mut g = AlgebraOrder3::zero("so(2,3)", 10, 0);
    for i in 0..10 {
        for j in i + 1..10 {
            for (k, v) in pairs.bracket(i, j, eta5) {
                g.add_c(i, j, k, &q(v));
            }
        }
    }
    g
}

fn so23_with_form(form: &Matrix, label: &str) -> AlgebraOrder3 {
    let g0 = so23_g0();
    let mut alg = adjoint_rep(&g0).to_algebra(&g0, label);
    add_form_cube(&mut alg, form, &Q::one());
    alg
}

/// `so(2,3) ⊕ ad so(2,3)` with the 3-bracket built from the invariant form
/// `g(M_ab, M_cd) = η_ac η_bd − η_ad η_bc`.
pub fn so23_order3() -> AlgebraOrder3 {
    let pairs = Pairs::so23();
    let form = Matrix::from_fn(10, 10, |i, j| q(pairs.form(i, j, eta5)));
    so23_with_form(&form, "so23_order3")
}

/// Same, with the trace form of the adjoint representation.
pub fn so23_adjoint() -> AlgebraOrder3 {
    let form = killing_form(&adjoint_rep(&so23_g0()));
    so23_with_form(&form, "so23_adjoint")
}

/// Contracted algebra on `(L_mn, P_m) ⊕ (V_mn, V_m)`, written out term by term.
pub fn lege_mica() -> AlgebraOrder3 {
    let pairs = Pairs::lorentz();
    let g0 = poincare_g0();
    let adj = lorentz_adjoint();
    let vec = lorentz_vector();
    let mut gens: Vec<Matrix> = (0..6)
        .map(|i| Matrix::direct_sum(&[adj[i].clone(), vec[i].clone()]))
        .collect();
    gens.extend(std::iter::repeat(Matrix::zeros(10, 10)).take(4));
    let mut labels: Vec<String> = pairs.0.iter().map(|(a, b)| format!("V{}{}", a, b)).collect();
    labels.extend((0..4).map(|m| format!("V{}", m)));
    let mut alg = RepAction::new(gens, labels).to_algebra(&g0, "lege_mica");
    // {V_mn, V_pq, V_r} = (η_mp η_nq − η_mq η_np) P_r
    for a in 0..6 {
        for b in a..6 {
            let g = pairs.form(a, b, eta);
            if g == 0 {
                continue;
            }
            for r in 0..4 {
                alg.add_e(a, b, 6 + r, 6 + r, &q(g));
            }
        }
    }
    // {V_m, V_p, V_r} = η_mp P_r + η_mr P_p + η_pr P_m
    for a in 0..4 {
        for b in a..4 {
            for c in b..4 {
                alg.add_e(6 + a, 6 + b, 6 + c, 6 + c, &q(eta(a, b)));
                alg.add_e(6 + a, 6 + b, 6 + c, 6 + b, &q(eta(a, c)));
                alg.add_e(6 + a, 6 + b, 6 + c, 6 + a, &q(eta(b, c)));
            }
        }
    }
    alg
}

/// `{Y,Y,Y} = X`, `[X,Y] = 0`.
pub fn g31() -> AlgebraOrder3 {
    let mut g = AlgebraOrder3::zero("g31", 1, 1);
    g.add_e(0, 0, 0, 0, &q(1));
    g
}

/// `[X,Y] = Y`, `{Y,Y,Y} = 0`.
pub fn g32() -> AlgebraOrder3 {
    let mut g = AlgebraOrder3::zero("g32", 1, 1);
    g.add_d(0, 0, 0, &q(1));
    g
}

pub fn g33() -> AlgebraOrder3 {
    AlgebraOrder3::zero("g33", 1, 1)
}

/// The general 2-dimensional candidate `[X,Y] = α1 Y`, `{Y,Y,Y} = α2 X`.
pub fn two_dim(a1: &Q, a2: &Q) -> AlgebraOrder3 {
    let mut g = AlgebraOrder3::zero("F11", 1, 1);
    g.add_d(0, 0, 0, a1);
    g.add_e(0, 0, 0, 0, a2);
    g
}

/// Change from `(L_mn, P_m)` to `(U+, U0, U−, V+, V0, V−, p++, p+−, p−+, p−−)`;
/// columns are the new vectors in old coordinates. `h1` is the identity on
/// the four `V_m`.
pub fn complexify_poincare_basis() -> BasisChange {
    let i = Q::i();
    let half = Q::from_ratio(1, 2);
    let hi = &half * &i;
    let z = q(0);
    let one = q(1);
    let m1 = q(-1);
    let mh = -half.clone();
    let mhi = -hi.clone();
    // rows: L01 L02 L03 L12 L13 L23 P0 P1 P2 P3
    let cols: Vec<Vec<Q>> = vec![
        // U+ = ½(i L23 − L31 − L01 − i L02), L31 = −L13
        vec![mh.clone(), mhi.clone(), z.clone(), z.clone(), half.clone(), hi.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        // U0 = i L12 − L03
        vec![z.clone(), z.clone(), m1.clone(), i.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        // U− = ½(i L23 + L31 − L01 + i L02)
        vec![mh.clone(), hi.clone(), z.clone(), z.clone(), mh.clone(), hi.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        // V+ = ½(i L23 − L31 + L01 + i L02)
        vec![half.clone(), hi.clone(), z.clone(), z.clone(), half.clone(), hi.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        // V0 = i L12 + L03
        vec![z.clone(), z.clone(), one.clone(), i.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        // V− = ½(i L23 + L31 + L01 − i L02)
        vec![half.clone(), mhi.clone(), z.clone(), z.clone(), mh.clone(), hi.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        // p++ = P1 + i P2
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), one.clone(), i.clone(), z.clone()],
        // p+− = P0 + P3
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), one.clone(), z.clone(), z.clone(), one.clone()],
        // p−+ = P0 − P3
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), one.clone(), z.clone(), z.clone(), m1.clone()],
        // p−− = P1 − i P2
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), one.clone(), -i.clone(), z],
    ];
    let h0 = Matrix::from_rows(cols).transpose();
    BasisChange::new(h0, Matrix::identity(4)).expect("invertible by construction")
}

/// Complexified Poincaré algebra in the `(U, V, p)` basis.
pub fn iso13c() -> AlgebraOrder3 {
    let h = complexify_poincare_basis();
    let h = BasisChange::new(h.h0, Matrix::identity(0)).expect("invertible");
    poincare_g0()
        .transform(&h)
        .expect("invertible")
        .with_label("iso(1,3,C)")
}

/// Real translations `P_m` as combinations of `p++, p+−, p−+, p−−`.
pub fn real_translations() -> [[Q; 4]; 4] {
    let h = Q::from_ratio(1, 2);
    let z = q(0);
    let hi = Q::new(num_traits::Zero::zero(), crate::scalar::rat(-1, 2));
    [
        // P0 = (p+− + p−+)/2
        [z.clone(), h.clone(), h.clone(), z.clone()],
        // P1 = (p++ + p−−)/2
        [h.clone(), z.clone(), z.clone(), h.clone()],
        // P2 = (p++ − p−−)/(2i)
        [hi.clone(), z.clone(), z.clone(), -hi.clone()],
        // P3 = (p+− − p−+)/2
        [z.clone(), h.clone(), -h.clone(), z],
    ]
}

/// Equivariant linear maps `T_μ: source → target` such that setting
/// `ρ(p_μ) = T_μ` is compatible with `[L, p_μ]` in `iso13c`. Returns the
/// canonical basis of that space; each element is four matrices.
pub fn translation_intertwiners(source: &RepAction, target: &RepAction) -> Vec<[Matrix; 4]> {
    let g0 = iso13c();
    let (s, t) = (source.dim, target.dim);
    let block = s * t;
    let ncols = 4 * block;
    let col = |mu: usize, r: usize, c: usize| mu * block + r * s + c;
    let mut ech = Echelon::new(ncols);
    for l in 0..6 {
        let rs = &source.generators[l];
        let rt = &target.generators[l];
        for mu in 0..4 {
            let bracket = g0.br00(l, 6 + mu);
            for r in 0..t {
                for c in 0..s {
                    // (ρt(l) T_μ − T_μ ρs(l) − Σ_ν C(l, p_μ → p_ν) T_ν)_{rc}
                    let mut row = vec![Q::zero(); ncols];
                    for k in 0..t {
                        let v = &rt[(r, k)];
                        if !v.is_zero() {
                            row[col(mu, k, c)] += v;
                        }
                    }
                    for k in 0..s {
                        let v = &rs[(k, c)];
                        if !v.is_zero() {
                            row[col(mu, r, k)] -= v;
                        }
                    }
                    for (nu, v) in &bracket {
                        assert!(*nu >= 6, "translations form an ideal");
                        row[col(nu - 6, r, c)] -= v;
                    }
                    ech.insert(dense_to_sparse(&row));
                }
            }
        }
    }
    ech.null_space()
        .into_iter()
        .map(|v| {
            let v = sparse_to_dense(&v, ncols);
            std::array::from_fn(|mu| Matrix::from_fn(t, s, |r, c| v[col(mu, r, c)].clone()))
        })
        .collect()
}

/// An sl(2)⊕sl(2) module extended to the complexified Poincaré algebra by a
/// nilpotent translation action (10 generators in `iso13c` order).
pub fn nilpotent_extension(name: &str) -> Result<RepAction> {
    let (parts, links): (Vec<RepAction>, Vec<(usize, usize)>) = match name {
        "vector_plus_scalar" => (vec![rep_sl2sl2(1, 1), rep_sl2sl2(0, 0)], vec![(1, 0)]),
        "spinor_pair" => (vec![rep_sl2sl2(1, 0), rep_sl2sl2(0, 1)], vec![(1, 0)]),
        "spinor_triple" => (
            vec![rep_sl2sl2(1, 0), rep_sl2sl2(0, 1), rep_sl2sl2(1, 0)],
            vec![(1, 0)],
        ),
        other => return Err(Error::UnknownName(other.to_string())),
    };
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.dim;
            Some(o)
        })
        .collect();
    let sum = RepAction::direct_sum(&parts);
    let dim = sum.dim;
    let mut gens = sum.generators.clone();
    let mut ps = vec![Matrix::zeros(dim, dim); 4];
    for &(src, dst) in &links {
        let maps = translation_intertwiners(&parts[src], &parts[dst]);
        let t = maps.into_iter().next().ok_or_else(|| {
            Error::BadParams(format!("no equivariant translation map for {}", name))
        })?;
        for (mu, tm) in t.iter().enumerate() {
            for r in 0..tm.rows() {
                for c in 0..tm.cols() {
                    ps[mu][(offsets[dst] + r, offsets[src] + c)] = tm[(r, c)].clone();
                }
            }
        }
    }
    gens.extend(ps);
    Ok(RepAction::new(gens, sum.labels))
}

pub const NILPOTENT_EXTENSIONS: [&str; 3] = ["vector_plus_scalar", "spinor_pair", "spinor_triple"];

/// Catalog names with parameter conventions.
pub const CATALOG: [(&str, &str); 11] = [
    ("sl2adj", "sl(2) + D2, params [t] or [t, kappa]; default t = 1"),
    ("sl2red", "sl(2) + D2 + k D0, params = symmetric alpha (k x k, row-major)"),
    ("sl2spin", "sl(2) + D1 + D0"),
    ("poincare3", "Poincare algebra + vector representation"),
    ("so23_order3", "so(2,3) + adjoint, metric cube"),
    ("so23_adjoint", "so(2,3) + adjoint, trace-form cube"),
    ("lege_mica", "contracted so(2,3) algebra over the Poincare algebra"),
    ("g31", "{Y,Y,Y} = X"),
    ("g32", "[X,Y] = Y"),
    ("g33", "trivial 1+1"),
    ("F11", "general 1+1 candidate, params [alpha1, alpha2]"),
];

fn no_params(name: &str, params: &[Q]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::BadParams(format!("{} takes no parameters, got {}", name, params.len())))
    }
}

pub fn build(name: &str, params: &[Q]) -> Result<AlgebraOrder3> {
    let alg = match name {
        "sl2adj" => match params {
            [] => sl2adj(&q(1)),
            [t] => sl2adj(t),
            [t, k] => sl2adj_with(t, k),
            _ => return Err(Error::BadParams(format!("sl2adj takes 0-2 parameters, got {}", params.len()))),
        },
        "sl2red" => {
            let k = (params.len() as f64).sqrt().round() as usize;
            if k == 0 || k * k != params.len() {
                return Err(Error::BadParams(format!(
                    "sl2red needs k*k parameters for some k >= 1, got {}",
                    params.len()
                )));
            }
            let alpha = Matrix::from_fn(k, k, |i, j| params[i * k + j].clone());
            sl2red(&alpha)?
        }
        "F11" => match params {
            [a1, a2] => two_dim(a1, a2),
            _ => return Err(Error::BadParams(format!("F11 takes 2 parameters, got {}", params.len()))),
        },
        other => {
            no_params(other, params)?;
            match other {
                "sl2spin" => sl2spin(),
                "poincare3" => poincare3(),
                "so23_order3" => so23_order3(),
                "so23_adjoint" => so23_adjoint(),
                "lege_mica" => lege_mica(),
                "g31" => g31(),
                "g32" => g32(),
                "g33" => g33(),
                _ => return Err(Error::UnknownName(other.to_string())),
            }
        }
    };
    Ok(alg.with_label(name))
}

/// Named g0 algebras usable as solver input.
pub fn build_g0(name: &str) -> Result<AlgebraOrder3> {
    match name {
        "sl2" => Ok(sl2()),
        "sl2sl2" => Ok(sl2sl2()),
        "iso13c" => Ok(iso13c()),
        "poincare" => Ok(poincare_g0()),
        "so23" => Ok(so23_g0()),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Parses representation names for a given g0:
/// sl2: `D2`, `D1+D1+D0`; sl2sl2/iso13c: `D1,1`, `D1,0+D0,1`.
/// Translations act trivially for iso13c.
pub fn build_rep(g0_name: &str, desc: &str) -> Result<RepAction> {
    let parts: Vec<&str> = desc.split('+').map(str::trim).collect();
    let bad = || Error::UnknownName(format!("representation {:?} for {}", desc, g0_name));
    let mut reps = Vec::new();
    for p in parts {
        let body = p.strip_prefix('D').ok_or_else(bad)?;
        let body = body.trim_end_matches('\'');
        match g0_name {
            "sl2" => {
                let l: usize = body.parse().map_err(|_| bad())?;
                reps.push(irrep_sl2(l));
            }
            "sl2sl2" | "iso13c" => {
                let (a, b) = body.split_once(',').ok_or_else(bad)?;
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                reps.push(rep_sl2sl2(a, b));
            }
            _ => return Err(bad()),
        }
    }
    let sum = RepAction::direct_sum(&reps);
    Ok(if g0_name == "iso13c" { sum.pad(4) } else { sum })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreps_satisfy_sl2_relations() {
        for l in 0..7 {
            assert!(irrep_sl2(l).satisfies_relations(&sl2()), "l = {}", l);
        }
    }

    #[test]
    fn d1_and_d2_tables() {
        let d1 = irrep_sl2(1);
        // basis (Y1, Y−1); X+ Y−1 = Y1, X− Y1 = Y−1
        assert_eq!(d1.generators[0][(0, 1)], q(1));
        assert_eq!(d1.generators[2][(1, 0)], q(1));
        let d2 = irrep_sl2(2);
        assert_eq!(d2.generators[0][(0, 1)], q(-2));
        assert_eq!(d2.generators[2][(2, 1)], q(2));
        assert!(irrep_sl2(0).generators.iter().all(Matrix::is_zero));
    }

    #[test]
    fn sl2sl2_products() {
        let r = rep_sl2sl2(1, 1);
        assert_eq!(r.dim, 4);
        assert!(r.satisfies_relations(&sl2sl2()));
        let r = rep_sl2sl2(2, 0);
        assert_eq!(r.generators[0], irrep_sl2(2).generators[0]);
        assert!(r.generators[3..].iter().all(Matrix::is_zero));
        assert_eq!(rep_sl2sl2(0, 0).dim, 1);
    }

    #[test]
    fn sl2_trace_form() {
        let g = killing_form(&adjoint_rep(&sl2()));
        assert_eq!(g.scale(&Q::from_ratio(1, 4)), sl2_form());
        assert!(killing_form(&RepAction::trivial(3, 2)).is_zero());
    }

    #[test]
    fn so23_trace_form_nondegenerate() {
        let g = killing_form(&adjoint_rep(&so23_g0()));
        assert!(!g.det().is_zero());
    }

    #[test]
    fn catalog_entries_are_valid() {
        for (name, _) in CATALOG {
            let params = match name {
                "F11" => vec![q(0), q(0)],
                "sl2red" => vec![q(1), q(2), q(2), q(-3)],
                _ => vec![],
            };
            let a = build(name, &params).unwrap();
            assert!(a.is_valid(), "{}: {:?}", name, a.jacobi_residuals().first_violation());
        }
    }

    #[test]
    fn sl2adj_brackets() {
        let a = sl2adj(&q(1));
        let y0 = vec![q(0), q(1), q(0)];
        let y2 = vec![q(1), q(0), q(0)];
        let ym = vec![q(0), q(0), q(1)];
        use crate::algebra::Which::B111;
        assert_eq!(a.evaluate_brackets(B111, &[&y0, &y0, &y0]).unwrap(), vec![q(0), q(6), q(0)]);
        assert_eq!(a.evaluate_brackets(B111, &[&y2, &ym, &y2]).unwrap(), vec![q(2), q(0), q(0)]);
    }

    #[test]
    fn complexified_brackets() {
        let g = iso13c();
        // [U+, U−] = U0
        assert_eq!(g.br00(0, 2), [(1, q(1))].into_iter().collect());
        assert!(sl2sl2().c_entries().iter().all(|(&(i, j, k), v)| g.c(i, j, k) == *v));
    }

    #[test]
    fn nilpotent_extensions_are_reps() {
        let g = iso13c();
        for name in NILPOTENT_EXTENSIONS {
            let r = nilpotent_extension(name).unwrap();
            assert_eq!(r.relation_defect(&g), None, "{}", name);
            for mu in 6..10 {
                assert!(r.generators[mu].mul(&r.generators[mu]).is_zero());
                assert!(!r.generators[mu].is_zero());
            }
        }
        assert!(nilpotent_extension("nope").is_err());
    }

    #[test]
    fn unknown_and_bad_params() {
        assert!(matches!(build("nope", &[]), Err(Error::UnknownName(_))));
        assert!(matches!(build("g31", &[q(1)]), Err(Error::BadParams(_))));
        assert!(build("sl2red", &[q(1), q(2), q(3), q(1)]).is_err());
    }
}
