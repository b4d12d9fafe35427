//! Graded supermodules: sign calculus, HOM dimensions, shifts, outer tensor products,
//! duals, twists, restriction and induction.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ground_ring::{GroundElem, Mode};
use crate::linalg::{sv_scale, sv_unit, Reducer, SVec, SparseMat, SvAcc};
use crate::superalgebra::{grdim_of, sign, AlgebraHom, Degree, SuperAlgebra, ValidationReport};
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional graded supermodule. Actions are stored for the elements of
/// `algebra.action_basis()` only (the generators when the algebra declares them); the action
/// of any other basis element is obtained from its generator word.
#[derive(Clone, Debug)]
pub struct SuperModule {
    pub algebra: Arc<SuperAlgebra>,
    pub deg: Vec<Degree>,
    action: Vec<SparseMat>,
    pub side: Side,
    regular: bool,
}

impl SuperModule {
    pub fn new(
        algebra: Arc<SuperAlgebra>,
        deg: Vec<Degree>,
        action: Vec<SparseMat>,
        side: Side,
    ) -> Result<Self> {
        let ab = algebra.action_basis();
        if action.len() != ab.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} action matrices, got {}",
                ab.len(),
                action.len()
            )));
        }
        let n = deg.len();
        if action.iter().any(|m| m.nrows != n || m.ncols() != n) {
            return Err(Error::InvalidArgument("action matrix has the wrong size".into()));
        }
        Ok(SuperModule { algebra, deg, action, side, regular: false })
    }

    /// `A` acting on itself by left or right multiplication.
    pub fn regular(algebra: Arc<SuperAlgebra>, side: Side) -> Self {
        let n = algebra.dim();
        let action = algebra
            .action_basis()
            .into_iter()
            .map(|b| SparseMat {
                nrows: n,
                cols: (0..n)
                    .map(|m| match side {
                        Side::Left => algebra.mul_basis(b, m),
                        Side::Right => algebra.mul_basis(m, b),
                    })
                    .collect(),
            })
            .collect();
        SuperModule { deg: algebra.degrees().to_vec(), algebra, action, side, regular: true }
    }

    /// One-dimensional module of degree `d` on which every element of the action basis
    /// acts by zero. Callers must ensure this is a module (e.g. all generators of positive
    /// degree).
    pub fn trivial(algebra: Arc<SuperAlgebra>, d: Degree, side: Side) -> Result<Self> {
        let k = algebra.action_basis().len();
        if algebra.generators().is_none() && k > 1 {
            return Err(Error::InvalidArgument("trivial module needs declared generators".into()));
        }
        Self::new(algebra, vec![d], vec![SparseMat::zero(1, 1); k], side)
    }

    pub fn dim(&self) -> usize {
        self.deg.len()
    }

    /// Whether this is the regular module of its algebra (enables HOM fast paths).
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn graded_dim(&self, mode: Mode) -> GroundElem {
        grdim_of(&self.deg, mode)
    }

    pub fn stored_actions(&self) -> &[SparseMat] {
        &self.action
    }

    fn stored_index(&self, b: usize) -> Option<usize> {
        match self.algebra.generators() {
            Some(g) => g.iter().position(|&x| x == b),
            None => Some(b),
        }
    }

    /// Action of the basis element `b` on the vector `v`.
    pub fn act_basis(&self, b: usize, v: &SVec) -> SVec {
        if let Some(k) = self.stored_index(b) {
            return self.action[k].apply(v);
        }
        let (c, word) = &self.algebra.words().expect("algebra with generators has words")[b];
        let mut w = v.clone();
        match self.side {
            Side::Left => {
                for g in word.iter().rev() {
                    w = self.act_basis(*g, &w);
                }
            }
            Side::Right => {
                for g in word {
                    w = self.act_basis(*g, &w);
                }
            }
        }
        sv_scale(&w, c)
    }

    /// Action of an algebra element.
    pub fn act(&self, a: &SVec, v: &SVec) -> SVec {
        let mut acc = SvAcc::new();
        for (b, c) in a {
            acc.add_scaled(&self.act_basis(*b, v), c);
        }
        acc.finish()
    }

    pub fn action_matrix(&self, b: usize) -> SparseMat {
        if let Some(k) = self.stored_index(b) {
            return self.action[k].clone();
        }
        SparseMat { nrows: self.dim(), cols: (0..self.dim()).map(|m| self.act_basis(b, &sv_unit(m))).collect() }
    }

    pub fn element_matrix(&self, a: &SVec) -> SparseMat {
        SparseMat { nrows: self.dim(), cols: (0..self.dim()).map(|m| self.act(a, &sv_unit(m))).collect() }
    }

    /// Module axioms: homogeneity, the unit acts as the identity, and compatibility of the
    /// stored actions with the structure constants.
    pub fn validate(&self) -> ValidationReport {
        let a = &self.algebra;
        let mut rep = ValidationReport::default();
        let n = self.dim();
        for (k, b) in a.action_basis().into_iter().enumerate() {
            for (m, col) in self.action[k].cols.iter().enumerate() {
                for (i, _) in col {
                    if self.deg[*i] != self.deg[m] + a.deg(b) {
                        rep.violation_count += 1;
                        rep.violations.push(format!("{} is not homogeneous", a.label(b)));
                    }
                }
            }
        }
        for m in 0..n {
            let e = sv_unit(m);
            if self.act(a.unit(), &e) != e {
                rep.violation_count += 1;
                rep.violations.push("unit does not act as the identity".into());
                break;
            }
        }
        for g in a.action_basis() {
            for k in 0..a.dim() {
                for m in 0..n {
                    rep.checked += 1;
                    let e = sv_unit(m);
                    let (lhs, rhs) = match self.side {
                        Side::Left => (
                            self.act_basis(g, &self.act_basis(k, &e)),
                            self.act(&a.mul_basis(g, k), &e),
                        ),
                        Side::Right => (
                            self.act_basis(g, &self.act_basis(k, &e)),
                            self.act(&a.mul_basis(k, g), &e),
                        ),
                    };
                    if lhs != rhs {
                        rep.violation_count += 1;
                        if rep.violations.len() < 32 {
                            rep.violations.push(format!(
                                "action incompatible with {}·{}",
                                a.label(g),
                                a.label(k)
                            ));
                        }
                    }
                }
            }
        }
        rep
    }
}

/// `Σ q^n π^ε dim HOM(M, N)_{n,ε}`, where a homogeneous map of degree `(n, ε)` sends
/// `M_d` to `N_{d+(n,ε)}` and satisfies `f(bm) = (-1)^{ε b̄} b f(m)` (right modules:
/// `f(mb) = f(m)b`).
pub fn hom_graded_dim(m: &SuperModule, n: &SuperModule, mode: Mode) -> Result<GroundElem> {
    if m.side != n.side || m.algebra.dim() != n.algebra.dim() {
        return Err(Error::InvalidArgument("HOM between modules over different algebras".into()));
    }
    if m.regular && m.side == Side::Left {
        return Ok(n.graded_dim(mode));
    }
    let alg = &m.algebra;
    // Unknowns x_{jl}: coefficient of n_l in f(m_j).
    let mut var_deg: Vec<Degree> = Vec::new();
    let mut by_deg_n: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for (l, dn) in n.deg.iter().enumerate() {
        by_deg_n.entry(*dn).or_default().push(l);
    }
    let mut vars_of_src: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m.dim()];
    for (j, dm) in m.deg.iter().enumerate() {
        for (dn, ls) in &by_deg_n {
            for &l in ls {
                let v = var_deg.len();
                var_deg.push(*dn - *dm);
                vars_of_src[j].push((l, v));
            }
        }
    }
    let mut count: BTreeMap<Degree, usize> = BTreeMap::new();
    for d in &var_deg {
        *count.entry(*d).or_default() += 1;
    }
    let mut blocks: BTreeMap<Degree, Reducer> = BTreeMap::new();
    for (bi, b) in alg.action_basis().into_iter().enumerate() {
        let bm = &m.action[bi];
        let bn = &n.action[bi];
        let bpar = alg.deg(b).par as u64;
        for i in 0..m.dim() {
            let mut eqs: BTreeMap<usize, SvAcc> = BTreeMap::new();
            // f(b m_i) = Σ_j (b^M)_{ji} f(m_j)
            for (j, beta) in &bm.cols[i] {
                for &(l, v) in &vars_of_src[*j] {
                    eqs.entry(l).or_default().add(v, beta.clone());
                }
            }
            // - s · b f(m_i) = - s Σ_k x_{ik} b n_k
            for &(k, v) in &vars_of_src[i] {
                let s = match m.side {
                    Side::Left => sign(bpar * var_deg[v].par as u64),
                    Side::Right => Q::one(),
                };
                for (l, nu) in &bn.cols[k] {
                    eqs.entry(*l).or_default().add(v, -(&s * nu));
                }
            }
            for (l, acc) in eqs {
                let row = acc.finish();
                if row.is_empty() {
                    continue;
                }
                let d = n.deg[l] - m.deg[i] - alg.deg(b);
                blocks.entry(d).or_default().insert(&row);
            }
        }
    }
    let mut out = GroundElem::zero(mode);
    for (d, c) in count {
        let r = blocks.get(&d).map_or(0, |r| r.rank());
        if c > r {
            out.add_monomial(d.z, d.par, (c - r) as i64);
        }
    }
    Ok(out)
}

/// `M{n, s}`: degrees shifted by `(n, s)`; for `s = 1` odd elements act with a sign on
/// left modules.
pub fn shift_module(m: &SuperModule, n: i64, s: u8) -> SuperModule {
    let sh = Degree::new(n, s);
    let alg = &m.algebra;
    let action = if s & 1 == 1 && m.side == Side::Left {
        alg.action_basis()
            .into_iter()
            .zip(&m.action)
            .map(|(b, a)| if alg.deg(b).odd() { a.scale(&-Q::one()) } else { a.clone() })
            .collect()
    } else {
        m.action.clone()
    };
    SuperModule {
        algebra: m.algebra.clone(),
        deg: m.deg.iter().map(|d| *d + sh).collect(),
        action,
        side: m.side,
        regular: m.regular && n == 0 && s & 1 == 0,
    }
}

/// `M ⊠ N` over `ab = A ⊗ B`, with `(a⊗b)(m⊗n) = (-1)^{b̄m̄} am ⊗ bn`; basis index
/// `i·dim N + j`.
pub fn outer_tensor(m: &SuperModule, n: &SuperModule, ab: &Arc<SuperAlgebra>) -> Result<SuperModule> {
    let (a, b) = (&m.algebra, &n.algebra);
    if ab.dim() != a.dim() * b.dim() || m.side != Side::Left || n.side != Side::Left {
        return Err(Error::InvalidArgument("outer tensor needs left modules over A and B".into()));
    }
    let nb = b.dim();
    let nn = n.dim();
    let dim = m.dim() * nn;
    let mut deg = Vec::with_capacity(dim);
    for dm in &m.deg {
        for dn in &n.deg {
            deg.push(*dm + *dn);
        }
    }
    let action = ab
        .action_basis()
        .into_iter()
        .map(|x| {
            let (i, j) = (x / nb, x % nb);
            let bpar = b.deg(j).par as u64;
            let mut cols = Vec::with_capacity(dim);
            for mi in 0..m.dim() {
                let am = m.act_basis(i, &sv_unit(mi));
                let s = sign(bpar * m.deg[mi].par as u64);
                for ni in 0..nn {
                    if am.is_empty() {
                        cols.push(Vec::new());
                        continue;
                    }
                    let bn = n.act_basis(j, &sv_unit(ni));
                    let mut col = Vec::with_capacity(am.len() * bn.len());
                    for (p, x) in &am {
                        for (r, y) in &bn {
                            col.push((p * nn + r, &s * x * y));
                        }
                    }
                    cols.push(col);
                }
            }
            SparseMat { nrows: dim, cols }
        })
        .collect();
    Ok(SuperModule {
        algebra: ab.clone(),
        deg,
        action,
        side: Side::Left,
        regular: m.regular && n.regular,
    })
}

/// A homogeneous subspace given by spanning vectors, with RREF coordinates.
struct Subspace {
    rows: Vec<(usize, SVec)>,
    pos: HashMap<usize, usize>,
}

impl Subspace {
    fn span(vectors: impl IntoIterator<Item = SVec>) -> Self {
        let mut red = Reducer::new();
        for v in vectors {
            red.insert(&v);
        }
        let rows = red.rref();
        let pos = rows.iter().enumerate().map(|(k, (p, _))| (*p, k)).collect();
        Subspace { rows, pos }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of a vector known to lie in the subspace.
    fn coords(&self, v: &SVec) -> SVec {
        let mut out: SVec = v
            .iter()
            .filter_map(|(i, c)| self.pos.get(i).map(|k| (*k, c.clone())))
            .collect();
        out.sort_by_key(|t| t.0);
        out
    }
}

/// `Res^A_B M`: the subspace `φ(1_B) M` with `B` acting through `φ`.
pub fn restrict_module(phi: &AlgebraHom, m: &SuperModule) -> Result<SuperModule> {
    if !Arc::ptr_eq(&phi.target, &m.algebra) && phi.target.dim() != m.algebra.dim() {
        return Err(Error::InvalidArgument("restriction along a map into another algebra".into()));
    }
    let b = &phi.source;
    let basis = b.action_basis();
    if phi.is_unital() {
        let action = basis
            .iter()
            .map(|&x| {
                let img = &phi.images[x];
                SparseMat {
                    nrows: m.dim(),
                    cols: (0..m.dim()).map(|i| m.act(img, &sv_unit(i))).collect(),
                }
            })
            .collect();
        return SuperModule::new(b.clone(), m.deg.clone(), action, m.side);
    }
    let e = phi.image_of_unit();
    let sub = Subspace::span((0..m.dim()).map(|i| m.act(&e, &sv_unit(i))));
    let deg: Vec<Degree> = sub.rows.iter().map(|(p, _)| m.deg[*p]).collect();
    let action = basis
        .iter()
        .map(|&x| {
            let img = &phi.images[x];
            SparseMat {
                nrows: sub.dim(),
                cols: sub.rows.iter().map(|(_, r)| sub.coords(&m.act(img, r))).collect(),
            }
        })
        .collect();
    SuperModule::new(b.clone(), deg, action, m.side)
}

/// `Ind^A_B N = Aφ(1_B) ⊗_B N`, computed as the quotient of `C ⊗ N` (`C` the corner) by
/// the relations `cφ(b) ⊗ n - c ⊗ bn`; the basis is the set of pure tensors not eliminated
/// by row reduction.
pub fn induce_module(phi: &AlgebraHom, n: &SuperModule) -> Result<SuperModule> {
    if n.side != Side::Left {
        return Err(Error::InvalidArgument("induction of a right module".into()));
    }
    let a = &phi.target;
    let b = &phi.source;
    let unital = phi.is_unital();
    if unital && n.regular {
        return Ok(SuperModule::regular(a.clone(), Side::Left));
    }
    let e = phi.image_of_unit();
    let corner = if unital {
        Subspace { rows: (0..a.dim()).map(|i| (i, sv_unit(i))).collect(), pos: (0..a.dim()).map(|i| (i, i)).collect() }
    } else {
        Subspace::span((0..a.dim()).map(|i| a.mul(&sv_unit(i), &e)))
    };
    let nc = corner.dim();
    let nn = n.dim();
    let cdeg: Vec<Degree> = corner.rows.iter().map(|(p, _)| a.deg(*p)).collect();
    // Right multiplication by φ(b) on the corner, for each b in the action basis.
    let bbasis = b.action_basis();
    let mut rel = Reducer::new();
    for (bi, &bb) in bbasis.iter().enumerate() {
        let img = &phi.images[bb];
        for (ci, (_, crow)) in corner.rows.iter().enumerate() {
            let cphi = corner.coords(&a.mul(crow, img));
            for ni in 0..nn {
                let mut acc = SvAcc::new();
                for (k, x) in &cphi {
                    acc.add(k * nn + ni, x.clone());
                }
                for (k, x) in &n.action[bi].cols[ni] {
                    acc.add(ci * nn + k, -x.clone());
                }
                let r = acc.finish();
                if !r.is_empty() {
                    rel.insert(&r);
                }
            }
        }
    }
    let free: Vec<usize> = (0..nc * nn).filter(|k| !rel.is_pivot(*k)).collect();
    let index: HashMap<usize, usize> = free.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let deg: Vec<Degree> = free.iter().map(|k| cdeg[k / nn] + n.deg[k % nn]).collect();
    let action = a
        .action_basis()
        .into_iter()
        .map(|x| {
            let cols = free
                .iter()
                .map(|&k| {
                    let (ci, ni) = (k / nn, k % nn);
                    let prod = corner.coords(&a.mul(&sv_unit(x), &corner.rows[ci].1));
                    let v: SVec = prod.into_iter().map(|(c, q)| (c * nn + ni, q)).collect();
                    let mut out: SVec = rel
                        .reduce(&v)
                        .into_iter()
                        .map(|(k, q)| (index[&k], q))
                        .collect();
                    out.sort_by_key(|t| t.0);
                    out
                })
                .collect();
            SparseMat { nrows: free.len(), cols }
        })
        .collect();
    SuperModule::new(a.clone(), deg, action, Side::Left)
}

/// Graded dual. A left module becomes a right module via `(f·b)(m) = f(bm)`; a right module
/// becomes a left module via `(b·f)(m) = (-1)^{b̄(f̄ + m̄)} f(mb)`. Degrees are negated.
pub fn dual_module(m: &SuperModule) -> SuperModule {
    let alg = &m.algebra;
    let deg: Vec<Degree> = m.deg.iter().map(|d| d.neg()).collect();
    let action = alg
        .action_basis()
        .into_iter()
        .zip(&m.action)
        .map(|(b, mat)| {
            let t = mat.transpose();
            match m.side {
                Side::Left => t,
                Side::Right => {
                    let bpar = alg.deg(b).par as u64;
                    SparseMat {
                        nrows: t.nrows,
                        cols: t
                            .cols
                            .iter()
                            .enumerate()
                            .map(|(i, col)| {
                                col.iter()
                                    .map(|(j, c)| {
                                        let s = sign(bpar * (deg[i].par + m.deg[*j].par) as u64);
                                        (*j, s * c)
                                    })
                                    .collect()
                            })
                            .collect(),
                    }
                }
            }
        })
        .collect();
    SuperModule {
        algebra: m.algebra.clone(),
        deg,
        action,
        side: match m.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        },
        regular: false,
    }
}

/// Validates that `tau` is an even, degree-preserving, bijective algebra endomorphism.
pub fn validate_automorphism(tau: &AlgebraHom) -> Result<()> {
    if tau.source.dim() != tau.target.dim() {
        return Err(Error::NotAutomorphism("source and target differ".into()));
    }
    let rep = tau.validate();
    if !rep.passed() {
        return Err(Error::NotAutomorphism(rep.violations.join("; ")));
    }
    if !tau.is_unital() {
        return Err(Error::NotAutomorphism("unit not preserved".into()));
    }
    let m = SparseMat { nrows: tau.target.dim(), cols: tau.images.clone() };
    if m.rank() != tau.source.dim() {
        return Err(Error::NotAutomorphism("not invertible".into()));
    }
    Ok(())
}

/// `M^τ`: `b` acts as `τ(b)`.
pub fn twist_module(m: &SuperModule, tau: &AlgebraHom) -> Result<SuperModule> {
    validate_automorphism(tau)?;
    let alg = &m.algebra;
    let action = alg
        .action_basis()
        .into_iter()
        .map(|b| m.element_matrix(&tau.images[b]))
        .collect();
    SuperModule::new(m.algebra.clone(), m.deg.clone(), action, m.side)
}

/// Whether two modules over the same algebra have identical actions and degrees.
pub fn same_module(m: &SuperModule, n: &SuperModule) -> bool {
    m.side == n.side && m.deg == n.deg && m.action == n.action
}

/// Conjugates every stored action by the even/odd sign `m ↦ (-1)^{m̄} m`.
pub fn parity_conjugate(m: &SuperModule) -> SuperModule {
    let action = m
        .action
        .iter()
        .map(|mat| SparseMat {
            nrows: mat.nrows,
            cols: mat
                .cols
                .iter()
                .enumerate()
                .map(|(j, col)| {
                    col.iter()
                        .map(|(i, c)| (*i, sign((m.deg[*i].par + m.deg[j].par) as u64) * c))
                        .collect()
                })
                .collect(),
        })
        .collect();
    SuperModule { action, ..m.clone() }
}

pub fn is_zero_matrix(m: &SparseMat) -> bool {
    m.cols.iter().all(|c| c.iter().all(|(_, x)| x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{clifford1, tensor_algebra};

    #[test]
    fn clifford_regular_endomorphisms() {
        let c = Arc::new(clifford1());
        let m = SuperModule::regular(c.clone(), Side::Left);
        let mut generic = m.clone();
        generic.regular = false;
        let h = hom_graded_dim(&generic, &generic, Mode::Full).unwrap();
        assert_eq!(h, GroundElem::one(Mode::Full) + GroundElem::pi(Mode::Full));
        assert_eq!(hom_graded_dim(&m, &m, Mode::Full).unwrap(), h);
        assert!(m.validate().passed());
    }

    #[test]
    fn double_dual_is_parity_conjugate() {
        let c = Arc::new(clifford1());
        let m = SuperModule::regular(c.clone(), Side::Left);
        let dd = dual_module(&dual_module(&m));
        assert_eq!(dd.side, Side::Left);
        assert!(same_module(&parity_conjugate(&dd), &SuperModule { regular: false, ..m.clone() }));
    }

    #[test]
    fn outer_tensor_sign() {
        let c = Arc::new(clifford1());
        let cc = Arc::new(tensor_algebra(&c, &c));
        let m = SuperModule::regular(c.clone(), Side::Left);
        let mm = outer_tensor(&m, &m, &cc).unwrap();
        assert!(mm.validate().passed());
        // (1⊗c)(c⊗1) = -(c⊗c)
        assert_eq!(mm.act_basis(1, &sv_unit(2)), vec![(3, -Q::one())]);
    }
}
