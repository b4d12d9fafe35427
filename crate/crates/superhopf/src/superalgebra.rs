//! Finite-dimensional (Z × Z₂)-graded superalgebras over the rationals.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground_ring::{GroundElem, Mode};
use crate::linalg::{sv_scale, sv_unit, SVec, SvAcc};
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree {
    pub z: i64,
    pub par: u8,
}

impl Degree {
    pub const ZERO: Degree = Degree { z: 0, par: 0 };

    pub fn new(z: i64, par: u8) -> Self {
        Degree { z, par: par & 1 }
    }

    pub fn neg(self) -> Self {
        Degree { z: -self.z, par: self.par }
    }

    pub fn odd(self) -> bool {
        self.par == 1
    }
}

impl std::ops::Add for Degree {
    type Output = Degree;
    fn add(self, o: Degree) -> Degree {
        Degree { z: self.z + o.z, par: (self.par + o.par) & 1 }
    }
}

impl std::ops::Sub for Degree {
    type Output = Degree;
    fn sub(self, o: Degree) -> Degree {
        Degree { z: self.z - o.z, par: (self.par + o.par) & 1 }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.z, self.par)
    }
}

/// `(-1)^k` as a rational.
pub fn sign(k: u64) -> Q {
    if k % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

pub type ProductRule = Arc<dyn Fn(usize, usize) -> SVec + Send + Sync>;

#[derive(Clone)]
enum Mult {
    Table(Arc<Vec<SVec>>),
    Rule(ProductRule),
}

/// A basis element written as `coeff · g_1 g_2 ⋯ g_r` in the declared generators
/// (generators are basis indices).
pub type Word = (Q, Vec<usize>);

#[derive(Clone)]
pub struct SuperAlgebra {
    labels: Vec<String>,
    deg: Vec<Degree>,
    mult: Mult,
    unit: SVec,
    generators: Option<Vec<usize>>,
    words: Option<Arc<Vec<Word>>>,
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperAlgebra")
            .field("dim", &self.dim())
            .field("generators", &self.generators)
            .finish()
    }
}

impl SuperAlgebra {
    /// Algebra from explicit structure constants, `table[i * dim + j] = e_i e_j`.
    pub fn from_table(
        labels: Vec<String>,
        deg: Vec<Degree>,
        table: Vec<SVec>,
        unit: SVec,
    ) -> Result<Self> {
        let n = deg.len();
        if labels.len() != n || table.len() != n * n {
            return Err(Error::InvalidArgument("structure table size mismatch".into()));
        }
        if table.iter().chain(std::iter::once(&unit)).flatten().any(|(k, _)| *k >= n) {
            return Err(Error::InvalidArgument("basis index out of range".into()));
        }
        Ok(SuperAlgebra {
            labels,
            deg,
            mult: Mult::Table(Arc::new(table)),
            unit,
            generators: None,
            words: None,
        })
    }

    /// Algebra whose basis products are computed on demand.
    pub fn from_rule(labels: Vec<String>, deg: Vec<Degree>, rule: ProductRule, unit: SVec) -> Self {
        SuperAlgebra { labels, deg, mult: Mult::Rule(rule), unit, generators: None, words: None }
    }

    /// Declares generators together with an expression of every basis element in them.
    /// Modules over an algebra with generators store only the generator actions.
    pub fn with_generators(mut self, generators: Vec<usize>, words: Vec<Word>) -> Result<Self> {
        if words.len() != self.dim() {
            return Err(Error::InvalidArgument("one word per basis element required".into()));
        }
        let gset: BTreeSet<usize> = generators.iter().copied().collect();
        if words.iter().flat_map(|w| &w.1).any(|g| !gset.contains(g)) {
            return Err(Error::InvalidArgument("word uses an undeclared generator".into()));
        }
        self.generators = Some(generators);
        self.words = Some(Arc::new(words));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.deg.len()
    }

    pub fn deg(&self, i: usize) -> Degree {
        self.deg[i]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.deg
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SVec {
        &self.unit
    }

    /// Index of the unit when it is a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        match self.unit.as_slice() {
            [(i, c)] if c.is_one() => Some(*i),
            _ => None,
        }
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn words(&self) -> Option<&[Word]> {
        self.words.as_deref().map(|w| w.as_slice())
    }

    /// Basis elements whose actions a module stores: the generators if declared,
    /// otherwise the whole basis.
    pub fn action_basis(&self) -> Vec<usize> {
        match &self.generators {
            Some(g) => g.clone(),
            None => (0..self.dim()).collect(),
        }
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> SVec {
        match &self.mult {
            Mult::Table(t) => t[i * self.dim() + j].clone(),
            Mult::Rule(r) => r(i, j),
        }
    }

    pub fn mul(&self, a: &SVec, b: &SVec) -> SVec {
        let mut acc = SvAcc::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                acc.add_scaled(&self.mul_basis(*i, *j), &xy);
            }
        }
        acc.finish()
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn homogeneous_degree(&self, v: &SVec) -> Option<Degree> {
        let mut it = v.iter().map(|(i, _)| self.deg[*i]);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// `Σ q^z π^par` over the basis.
    pub fn graded_dim(&self, mode: Mode) -> GroundElem {
        grdim_of(&self.deg, mode)
    }

    /// Full structure table; materializes rule-based products.
    pub fn table(&self) -> Vec<SVec> {
        let n = self.dim();
        (0..n * n).map(|k| self.mul_basis(k / n, k % n)).collect()
    }
}

pub fn grdim_of(deg: &[Degree], mode: Mode) -> GroundElem {
    let mut g = GroundElem::zero(mode);
    for d in deg {
        g.add_monomial(d.z, d.par, 1);
    }
    g
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checked: usize,
    pub violation_count: usize,
    /// The first few violations, in deterministic order.
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub(crate) fn push(&mut self, v: String) {
        self.violation_count += 1;
        if self.violations.len() < 32 {
            self.violations.push(v);
        }
    }

    fn merge(&mut self, other: ValidationReport) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < 32 {
                self.violations.push(v);
            }
        }
    }
}

/// Associativity on all basis triples, unit laws, degree and parity additivity, and
/// consistency of declared generator words.
pub fn validate_algebra(a: &SuperAlgebra) -> ValidationReport {
    let n = a.dim();
    let mut rep = ValidationReport::default();
    for (i, d) in a.deg.iter().enumerate() {
        if d.z < 0 {
            rep.push(format!("basis element {} has negative degree", a.labels[i]));
        }
    }
    let parts: Vec<ValidationReport> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = ValidationReport::default();
            let right: Vec<SVec> = (0..n).map(|j| a.mul_basis(i, j)).collect();
            for (j, p) in right.iter().enumerate() {
                let want = a.deg[i] + a.deg[j];
                for (k, _) in p {
                    let got = a.deg[*k];
                    if got.par != want.par {
                        r.push(format!(
                            "parity additivity: {}·{} has component {}",
                            a.labels[i], a.labels[j], a.labels[*k]
                        ));
                    } else if got.z != want.z {
                        r.push(format!(
                            "degree additivity: {}·{} has component {}",
                            a.labels[i], a.labels[j], a.labels[*k]
                        ));
                    }
                }
            }
            for (j, p) in right.iter().enumerate() {
                for k in 0..n {
                    r.checked += 1;
                    let lhs = a.mul(p, &sv_unit(k));
                    let rhs = a.mul(&sv_unit(i), &a.mul_basis(j, k));
                    if lhs != rhs {
                        r.push(format!(
                            "associativity: ({}·{})·{}",
                            a.labels[i], a.labels[j], a.labels[k]
                        ));
                    }
                }
            }
            let e = sv_unit(i);
            if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
                r.push(format!("unit law fails on {}", a.labels[i]));
            }
            r
        })
        .collect();
    for p in parts {
        rep.merge(p);
    }
    if let (Some(words), Some(_)) = (a.words(), a.generators()) {
        for (k, (c, w)) in words.iter().enumerate() {
            let mut v = a.unit.clone();
            for g in w {
                v = a.mul(&v, &sv_unit(*g));
            }
            if sv_scale(&v, c) != sv_unit(k) {
                rep.push(format!("generator word of {} does not evaluate to it", a.labels[k]));
            }
        }
    }
    rep
}

/// `A ⊗ B` with `(a₁⊗b₁)(a₂⊗b₂) = (-1)^{b̄₁ā₂} a₁a₂ ⊗ b₁b₂`; basis index `i·dim B + j`.
pub fn tensor_algebra(a: &Arc<SuperAlgebra>, b: &Arc<SuperAlgebra>) -> SuperAlgebra {
    let (na, nb) = (a.dim(), b.dim());
    let mut labels = Vec::with_capacity(na * nb);
    let mut deg = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
            deg.push(a.deg[i] + b.deg[j]);
        }
    }
    let (ra, rb) = (a.clone(), b.clone());
    let rule: ProductRule = Arc::new(move |x, y| {
        let (a1, b1) = (x / nb, x % nb);
        let (a2, b2) = (y / nb, y % nb);
        let s = (rb.deg[b1].par & ra.deg[a2].par) as u64;
        let pa = ra.mul_basis(a1, a2);
        if pa.is_empty() {
            return Vec::new();
        }
        let pb = rb.mul_basis(b1, b2);
        let sg = sign(s);
        let mut out = Vec::with_capacity(pa.len() * pb.len());
        for (i, ci) in &pa {
            for (j, cj) in &pb {
                out.push((i * nb + j, &sg * ci * cj));
            }
        }
        out.sort_by_key(|t| t.0);
        out
    });
    let unit = tensor_vec(&a.unit, &b.unit, nb);
    let mut t = SuperAlgebra::from_rule(labels, deg, rule, unit);
    if let (Some(ga), Some(gb), Some(wa), Some(wb), Some(ua), Some(ub)) = (
        a.generators(),
        b.generators(),
        a.words(),
        b.words(),
        a.unit_index(),
        b.unit_index(),
    ) {
        let mut gens: Vec<usize> = ga.iter().map(|g| g * nb + ub).collect();
        gens.extend(gb.iter().map(|h| ua * nb + h));
        let mut words = Vec::with_capacity(na * nb);
        for (ca, w1) in wa {
            for (cb, w2) in wb {
                let mut w: Vec<usize> = w1.iter().map(|g| g * nb + ub).collect();
                w.extend(w2.iter().map(|h| ua * nb + h));
                words.push((ca * cb, w));
            }
        }
        t = t.with_generators(gens, words).expect("tensor words are well formed");
    }
    t
}

/// Coordinates of `u ⊗ v` in the pair basis `i·n + j`.
pub fn tensor_vec(u: &SVec, v: &SVec, n: usize) -> SVec {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for (i, x) in u {
        for (j, y) in v {
            out.push((i * n + j, x * y));
        }
    }
    out
}

/// Even, degree-preserving, multiplicative linear map; the image of the unit may be a
/// proper idempotent.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    pub source: Arc<SuperAlgebra>,
    pub target: Arc<SuperAlgebra>,
    pub images: Vec<SVec>,
}

impl AlgebraHom {
    pub fn new(
        source: Arc<SuperAlgebra>,
        target: Arc<SuperAlgebra>,
        images: Vec<SVec>,
    ) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::InvalidArgument("one image per source basis element".into()));
        }
        Ok(AlgebraHom { source, target, images })
    }

    pub fn identity(a: Arc<SuperAlgebra>) -> Self {
        let images = (0..a.dim()).map(sv_unit).collect();
        AlgebraHom { source: a.clone(), target: a, images }
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = SvAcc::new();
        for (i, c) in v {
            acc.add_scaled(&self.images[*i], c);
        }
        acc.finish()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraHom) -> AlgebraHom {
        AlgebraHom {
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|v| self.apply(v)).collect(),
        }
    }

    pub fn image_of_unit(&self) -> SVec {
        self.apply(self.source.unit())
    }

    pub fn is_unital(&self) -> bool {
        &self.image_of_unit() == self.target.unit()
    }

    /// Multiplicativity (all pairs for small sources, generators × basis otherwise),
    /// degree preservation and the idempotent condition on the image of the unit.
    pub fn validate(&self) -> ValidationReport {
        let s = &self.source;
        let t = &self.target;
        let mut rep = ValidationReport::default();
        for (i, img) in self.images.iter().enumerate() {
            if !img.is_empty() && t.homogeneous_degree(img) != Some(s.deg(i)) {
                rep.push(format!("image of {} is not homogeneous of degree {}", s.label(i), s.deg(i)));
            }
        }
        let left: Vec<usize> = match s.generators() {
            Some(g) if s.dim() * s.dim() > 20_000 => g.to_vec(),
            _ => (0..s.dim()).collect(),
        };
        let parts: Vec<ValidationReport> = left
            .par_iter()
            .map(|&i| {
                let mut r = ValidationReport::default();
                for j in 0..s.dim() {
                    r.checked += 1;
                    let lhs = self.apply(&s.mul_basis(i, j));
                    let rhs = t.mul(&self.images[i], &self.images[j]);
                    if lhs != rhs {
                        r.push(format!("not multiplicative on {}·{}", s.label(i), s.label(j)));
                    }
                }
                r
            })
            .collect();
        for p in parts {
            rep.merge(p);
        }
        let e = self.image_of_unit();
        if e.is_empty() {
            rep.push("unit maps to zero".into());
        } else {
            if t.homogeneous_degree(&e) != Some(Degree::ZERO) {
                rep.push("image of the unit is not even of degree 0".into());
            }
            if t.mul(&e, &e) != e {
                rep.push("image of the unit is not idempotent".into());
            }
        }
        rep
    }
}

/// The one-dimensional algebra F.
pub fn ground_algebra() -> SuperAlgebra {
    SuperAlgebra::from_table(
        vec!["1".into()],
        vec![Degree::ZERO],
        vec![sv_unit(0)],
        sv_unit(0),
    )
    .expect("ground algebra")
    .with_generators(Vec::new(), vec![(Q::one(), Vec::new())])
    .expect("ground algebra words")
}

/// Rank-one Clifford superalgebra: basis `{1, c}`, `c` odd of degree 0, `c² = 1`.
pub fn clifford1() -> SuperAlgebra {
    let table = vec![sv_unit(0), sv_unit(1), sv_unit(1), sv_unit(0)];
    SuperAlgebra::from_table(
        vec!["1".into(), "c".into()],
        vec![Degree::new(0, 0), Degree::new(0, 1)],
        table,
        sv_unit(0),
    )
    .expect("clifford algebra")
    .with_generators(vec![1], vec![(Q::one(), Vec::new()), (Q::one(), vec![1])])
    .expect("clifford words")
}

pub fn is_zero_vec(v: &SVec) -> bool {
    v.iter().all(|(_, c)| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_and_tensor_validate() {
        let c = Arc::new(clifford1());
        assert!(validate_algebra(&c).passed());
        let cc = Arc::new(tensor_algebra(&c, &c));
        assert_eq!(cc.dim(), 4);
        assert!(validate_algebra(&cc).passed());
        // (1⊗c)(c⊗1) = -(c⊗c)
        assert_eq!(cc.mul_basis(1, 2), vec![(3, -Q::one())]);
        assert_eq!(cc.mul_basis(2, 1), vec![(3, Q::one())]);
    }

    #[test]
    fn tensor_with_ground_is_same_algebra() {
        let c = Arc::new(clifford1());
        let f = Arc::new(ground_algebra());
        let cf = tensor_algebra(&c, &f);
        assert_eq!(cf.table(), c.table());
        assert_eq!(cf.degrees(), c.degrees());
    }

    #[test]
    fn parity_mismatch_is_reported() {
        // Basis 1, x, y with x² = y, but y declared odd.
        let mut table = vec![Vec::new(); 9];
        table[0] = sv_unit(0);
        table[1] = sv_unit(1);
        table[2] = sv_unit(2);
        table[3] = sv_unit(1);
        table[4] = sv_unit(2);
        table[6] = sv_unit(2);
        let a = SuperAlgebra::from_table(
            vec!["1".into(), "x".into(), "y".into()],
            vec![Degree::new(0, 0), Degree::new(1, 0), Degree::new(2, 1)],
            table,
            sv_unit(0),
        )
        .unwrap();
        let rep = validate_algebra(&a);
        assert!(!rep.passed());
        assert!(rep.violations.iter().any(|v| v.contains("parity additivity")));
    }
}
