//! Towers `{A_n}` with external multiplications `ρ_{n,m}: A_n ⊗ A_m → A_{n+m}`: the
//! nilCoxeter tower and wreath product towers, with their twist data and declared
//! simple and projective modules.

pub mod checks;
pub mod nilcoxeter;
pub mod wreath;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_traits::One;
use parking_lot::Mutex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::FrobeniusStructure;
use crate::ground_ring::{GroundElem, Mode, TwistScalar};
use crate::linalg::SVec;
use crate::module::{Side, SuperModule};
use crate::perm::{direct_product, identity, shift, PermIndex};
use crate::superalgebra::{tensor_algebra, AlgebraHom, Degree, SuperAlgebra};
use crate::Q;

pub use nilcoxeter::{build_nilcoxeter, NilCoxeter};
pub use wreath::{build_wreath, Wreath};

#[derive(Clone, Debug)]
pub enum TowerKind {
    NilCoxeter { d: i64, eps: u8 },
    Wreath { base: Arc<FrobeniusStructure> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SimpleType {
    M,
    Q,
}

/// A module declared as a Grothendieck basis element.
#[derive(Clone, Debug)]
pub struct Declared {
    pub label: String,
    pub module: SuperModule,
    pub kind: SimpleType,
}

#[derive(Debug)]
pub struct Level {
    pub n: usize,
    pub algebra: Arc<SuperAlgebra>,
    pub perms: Arc<PermIndex>,
    pub nil: Option<NilCoxeter>,
    pub wreath: Option<Wreath>,
    frob: OnceLock<std::result::Result<FrobeniusStructure, Error>>,
}

#[derive(Debug)]
pub struct Tower {
    pub kind: TowerKind,
    pub n_max: usize,
    levels: Vec<Level>,
    /// `c = q^d π^ε`.
    pub twist: TwistScalar,
    /// `(χ′, χ″)` as multiples of `nm`.
    pub chi: (i64, i64),
    /// `(γ′, γ″)` as multiples of `nm`.
    pub gamma: (i64, i64),
    /// `κ(n, m) = kappa · nm`.
    pub kappa: i64,
    pub mode: Mode,
    /// Levels `0..=declared_max` carry declared simples and projectives.
    pub declared_max: usize,
    base_simple: Option<SimpleType>,
    tensors: Mutex<HashMap<(usize, usize), Arc<SuperAlgebra>>>,
    rho: Mutex<HashMap<(usize, usize), Arc<AlgebraHom>>>,
}

/// The type of the regular module of a base algebra when it is simple: the ground field
/// (type M) or a rank-one Clifford algebra (type Q).
fn base_simple_type(b: &SuperAlgebra) -> Option<SimpleType> {
    if b.dim() == 1 {
        return Some(SimpleType::M);
    }
    if b.dim() == 2 && b.unit_index() == Some(0) && b.deg(1).odd() && b.mul_basis(1, 1) == vec![(0, Q::one())] {
        return Some(SimpleType::Q);
    }
    None
}

impl Tower {
    pub fn nilcoxeter(n_max: usize, d: i64, eps: u8) -> Result<Self> {
        let levels = (0..=n_max)
            .map(|n| {
                let nc = build_nilcoxeter(n, d, eps)?;
                Ok(Level {
                    n,
                    algebra: nc.algebra.clone(),
                    perms: nc.perms.clone(),
                    nil: Some(nc),
                    wreath: None,
                    frob: OnceLock::new(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tower {
            kind: TowerKind::NilCoxeter { d, eps: eps & 1 },
            n_max,
            levels,
            twist: TwistScalar::new(d, eps),
            chi: (1, 0),
            gamma: (0, 1),
            kappa: 1,
            mode: Mode::Full,
            declared_max: n_max,
            base_simple: Some(SimpleType::M),
            tensors: Mutex::new(HashMap::new()),
            rho: Mutex::new(HashMap::new()),
        })
    }

    pub fn wreath(base: Arc<FrobeniusStructure>, n_max: usize) -> Result<Self> {
        let levels = (0..=n_max)
            .map(|n| {
                let w = build_wreath(base.clone(), n)?;
                Ok(Level {
                    n,
                    algebra: w.algebra.clone(),
                    perms: w.perms.clone(),
                    nil: None,
                    wreath: Some(w),
                    frob: OnceLock::new(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let base_simple = base_simple_type(&base.algebra);
        let mode = if base_simple == Some(SimpleType::Q) { Mode::Collapsed } else { Mode::Full };
        Ok(Tower {
            kind: TowerKind::Wreath { base },
            n_max,
            levels,
            twist: TwistScalar::new(0, 0),
            chi: (0, 0),
            gamma: (0, 0),
            kappa: 0,
            mode,
            declared_max: if base_simple.is_some() { n_max.min(1) } else { 0 },
            base_simple,
            tensors: Mutex::new(HashMap::new()),
            rho: Mutex::new(HashMap::new()),
        })
    }

    pub fn is_nilcoxeter(&self) -> bool {
        matches!(self.kind, TowerKind::NilCoxeter { .. })
    }

    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n]
    }

    pub fn algebra(&self, n: usize) -> &Arc<SuperAlgebra> {
        &self.levels[n].algebra
    }

    pub fn check_level(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            Err(Error::Truncation { level: n, bound: self.n_max })
        } else {
            Ok(())
        }
    }

    pub fn frobenius(&self, n: usize) -> Result<FrobeniusStructure> {
        let lv = &self.levels[n];
        lv.frob
            .get_or_init(|| match (&lv.nil, &lv.wreath) {
                (Some(nc), _) => nc.frobenius(),
                (_, Some(w)) => w.frobenius(),
                _ => Err(Error::Internal("level without a construction".into())),
            })
            .clone()
    }

    /// `(δ_n, σ_n)`.
    pub fn shift(&self, n: usize) -> Degree {
        match &self.kind {
            TowerKind::NilCoxeter { d, eps } => {
                let b = (n * n.saturating_sub(1) / 2) as i64;
                Degree::new(d * b, ((*eps as i64 * b) & 1) as u8)
            }
            TowerKind::Wreath { base } => {
                Degree::new(base.degree.z * n as i64, ((base.degree.par as usize * n) & 1) as u8)
            }
        }
    }

    /// `c^k`.
    pub fn c_pow(&self, k: i64) -> GroundElem {
        self.twist.pow(k, self.mode)
    }

    /// `A_n ⊗ A_m`, memoized so that modules over it share one algebra.
    pub fn tensor(&self, n: usize, m: usize) -> Arc<SuperAlgebra> {
        if let Some(a) = self.tensors.lock().get(&(n, m)) {
            return a.clone();
        }
        let t = Arc::new(tensor_algebra(self.algebra(n), self.algebra(m)));
        self.tensors.lock().entry((n, m)).or_insert(t).clone()
    }

    /// `ρ_{n,m}`.
    pub fn rho(&self, n: usize, m: usize) -> Result<Arc<AlgebraHom>> {
        self.check_level(n + m)?;
        if let Some(r) = self.rho.lock().get(&(n, m)) {
            return Ok(r.clone());
        }
        let src = self.tensor(n, m);
        let tgt = self.algebra(n + m).clone();
        let (da, db) = (self.algebra(n).dim(), self.algebra(m).dim());
        let mut images: Vec<SVec> = Vec::with_capacity(da * db);
        for x in 0..da {
            for y in 0..db {
                images.push(self.rho_basis(n, m, x, y));
            }
        }
        let hom = Arc::new(AlgebraHom::new(src, tgt, images)?);
        Ok(self.rho.lock().entry((n, m)).or_insert(hom).clone())
    }

    fn rho_basis(&self, n: usize, m: usize, x: usize, y: usize) -> SVec {
        let big = &self.levels[n + m];
        match (&self.levels[n].nil, &self.levels[m].nil, &big.nil) {
            (Some(a), Some(b), Some(c)) => {
                let v = direct_product(&a.perms.perms[x], &identity(m));
                let w = shift(&b.perms.perms[y], n);
                c.algebra.mul_basis(c.perms.index_of(&v), c.perms.index_of(&w))
            }
            _ => {
                let wa = self.levels[n].wreath.as_ref().expect("wreath level");
                let wb = self.levels[m].wreath.as_ref().expect("wreath level");
                let wc = big.wreath.as_ref().expect("wreath level");
                let (ba, pa) = wa.decode(x);
                let (bb, pb) = wb.decode(y);
                let bs: Vec<usize> = ba.into_iter().chain(bb).collect();
                let p = direct_product(&wa.perms.perms[pa], &wb.perms.perms[pb]);
                vec![(wc.index(&bs, wc.perms.index_of(&p)), Q::one())]
            }
        }
    }

    /// Basis index of the permutation element `u_w` (or `w`) in `A_K`.
    pub fn perm_element(&self, k: usize, w: &[usize]) -> usize {
        let lv = &self.levels[k];
        match (&lv.nil, &lv.wreath) {
            (Some(nc), _) => nc.perms.index_of(w),
            (_, Some(wr)) => wr.perm_element(w),
            _ => unreachable!("level without a construction"),
        }
    }

    /// Declared simple modules at level `n`.
    pub fn simples(&self, n: usize) -> Vec<Declared> {
        if n > self.declared_max {
            return Vec::new();
        }
        let a = self.algebra(n).clone();
        match (&self.kind, n) {
            (TowerKind::NilCoxeter { .. }, _) | (_, 0) => vec![Declared {
                label: format!("L{n}"),
                module: SuperModule::trivial(a, Degree::ZERO, Side::Left).expect("trivial module"),
                kind: SimpleType::M,
            }],
            (TowerKind::Wreath { .. }, _) => vec![Declared {
                label: format!("V{n}"),
                module: SuperModule::regular(a, Side::Left),
                kind: self.base_simple.expect("declared base"),
            }],
        }
    }

    /// Declared indecomposable projectives at level `n`, paired with `simples(n)` in order.
    pub fn projectives(&self, n: usize) -> Vec<Declared> {
        if n > self.declared_max {
            return Vec::new();
        }
        let kind = self.simples(n)[0].kind;
        vec![Declared {
            label: format!("P{n}"),
            module: SuperModule::regular(self.algebra(n).clone(), Side::Left),
            kind,
        }]
    }

    /// Nakayama automorphism of `A_n`.
    pub fn psi(&self, n: usize) -> Result<AlgebraHom> {
        Ok(self.frobenius(n)?.nakayama)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::clifford1_frobenius;

    #[test]
    fn sergeev_tower_dimensions() {
        let t = Tower::wreath(Arc::new(clifford1_frobenius()), 3).unwrap();
        let dims: Vec<usize> = (0..=3).map(|n| t.algebra(n).dim()).collect();
        assert_eq!(dims, vec![1, 2, 8, 48]);
        assert_eq!(t.mode, Mode::Collapsed);
        assert!(t.rho(1, 1).unwrap().validate().passed());
    }

    #[test]
    fn nilcoxeter_rho_validates() {
        let t = Tower::nilcoxeter(4, 1, 1).unwrap();
        for (n, m) in [(1, 1), (1, 2), (2, 2), (1, 3), (0, 4)] {
            assert!(t.rho(n, m).unwrap().validate().passed(), "rho({n},{m})");
        }
    }
}
