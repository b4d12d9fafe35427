//! Frobenius structures: trace, Gram form, Nakayama automorphism, tensor products and the
//! isomorphism between the Nakayama-twisted regular bimodule and the shifted dual.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{sv_dot, sv_unit, SVec, SparseMat};
use crate::superalgebra::{
    clifford1, sign, tensor_algebra, tensor_vec, AlgebraHom, Degree, SuperAlgebra,
};
use crate::Q;

#[derive(Clone, Debug)]
pub struct FrobeniusStructure {
    pub algebra: Arc<SuperAlgebra>,
    /// `tr(e_i)` for each basis element.
    pub trace: SVec,
    /// `(δ, σ)`.
    pub degree: Degree,
    /// `G_{ij} = tr(e_i e_j)`, column `j` holding `(G_{ij})_i`.
    pub gram: SparseMat,
    pub gram_inv: SparseMat,
    pub nakayama: AlgebraHom,
}

impl FrobeniusStructure {
    /// `(e_i, e_j)`.
    pub fn form(&self, i: usize, j: usize) -> Q {
        self.gram.get(i, j)
    }

    /// `(u, v)` for arbitrary vectors.
    pub fn form_vec(&self, u: &SVec, v: &SVec) -> Q {
        let mut acc = Q::zero();
        for (j, y) in v {
            acc += sv_dot(u, &self.gram.cols[*j]) * y;
        }
        acc
    }

    pub fn tr(&self, v: &SVec) -> Q {
        sv_dot(&self.trace, v)
    }

    pub fn psi(&self, v: &SVec) -> SVec {
        self.nakayama.apply(v)
    }
}

/// Builds and checks the Frobenius structure for a trace of degree `degree`.
pub fn check_frobenius(
    a: Arc<SuperAlgebra>,
    trace: SVec,
    degree: Degree,
) -> Result<FrobeniusStructure> {
    let n = a.dim();
    for (i, t) in &trace {
        if !t.is_zero() && a.deg(*i) != degree {
            return Err(Error::TraceNotGraded);
        }
    }
    let cols: Vec<SVec> = (0..n)
        .map(|j| {
            (0..n)
                .filter_map(|i| {
                    let v = sv_dot(&a.mul_basis(i, j), &trace);
                    (!v.is_zero()).then_some((i, v))
                })
                .collect()
        })
        .collect();
    let gram = SparseMat { nrows: n, cols };
    let gram_inv = gram.inverse().ok_or(Error::NotFrobenius)?;
    let form = |u: &SVec, v: &SVec| sv_dot(&a.mul(u, v), &trace);
    // Invariance (ab, c) = (a, bc), with b over the generators when declared.
    for b in a.action_basis() {
        for i in 0..n {
            let ab = a.mul_basis(i, b);
            for k in 0..n {
                if form(&ab, &sv_unit(k)) != form(&sv_unit(i), &a.mul_basis(b, k)) {
                    return Err(Error::Internal("trace form is not invariant".into()));
                }
            }
        }
    }
    let nakayama = solve_nakayama(&a, &gram, &gram_inv)?;
    Ok(FrobeniusStructure { algebra: a, trace, degree, gram, gram_inv, nakayama })
}

/// Solves `(a, b) = (-1)^{āb̄} (b, ψ(a))`: `ψ = G⁻¹ S` with `S_{ba} = (-1)^{āb̄} G_{ab}`.
fn solve_nakayama(a: &Arc<SuperAlgebra>, gram: &SparseMat, gram_inv: &SparseMat) -> Result<AlgebraHom> {
    let n = a.dim();
    let gt = gram.transpose();
    let images: Vec<SVec> = (0..n)
        .map(|x| {
            // column x of S: entries S_{bx} = (-1)^{x̄b̄} G_{xb}, i.e. row x of G, signed.
            let s: SVec = gt.cols[x]
                .iter()
                .map(|(b, g)| (*b, sign((a.deg(x).par * a.deg(*b).par) as u64) * g))
                .collect();
            gram_inv.apply(&s)
        })
        .collect();
    let psi = AlgebraHom::new(a.clone(), a.clone(), images)?;
    for (i, img) in psi.images.iter().enumerate() {
        if img.is_empty() || a.homogeneous_degree(img) != Some(a.deg(i)) {
            return Err(Error::Internal(format!("Nakayama map moves the degree of {}", a.label(i))));
        }
    }
    let left = a.action_basis();
    for &g in &left {
        for j in 0..n {
            if psi.apply(&a.mul_basis(g, j)) != a.mul(&psi.images[g], &psi.images[j]) {
                return Err(Error::Internal("Nakayama map is not multiplicative".into()));
            }
        }
    }
    if &psi.image_of_unit() != a.unit() {
        return Err(Error::Internal("Nakayama map does not fix the unit".into()));
    }
    Ok(psi)
}

/// The Nakayama automorphism of a Frobenius structure, as a matrix (column `j` is `ψ(e_j)`).
pub fn nakayama(f: &FrobeniusStructure) -> SparseMat {
    SparseMat { nrows: f.algebra.dim(), cols: f.nakayama.images.clone() }
}

/// Frobenius structure on `A₁ ⊗ A₂` with trace `tr₁ ⊗ tr₂`. The Gram matrix is checked
/// against `(b₁⊗b₂, c₁⊗c₂) = (-1)^{b̄₂c̄₁}(b₁,c₁)(b₂,c₂)`.
pub fn frobenius_tensor(f1: &FrobeniusStructure, f2: &FrobeniusStructure) -> Result<FrobeniusStructure> {
    let (a1, a2) = (&f1.algebra, &f2.algebra);
    let ab = Arc::new(tensor_algebra(a1, a2));
    let n2 = a2.dim();
    let trace = tensor_vec(&f1.trace, &f2.trace, n2);
    let f = check_frobenius(ab.clone(), trace, f1.degree + f2.degree)?;
    for x in 0..ab.dim() {
        for y in 0..ab.dim() {
            let (b1, b2) = (x / n2, x % n2);
            let (c1, c2) = (y / n2, y % n2);
            let s = sign((a2.deg(b2).par * a1.deg(c1).par) as u64);
            let want = s * f1.form(b1, c1) * f2.form(b2, c2);
            if f.form(x, y) != want {
                return Err(Error::Internal("tensor Gram form has the wrong sign".into()));
            }
        }
    }
    Ok(f)
}

/// `ψ₁ ⊗ ψ₂` on the pair basis (both maps are even, so no reordering sign arises).
pub fn tensor_of_nakayamas(f1: &FrobeniusStructure, f2: &FrobeniusStructure) -> SparseMat {
    let n2 = f2.algebra.dim();
    let n = f1.algebra.dim() * n2;
    SparseMat {
        nrows: n,
        cols: (0..n)
            .map(|x| {
                let mut v = tensor_vec(&f1.nakayama.images[x / n2], &f2.nakayama.images[x % n2], n2);
                v.sort_by_key(|t| t.0);
                v
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct DualIsoReport {
    /// `φ(b)` pairs nontrivially only with elements of complementary degree `(δ, σ)`.
    pub graded: bool,
    /// `φ(ab)(x) = (-1)^{āb̄+āx̄} φ(b)(xa)`.
    pub left_linear: bool,
    /// `φ(b)(ac) = φ(bψ(a))(c)`.
    pub intertwines_psi: bool,
    pub checked: usize,
}

impl DualIsoReport {
    pub fn passed(&self) -> bool {
        self.graded && self.left_linear && self.intertwines_psi
    }
}

/// Checks that `φ(b)(x) = (-1)^{x̄b̄}(x, b)` is an isomorphism `B^ψ ≅ B^∨{δ,σ}` of
/// bimodules. `psi_override` replaces the Nakayama map (used to exhibit failures).
pub fn check_dual_iso(f: &FrobeniusStructure, psi_override: Option<&[SVec]>) -> DualIsoReport {
    let a = &f.algebra;
    let n = a.dim();
    let psi: &[SVec] = psi_override.unwrap_or(&f.nakayama.images);
    let par = |i: usize| a.deg(i).par as u64;
    let phi = |b: &SVec, x: usize| -> Q {
        let mut acc = Q::zero();
        for (bi, c) in b {
            acc += sign(par(x) * par(*bi)) * f.form(x, *bi) * c;
        }
        acc
    };
    let phi_vec = |b: &SVec, x: &SVec| -> Q {
        let mut acc = Q::zero();
        for (xi, c) in x {
            acc += phi(b, *xi) * c;
        }
        acc
    };
    let mut rep = DualIsoReport { graded: true, left_linear: true, intertwines_psi: true, checked: 0 };
    for b in 0..n {
        for x in 0..n {
            if !f.form(x, b).is_zero() && a.deg(x) + a.deg(b) != f.degree {
                rep.graded = false;
            }
        }
    }
    for g in a.action_basis() {
        for b in 0..n {
            let gb = a.mul_basis(g, b);
            let b_psi = a.mul(&sv_unit(b), &psi[g]);
            for x in 0..n {
                rep.checked += 1;
                let s = sign(par(g) * par(b) + par(g) * par(x));
                let lhs = phi(&gb, x);
                let rhs = s * phi_vec(&sv_unit(b), &a.mul_basis(x, g));
                if lhs != rhs {
                    rep.left_linear = false;
                }
                let lhs = phi_vec(&sv_unit(b), &a.mul_basis(g, x));
                let rhs = phi(&b_psi, x);
                if lhs != rhs {
                    rep.intertwines_psi = false;
                }
            }
        }
    }
    rep
}

/// Rank-one Clifford algebra with `tr(1) = 0`, `tr(c) = 1`, `(δ, σ) = (0, 1)`.
pub fn clifford1_frobenius() -> FrobeniusStructure {
    check_frobenius(Arc::new(clifford1()), vec![(1, Q::one())], Degree::new(0, 1))
        .expect("Clifford trace is Frobenius")
}

/// The one-dimensional algebra with `tr(1) = 1`.
pub fn ground_frobenius() -> FrobeniusStructure {
    check_frobenius(Arc::new(crate::superalgebra::ground_algebra()), vec![(0, Q::one())], Degree::ZERO)
        .expect("ground algebra is Frobenius")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_nakayama_is_identity() {
        let f = clifford1_frobenius();
        assert_eq!(nakayama(&f), SparseMat::identity(2));
        assert!(check_dual_iso(&f, None).passed());
    }

    #[test]
    fn clifford_tensor_nakayama() {
        let f = clifford1_frobenius();
        let ff = frobenius_tensor(&f, &f).unwrap();
        assert_eq!(ff.degree, Degree::new(0, 0));
        assert_eq!(nakayama(&ff), tensor_of_nakayamas(&f, &f));
    }

    #[test]
    fn ungraded_trace_rejected() {
        let c = Arc::new(clifford1());
        let err = check_frobenius(c, vec![(0, Q::one()), (1, Q::one())], Degree::new(0, 1));
        assert_eq!(err.unwrap_err(), Error::TraceNotGraded);
    }
}
