//! Wreath products `B ≀ S_n = B^{⊗n} ⋊ F[S_n]` of a Frobenius superalgebra `B`, with `S_n`
//! acting on `B^{⊗n}` by superpermutations.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frobenius::{check_frobenius, FrobeniusStructure};
use crate::linalg::{SVec, SparseMat, SvAcc};
use crate::perm::{compose, longest, PermIndex};
use crate::superalgebra::{sign, Degree, ProductRule, SuperAlgebra, Word};
use crate::Q;

#[derive(Clone, Debug)]
pub struct Wreath {
    pub base: Arc<FrobeniusStructure>,
    pub n: usize,
    pub perms: Arc<PermIndex>,
    pub algebra: Arc<SuperAlgebra>,
}

/// Decodes a tuple index (first factor most significant).
fn tuple(mut t: usize, b: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in (0..n).rev() {
        out[slot] = t % b;
        t /= b;
    }
    out
}

fn tuple_index(bs: &[usize], b: usize) -> usize {
    bs.iter().fold(0, |acc, &x| acc * b + x)
}

/// `τ·(b_1⊗⋯⊗b_n)`: `b_i` moves to position `τ(i)`; the sign counts odd pairs whose
/// order is reversed.
pub fn superpermute(tau: &[usize], bs: &[usize], base: &SuperAlgebra) -> (Vec<usize>, u64) {
    let n = bs.len();
    let mut out = vec![0; n];
    let mut s = 0u64;
    for i in 0..n {
        out[tau[i]] = bs[i];
        for j in i + 1..n {
            if tau[i] > tau[j] {
                s += (base.deg(bs[i]).par * base.deg(bs[j]).par) as u64;
            }
        }
    }
    (out, s)
}

/// Product in `B^{⊗n}` of pure tensors:
/// `(b_1⊗⋯⊗b_n)(b'_1⊗⋯⊗b'_n) = (-1)^{Σ_{i>j} b̄_i b̄'_j} b_1b'_1 ⊗ ⋯ ⊗ b_nb'_n`.
fn tensor_power_product(x: &[usize], y: &[usize], base: &SuperAlgebra) -> Vec<(Vec<usize>, Q)> {
    let n = x.len();
    let mut s = 0u64;
    for i in 0..n {
        for j in 0..i {
            s += (base.deg(x[i]).par * base.deg(y[j]).par) as u64;
        }
    }
    let mut acc: Vec<(Vec<usize>, Q)> = vec![(Vec::with_capacity(n), sign(s))];
    for i in 0..n {
        let p = base.mul_basis(x[i], y[i]);
        let mut next = Vec::with_capacity(acc.len() * p.len());
        for (t, c) in &acc {
            for (k, d) in &p {
                let mut t2 = t.clone();
                t2.push(*k);
                next.push((t2, c * d));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

pub fn build_wreath(base: Arc<FrobeniusStructure>, n: usize) -> Result<Wreath> {
    let b = base.algebra.clone();
    let bd = b.dim();
    let (ub, bgens, bwords) = match (b.unit_index(), b.generators(), b.words()) {
        (Some(u), Some(g), Some(w)) => (u, g.to_vec(), w.to_vec()),
        _ => {
            return Err(Error::InvalidArgument(
                "wreath base needs a basis unit and declared generators".into(),
            ))
        }
    };
    let perms = Arc::new(PermIndex::new(n));
    let nf = perms.len();
    let ntuples = bd.pow(n as u32);
    let dim = ntuples * nf;
    let mut labels = Vec::with_capacity(dim);
    let mut deg = Vec::with_capacity(dim);
    for t in 0..ntuples {
        let bs = tuple(t, bd, n);
        let d = bs.iter().fold(Degree::ZERO, |acc, &x| acc + b.deg(x));
        let tl: Vec<&str> = bs.iter().map(|&x| b.label(x)).collect();
        for w in &perms.words {
            let wl: Vec<String> = w.iter().map(|i| format!("s{i}")).collect();
            let tl = if tl.is_empty() { "1".to_string() } else { tl.join("⊗") };
            labels.push(if wl.is_empty() { tl } else { format!("{tl}·{}", wl.join("")) });
            deg.push(d);
        }
    }
    let mult: Arc<Vec<usize>> = Arc::new(
        (0..nf * nf)
            .map(|k| perms.index_of(&compose(&perms.perms[k / nf], &perms.perms[k % nf])))
            .collect(),
    );
    let (p, bb, m) = (perms.clone(), b.clone(), mult.clone());
    let rule: ProductRule = Arc::new(move |x, y| {
        let (t1, w1) = (x / nf, x % nf);
        let (t2, w2) = (y / nf, y % nf);
        let beta = tuple(t1, bd, n);
        let (moved, s) = superpermute(&p.perms[w1], &tuple(t2, bd, n), &bb);
        let w = m[w1 * nf + w2];
        let sg = sign(s);
        let mut acc = SvAcc::new();
        for (t, c) in tensor_power_product(&beta, &moved, &bb) {
            acc.add(tuple_index(&t, bd) * nf + w, c * &sg);
        }
        acc.finish()
    });
    let unit_tuple = tuple_index(&vec![ub; n], bd);
    let unit = vec![(unit_tuple * nf, Q::one())];
    // Generators: a base generator in one slot, and the simple transpositions.
    let mut gens = Vec::new();
    let slot_gen = |slot: usize, g: usize| {
        let mut bs = vec![ub; n];
        bs[slot] = g;
        tuple_index(&bs, bd) * nf
    };
    for slot in 0..n {
        for &g in &bgens {
            gens.push(slot_gen(slot, g));
        }
    }
    let sgen: Vec<usize> = (1..n).map(|i| unit_tuple * nf + perms.simple(i)).collect();
    gens.extend(&sgen);
    let mut words: Vec<Word> = Vec::with_capacity(dim);
    for t in 0..ntuples {
        let bs = tuple(t, bd, n);
        for w in &perms.words {
            let mut c = Q::one();
            let mut word = Vec::new();
            for (slot, &x) in bs.iter().enumerate() {
                let (cx, wx) = &bwords[x];
                c *= cx;
                word.extend(wx.iter().map(|&g| slot_gen(slot, g)));
            }
            word.extend(w.iter().map(|&i| sgen[i - 1]));
            words.push((c, word));
        }
    }
    let algebra = SuperAlgebra::from_rule(labels, deg, rule, unit).with_generators(gens, words)?;
    Ok(Wreath { base, n, perms, algebra: Arc::new(algebra) })
}

impl Wreath {
    pub fn index(&self, bs: &[usize], perm_index: usize) -> usize {
        tuple_index(bs, self.base.algebra.dim()) * self.perms.len() + perm_index
    }

    /// Basis index of the permutation `w` (with the unit in every slot).
    pub fn perm_element(&self, w: &[usize]) -> usize {
        let u = self.base.algebra.unit_index().expect("base unit");
        self.index(&vec![u; self.n], self.perms.index_of(w))
    }

    pub fn decode(&self, x: usize) -> (Vec<usize>, usize) {
        let nf = self.perms.len();
        (tuple(x / nf, self.base.algebra.dim(), self.n), x % nf)
    }

    /// Trace `tr_B^{⊗n} ⊗ δ_{w₀}` of degree `(nδ_B, nσ_B)`.
    pub fn trace(&self) -> (SVec, Degree) {
        let bd = self.base.algebra.dim();
        let w0 = self.perms.index_of(&longest(self.n));
        let mut tr = Vec::new();
        for t in 0..bd.pow(self.n as u32) {
            let bs = tuple(t, bd, self.n);
            let mut v = Q::one();
            for &x in &bs {
                v *= self.base.tr(&vec![(x, Q::one())]);
            }
            if !v.is_zero() {
                tr.push((t * self.perms.len() + w0, v));
            }
        }
        let bdeg = self.base.degree;
        (tr, Degree::new(bdeg.z * self.n as i64, (bdeg.par as usize * self.n) as u8))
    }

    pub fn frobenius(&self) -> Result<FrobeniusStructure> {
        let (tr, deg) = self.trace();
        check_frobenius(self.algebra.clone(), tr, deg)
    }

    /// `ψ(βτ) = ψ(β)·(-1)^{σ_B ℓ(τ)} w₀τw₀` with
    /// `ψ(b_1⊗⋯⊗b_n) = (-1)^{Σ_{i<j} b̄_i b̄_j} ψ_B(b_n)⊗⋯⊗ψ_B(b_1)`.
    pub fn nakayama_closed_form(&self) -> SparseMat {
        let b = &self.base.algebra;
        let bd = b.dim();
        let n = self.n;
        let nf = self.perms.len();
        let w0 = longest(n);
        let sigma = self.base.degree.par as u64;
        let cols = (0..self.algebra.dim())
            .map(|x| {
                let (bs, w) = self.decode(x);
                let mut s = 0u64;
                for i in 0..n {
                    for j in i + 1..n {
                        s += (b.deg(bs[i]).par * b.deg(bs[j]).par) as u64;
                    }
                }
                s += sigma * self.perms.length(w) as u64;
                let tau = compose(&compose(&w0, &self.perms.perms[w]), &w0);
                let tau_i = self.perms.index_of(&tau);
                // Expand ψ_B(b_n) ⊗ ⋯ ⊗ ψ_B(b_1).
                let mut acc: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), sign(s))];
                for &x in bs.iter().rev() {
                    let img = &self.base.nakayama.images[x];
                    let mut next = Vec::new();
                    for (t, c) in &acc {
                        for (k, d) in img {
                            let mut t2 = t.clone();
                            t2.push(*k);
                            next.push((t2, c * d));
                        }
                    }
                    acc = next;
                }
                let mut out = SvAcc::new();
                for (t, c) in acc {
                    out.add(tuple_index(&t, bd) * nf + tau_i, c);
                }
                out.finish()
            })
            .collect();
        SparseMat { nrows: self.algebra.dim(), cols }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{clifford1_frobenius, ground_frobenius, nakayama};
    use crate::superalgebra::validate_algebra;

    #[test]
    fn sergeev_two() {
        let w = build_wreath(Arc::new(clifford1_frobenius()), 2).unwrap();
        assert_eq!(w.algebra.dim(), 8);
        assert!(validate_algebra(&w.algebra).passed());
        let f = w.frobenius().unwrap();
        assert_eq!(nakayama(&f), w.nakayama_closed_form());
        // s₁ (c⊗c) s₁⁻¹ = -(c⊗c)
        let s1 = w.perm_element(&[1, 0]);
        let cc = w.index(&[1, 1], 0);
        let lhs = w.algebra.mul(&w.algebra.mul_basis(s1, cc), &vec![(s1, Q::one())]);
        assert_eq!(lhs, vec![(cc, -Q::one())]);
    }

    #[test]
    fn wreath_of_one_is_base() {
        let base = Arc::new(clifford1_frobenius());
        let w = build_wreath(base.clone(), 1).unwrap();
        assert_eq!(w.algebra.table(), base.algebra.table());
    }

    #[test]
    fn symmetric_group_algebra_is_frobenius() {
        let w = build_wreath(Arc::new(ground_frobenius()), 3).unwrap();
        let f = w.frobenius().unwrap();
        assert_eq!(f.degree, Degree::ZERO);
        assert_eq!(nakayama(&f), w.nakayama_closed_form());
    }
}
