//! Graded nilCoxeter superalgebras `N_n^{(d,ε)}`: generators `u_i` of degree `(d, ε)` with
//! `u_i² = 0`, `u_i u_j = (-1)^ε u_j u_i` for `|i-j| > 1` and the braid relation.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::frobenius::{check_frobenius, FrobeniusStructure};
use crate::ground_ring::TwistScalar;
use crate::linalg::SVec;
use crate::perm::{has_right_descent, mul_s_right, PermIndex};
use crate::superalgebra::{Degree, ProductRule, SuperAlgebra, Word};
use crate::Q;

/// How the signs `u_w u_i = ±u_{ws_i}` are determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleMethod {
    /// Walk the graph of reduced words, counting far-commutation moves.
    Bfs,
    /// Read the signs off the elements `ξ_i - ξ_{i+1}` of a Clifford algebra, which satisfy
    /// the odd nilCoxeter sign relations up to squaring.
    Clifford,
}

#[derive(Clone, Debug)]
pub struct NilCoxeter {
    pub n: usize,
    pub twist: TwistScalar,
    pub perms: Arc<PermIndex>,
    /// `alpha[w][i-1]`: sign of `u_w u_i = ±u_{ws_i}`, or 0 when `ℓ(ws_i) < ℓ(w)`.
    pub alpha: Arc<Vec<Vec<i8>>>,
    pub algebra: Arc<SuperAlgebra>,
}

/// Right multiplication table `next[w][i-1] = index of w s_i`.
fn right_table(idx: &PermIndex) -> Vec<Vec<usize>> {
    idx.perms
        .iter()
        .map(|p| (1..idx.n).map(|i| idx.index_of(&mul_s_right(p, i))).collect())
        .collect()
}

/// Labels every reduced word of every element with its sign relative to the canonical
/// word; conflicting labels mean the relations admit no signed basis.
pub fn cocycle_bfs(idx: &PermIndex, eps: u8) -> Result<Vec<Vec<i8>>> {
    let n = idx.n;
    let flip: i8 = if eps & 1 == 1 { -1 } else { 1 };
    let mut labels: Vec<HashMap<Vec<u8>, i8>> = Vec::with_capacity(idx.len());
    for word in &idx.words {
        let start: Vec<u8> = word.iter().map(|&i| i as u8).collect();
        let mut seen: HashMap<Vec<u8>, i8> = HashMap::new();
        seen.insert(start.clone(), 1);
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            let s = seen[&w];
            let mut moves: Vec<(Vec<u8>, i8)> = Vec::new();
            for p in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[p], w[p + 1]);
                if a.abs_diff(b) > 1 {
                    let mut x = w.clone();
                    x.swap(p, p + 1);
                    moves.push((x, s * flip));
                }
                if p + 2 < w.len() && w[p + 2] == a && a.abs_diff(b) == 1 {
                    let mut x = w.clone();
                    x[p] = b;
                    x[p + 1] = a;
                    x[p + 2] = b;
                    moves.push((x, s));
                }
            }
            for (x, t) in moves {
                match seen.get(&x) {
                    Some(&old) if old != t => {
                        return Err(Error::CocycleInconsistent(format!(
                            "reduced word {x:?} reached with both signs in S_{n}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(x.clone(), t);
                        queue.push_back(x);
                    }
                }
            }
        }
        labels.push(seen);
    }
    let next = right_table(idx);
    let mut alpha = vec![vec![0i8; n.saturating_sub(1)]; idx.len()];
    for (w, p) in idx.perms.iter().enumerate() {
        for i in 1..n {
            if has_right_descent(p, i) {
                continue;
            }
            let mut word: Vec<u8> = idx.words[w].iter().map(|&j| j as u8).collect();
            word.push(i as u8);
            let target = next[w][i - 1];
            alpha[w][i - 1] = *labels[target].get(&word).ok_or_else(|| {
                Error::Internal(format!("word {word:?} is not a reduced word of its product"))
            })?;
        }
    }
    Ok(alpha)
}

/// Sparse multivector over blades `ξ_A`, sorted by blade.
type Multivector = Vec<(u32, i64)>;

fn blade_mul(a: u32, b: u32) -> (u32, i64) {
    // Number of transpositions needed to sort ξ_A ξ_B, with ξ_i² = 1.
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    (a ^ b, if swaps % 2 == 0 { 1 } else { -1 })
}

/// `x·t` into the dense buffer `acc`, returning the touched blades.
fn mv_mul_into(x: &Multivector, t: &Multivector, acc: &mut [i64]) -> Vec<u32> {
    let mut touched = Vec::new();
    for (a, ca) in x {
        for (b, cb) in t {
            let (m, s) = blade_mul(*a, *b);
            if acc[m as usize] == 0 {
                touched.push(m);
            }
            acc[m as usize] += s * ca * cb;
        }
    }
    touched
}

fn mv_mul(x: &Multivector, t: &Multivector, acc: &mut [i64]) -> Multivector {
    let mut touched = mv_mul_into(x, t, acc);
    touched.sort_unstable();
    touched.dedup();
    touched
        .into_iter()
        .filter_map(|m| {
            let c = std::mem::take(&mut acc[m as usize]);
            (c != 0).then_some((m, c))
        })
        .collect()
}

/// `s` with `x·t = s·y`, if any.
fn mv_sign_relative(x: &Multivector, t: &Multivector, y: &Multivector, acc: &mut [i64]) -> Option<i8> {
    let prod = mv_mul(x, t, acc);
    if prod.len() != y.len() {
        return None;
    }
    let s = match (prod.first(), y.first()) {
        (Some(p), Some(q)) if p.0 == q.0 && p.1 == q.1 => 1,
        (Some(p), Some(q)) if p.0 == q.0 && p.1 == -q.1 => -1,
        (None, None) => 1,
        _ => return None,
    };
    prod.iter().zip(y).all(|(p, q)| p.0 == q.0 && p.1 == s * q.1).then_some(s as i8)
}

/// Signs from the products `t_w = t_{i_1} ⋯ t_{i_r}` of `t_i = ξ_i - ξ_{i+1}` in a Clifford
/// algebra: `u_w u_i = ±u_{ws_i}` where `t_w t_i = ±t_{ws_i}`.
pub fn cocycle_clifford(idx: &PermIndex, eps: u8) -> Result<Vec<Vec<i8>>> {
    let n = idx.n;
    let mut alpha = vec![vec![0i8; n.saturating_sub(1)]; idx.len()];
    let next = right_table(idx);
    if eps & 1 == 0 {
        for (w, p) in idx.perms.iter().enumerate() {
            for i in 1..n {
                if !has_right_descent(p, i) {
                    alpha[w][i - 1] = 1;
                }
            }
        }
        return Ok(alpha);
    }
    let t: Vec<Multivector> = (1..n).map(|i| vec![(1u32 << (i - 1), 1i64), (1u32 << i, -1i64)]).collect();
    let mut acc = vec![0i64; 1 << n];
    // Lex-minimal reduced words are prefix closed, and shorter elements come first.
    let mut tw: Vec<Multivector> = Vec::with_capacity(idx.len());
    for (w, word) in idx.words.iter().enumerate() {
        tw.push(match word.last() {
            None => vec![(0u32, 1i64)],
            Some(&i) => mv_mul(&tw[next[w][i - 1]], &t[i - 1], &mut acc),
        });
    }
    for (w, p) in idx.perms.iter().enumerate() {
        for i in 1..n {
            if has_right_descent(p, i) {
                continue;
            }
            alpha[w][i - 1] = mv_sign_relative(&tw[w], &t[i - 1], &tw[next[w][i - 1]], &mut acc)
                .ok_or_else(|| Error::CocycleInconsistent(format!("Clifford images disagree at S_{n}")))?;
        }
    }
    Ok(alpha)
}

fn word_label(word: &[usize]) -> String {
    if word.is_empty() {
        return "u_e".into();
    }
    let sep = if word.iter().any(|&i| i >= 10) { "," } else { "" };
    let parts: Vec<String> = word.iter().map(|i| i.to_string()).collect();
    format!("u_{}", parts.join(sep))
}

/// Default sign method: reduced-word search up to `S_5`, the Clifford model beyond.
pub fn default_method(n: usize) -> CocycleMethod {
    if n <= 5 {
        CocycleMethod::Bfs
    } else {
        CocycleMethod::Clifford
    }
}

pub fn build_nilcoxeter(n: usize, d: i64, eps: u8) -> Result<NilCoxeter> {
    build_nilcoxeter_with(n, d, eps, default_method(n))
}

pub fn build_nilcoxeter_with(n: usize, d: i64, eps: u8, method: CocycleMethod) -> Result<NilCoxeter> {
    let twist = TwistScalar::new(d, eps);
    let perms = Arc::new(PermIndex::new(n));
    let alpha = Arc::new(match method {
        CocycleMethod::Bfs => cocycle_bfs(&perms, twist.eps)?,
        CocycleMethod::Clifford => cocycle_clifford(&perms, twist.eps)?,
    });
    let next = Arc::new(right_table(&perms));
    let labels: Vec<String> = perms.words.iter().map(|w| word_label(w)).collect();
    let deg: Vec<Degree> = perms
        .words
        .iter()
        .map(|w| Degree::new(d * w.len() as i64, (twist.eps as usize * w.len()) as u8))
        .collect();
    let (p, a, nx) = (perms.clone(), alpha.clone(), next.clone());
    let rule: ProductRule = Arc::new(move |x, y| {
        let mut cur = x;
        let mut s = 1i8;
        for &i in &p.words[y] {
            let al = a[cur][i - 1];
            if al == 0 {
                return Vec::new();
            }
            s *= al;
            cur = nx[cur][i - 1];
        }
        vec![(cur, Q::from_integer(s.into()))]
    });
    let gens: Vec<usize> = (1..n).map(|i| perms.simple(i)).collect();
    let words: Vec<Word> = perms
        .words
        .iter()
        .map(|w| (Q::one(), w.iter().map(|&i| gens[i - 1]).collect()))
        .collect();
    let algebra = SuperAlgebra::from_rule(labels, deg, rule, vec![(0, Q::one())])
        .with_generators(gens, words)?;
    Ok(NilCoxeter { n, twist, perms, alpha, algebra: Arc::new(algebra) })
}

impl NilCoxeter {
    /// Index of `u_i`.
    pub fn generator(&self, i: usize) -> usize {
        self.perms.simple(i)
    }

    /// `tr(u_w) = δ_{w,w₀}`, of degree `(d·C(n,2), ε·C(n,2))`.
    pub fn trace(&self) -> (SVec, Degree) {
        let l = self.n * self.n.saturating_sub(1) / 2;
        (
            vec![(self.perms.longest(), Q::one())],
            Degree::new(self.twist.d * l as i64, (self.twist.eps as usize * l) as u8),
        )
    }

    pub fn frobenius(&self) -> Result<FrobeniusStructure> {
        let (tr, deg) = self.trace();
        check_frobenius(self.algebra.clone(), tr, deg)
    }

    /// `u_i ↦ u_{n-i}` extended multiplicatively, as images of basis elements.
    pub fn nakayama_closed_form(&self) -> Vec<SVec> {
        let mut out = Vec::with_capacity(self.perms.len());
        for w in &self.perms.words {
            let mut v: SVec = self.algebra.unit().clone();
            for &i in w {
                v = self.algebra.mul(&v, &vec![(self.generator(self.n - i), Q::one())]);
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::validate_algebra;

    #[test]
    fn bfs_and_clifford_agree() {
        for n in 1..=5 {
            let idx = PermIndex::new(n);
            for eps in 0..2 {
                assert_eq!(cocycle_bfs(&idx, eps).unwrap(), cocycle_clifford(&idx, eps).unwrap(), "n={n}");
            }
        }
    }

    #[test]
    fn small_relations() {
        let a = build_nilcoxeter(2, 1, 1).unwrap();
        assert_eq!(a.algebra.dim(), 2);
        let u1 = a.generator(1);
        assert!(a.algebra.mul_basis(u1, u1).is_empty());
        let b = build_nilcoxeter(4, 1, 1).unwrap();
        let (u1, u3) = (b.generator(1), b.generator(3));
        let p = b.algebra.mul_basis(u1, u3);
        let q = b.algebra.mul_basis(u3, u1);
        assert_eq!(p[0].0, q[0].0);
        assert_eq!(p[0].1, -q[0].1.clone());
        assert!(validate_algebra(&build_nilcoxeter(3, 2, 1).unwrap().algebra).passed());
    }
}
