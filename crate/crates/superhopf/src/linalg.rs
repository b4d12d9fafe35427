//! Sparse exact linear algebra over the rationals.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::Q;

/// Sparse vector: strictly increasing indices, no zero entries.
pub type SVec = Vec<(usize, Q)>;

pub fn sv_unit(i: usize) -> SVec {
    vec![(i, Q::one())]
}

pub fn sv_from_map(m: BTreeMap<usize, Q>) -> SVec {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `a + s*b`.
pub fn sv_axpy(a: &SVec, s: &Q, b: &SVec) -> SVec {
    if s.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + s * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sv_add(a: &SVec, b: &SVec) -> SVec {
    sv_axpy(a, &Q::one(), b)
}

pub fn sv_sub(a: &SVec, b: &SVec) -> SVec {
    sv_axpy(a, &-Q::one(), b)
}

pub fn sv_scale(a: &SVec, s: &Q) -> SVec {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, c)| (*i, c * s)).collect()
}

pub fn sv_get(a: &SVec, i: usize) -> Q {
    match a.binary_search_by_key(&i, |(k, _)| *k) {
        Ok(p) => a[p].1.clone(),
        Err(_) => Q::zero(),
    }
}

pub fn sv_dot(a: &SVec, b: &SVec) -> Q {
    let (mut i, mut j) = (0, 0);
    let mut acc = Q::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Accumulates `Σ s_k v_k` without repeated merging.
#[derive(Default)]
pub struct SvAcc {
    m: BTreeMap<usize, Q>,
}

impl SvAcc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.m.entry(i).or_insert_with(Q::zero);
        *e += c;
    }

    pub fn add_scaled(&mut self, v: &SVec, s: &Q) {
        for (i, c) in v {
            self.add(*i, c * s);
        }
    }

    pub fn finish(self) -> SVec {
        sv_from_map(self.m)
    }
}

/// Incremental Gaussian elimination. Each stored row has its first nonzero entry (the pivot)
/// equal to 1. Pivoting is deterministic: the first nonzero column after reduction.
#[derive(Clone, Default)]
pub struct Reducer {
    rows: HashMap<usize, SVec>,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Normal form of `v` modulo the span of the stored rows; it has no entries in pivot
    /// columns.
    pub fn reduce(&self, v: &SVec) -> SVec {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut m: BTreeMap<usize, Q> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = m
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            let row = &self.rows[&c];
            for (j, r) in row {
                let e = m.entry(*j).or_insert_with(Q::zero);
                *e -= &x * r;
                if e.is_zero() {
                    m.remove(j);
                }
            }
            cursor = c + 1;
        }
        sv_from_map(m)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = Q::one() / lead;
        self.rows.insert(p, sv_scale(&r, &inv));
        true
    }

    /// Rows in reduced row echelon form, sorted by pivot.
    pub fn rref(&self) -> Vec<(usize, SVec)> {
        let piv = self.pivots();
        let mut done: Reducer = Reducer::new();
        let mut out = Vec::with_capacity(piv.len());
        for &p in piv.iter().rev() {
            let r = done.reduce(&self.rows[&p]);
            done.rows.insert(p, r.clone());
            out.push((p, r));
        }
        out.reverse();
        out
    }
}

/// Matrix stored by columns; column `j` is the image of the `j`th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub nrows: usize,
    pub cols: Vec<SVec>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { nrows: n, cols: (0..n).map(sv_unit).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        sv_get(&self.cols[j], i)
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        let mut acc = SvAcc::new();
        for (j, c) in v {
            acc.add_scaled(&self.cols[*j], c);
        }
        acc.finish()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMat) -> SparseMat {
        SparseMat { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn transpose(&self) -> SparseMat {
        let mut rows: Vec<SVec> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                rows[*i].push((j, c.clone()));
            }
        }
        SparseMat { nrows: self.cols.len(), cols: rows }
    }

    pub fn scale(&self, s: &Q) -> SparseMat {
        SparseMat { nrows: self.nrows, cols: self.cols.iter().map(|c| sv_scale(c, s)).collect() }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        SparseMat {
            nrows: self.nrows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| sv_add(a, b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.cols)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<SparseMat> {
        let n = self.nrows;
        if n != self.ncols() {
            return None;
        }
        // Row-reduce [A^T | I]: rows of A^T are the columns of A.
        let mut red = Reducer::new();
        for (j, col) in self.cols.iter().enumerate() {
            let mut row = col.clone();
            row.push((n + j, Q::one()));
            if !red.insert(&row) {
                return None;
            }
        }
        let rref = red.rref();
        if rref.iter().any(|(p, _)| *p >= n) {
            return None;
        }
        let mut inv_t: Vec<SVec> = vec![Vec::new(); n];
        for (p, row) in rref {
            inv_t[p] = row.into_iter().filter(|(i, _)| *i >= n).map(|(i, c)| (i - n, c)).collect();
        }
        // inv_t[p] is row p of (A^T)^{-1} = column p of A^{-1}.
        Some(SparseMat { nrows: n, cols: inv_t })
    }
}

pub fn rank_of(vectors: &[SVec]) -> usize {
    let mut red = Reducer::new();
    for v in vectors {
        red.insert(v);
    }
    red.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn axpy_cancels() {
        let a = vec![(0, q(1)), (2, q(3))];
        let b = vec![(2, q(1)), (5, q(1))];
        assert_eq!(sv_axpy(&a, &q(-3), &b), vec![(0, q(1)), (5, q(-3))]);
    }

    #[test]
    fn reducer_rank_and_normal_form() {
        let mut r = Reducer::new();
        assert!(r.insert(&vec![(0, q(2)), (1, q(2))]));
        assert!(!r.insert(&vec![(0, q(1)), (1, q(1))]));
        assert!(r.insert(&vec![(1, q(1)), (2, q(1))]));
        assert_eq!(r.rank(), 2);
        // e0 ≡ -e1 ≡ e2 modulo the span.
        assert_eq!(r.reduce(&sv_unit(0)), vec![(2, q(1))]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = SparseMat {
            nrows: 3,
            cols: vec![vec![(0, q(2)), (1, q(1))], vec![(1, q(1))], vec![(0, q(1)), (2, q(-1))]],
        };
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), SparseMat::identity(3));
        assert_eq!(inv.compose(&m), SparseMat::identity(3));
        let sing = SparseMat { nrows: 2, cols: vec![vec![(0, q(1))], vec![(0, q(2))]] };
        assert!(sing.inverse().is_none());
    }
}
