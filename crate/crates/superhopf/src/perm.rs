//! Permutations in one-line notation (0-based), reduced words, parabolic cosets and the
//! double coset representatives `w_r`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// Number of inversions.
pub fn length(w: &[usize]) -> usize {
    let mut l = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                l += 1;
            }
        }
    }
    l
}

pub fn inverse(w: &[usize]) -> Perm {
    let mut inv = vec![0; w.len()];
    for (i, &x) in w.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `v ∘ w`.
pub fn compose(v: &[usize], w: &[usize]) -> Perm {
    w.iter().map(|&x| v[x]).collect()
}

/// `w s_i` (1-based `i`): swaps positions `i-1` and `i`.
pub fn mul_s_right(w: &[usize], i: usize) -> Perm {
    let mut x = w.to_vec();
    x.swap(i - 1, i);
    x
}

/// `s_i w`: swaps the values `i-1` and `i`.
pub fn mul_s_left(i: usize, w: &[usize]) -> Perm {
    w.iter()
        .map(|&x| if x == i - 1 { i } else if x == i { i - 1 } else { x })
        .collect()
}

/// `ℓ(s_i w) < ℓ(w)`: the value `i` appears before `i-1`.
pub fn has_left_descent(w: &[usize], i: usize) -> bool {
    let inv = inverse(w);
    inv[i] < inv[i - 1]
}

pub fn has_right_descent(w: &[usize], i: usize) -> bool {
    w[i - 1] > w[i]
}

/// Lexicographically minimal reduced word `w = s_{i_1} ⋯ s_{i_r}` (1-based letters).
pub fn lexmin_word(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    let mut x = w.to_vec();
    let mut word = Vec::new();
    'outer: loop {
        for i in 1..n {
            if has_left_descent(&x, i) {
                word.push(i);
                x = mul_s_left(i, &x);
                continue 'outer;
            }
        }
        break;
    }
    word
}

pub fn from_word(n: usize, word: &[usize]) -> Perm {
    word.iter().fold(identity(n), |x, &i| mul_s_right(&x, i))
}

pub fn longest(n: usize) -> Perm {
    (0..n).rev().collect()
}

/// `v × w ∈ S_{n+m}` with `w` acting on the last `m` letters.
pub fn direct_product(v: &[usize], w: &[usize]) -> Perm {
    let n = v.len();
    v.iter().copied().chain(w.iter().map(|&x| x + n)).collect()
}

/// `w` viewed in `S_{n+len(w)}`, acting on the letters after `n`.
pub fn shift(w: &[usize], n: usize) -> Perm {
    direct_product(&identity(n), w)
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for p in &out {
            for pos in 0..=k {
                let mut q: Perm = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// The elements of `S_n` ordered by length, then by canonical (lexmin) reduced word.
#[derive(Debug, Clone)]
pub struct PermIndex {
    pub n: usize,
    pub perms: Vec<Perm>,
    pub words: Vec<Vec<usize>>,
    index: HashMap<Perm, usize>,
}

impl PermIndex {
    pub fn new(n: usize) -> Self {
        let mut keyed: Vec<(usize, Vec<usize>, Perm)> = all_perms(n)
            .into_iter()
            .map(|p| {
                let w = lexmin_word(&p);
                (w.len(), w, p)
            })
            .collect();
        keyed.sort();
        let index = keyed.iter().enumerate().map(|(i, k)| (k.2.clone(), i)).collect();
        let (words, perms) = keyed.into_iter().map(|(_, w, p)| (w, p)).unzip();
        PermIndex { n, perms, words, index }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn index_of(&self, p: &[usize]) -> usize {
        self.index[p]
    }

    pub fn length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple(&self, i: usize) -> usize {
        self.index_of(&mul_s_right(&identity(self.n), i))
    }

    pub fn longest(&self) -> usize {
        self.index_of(&longest(self.n))
    }
}

/// Minimal-length representatives `w` of the right cosets `(S_n × S_m) w` in `S_{n+m}`,
/// i.e. permutations in which the values `< n` and the values `≥ n` each appear in
/// increasing order.
pub fn coset_reps(n: usize, m: usize) -> Vec<Perm> {
    let mut out: Vec<Perm> = all_perms(n + m)
        .into_iter()
        .filter(|w| {
            let inv = inverse(w);
            (1..n).all(|i| inv[i - 1] < inv[i]) && (n + 1..n + m).all(|i| inv[i - 1] < inv[i])
        })
        .collect();
    out.sort_by_key(|w| (length(w), lexmin_word(w)));
    out
}

/// The representative `w_r` of the double coset in `(S_k × S_l) \ S_K / (S_n × S_m)`,
/// `K = n + m = k + l`, for `max(0, n-l) ≤ r ≤ min(n, k)`.
pub fn double_coset_wr(n: usize, m: usize, k: usize, l: usize, r: usize) -> Result<Perm> {
    if n + m != k + l {
        return Err(Error::InvalidArgument(format!("{n}+{m} != {k}+{l}")));
    }
    let lo = n.saturating_sub(l);
    if r < lo || r > n.min(k) {
        return Err(Error::InvalidArgument(format!("r = {r} outside [{lo}, {}]", n.min(k))));
    }
    let big = n + m;
    // 1-based piecewise formula, stored 0-based.
    let w = (1..=big)
        .map(|i| {
            let v = if i <= r {
                i
            } else if i <= n {
                i - r + k
            } else if i <= n + k - r {
                i - n + r
            } else {
                i
            };
            v - 1
        })
        .collect();
    Ok(w)
}

/// The double coset `(S_k × S_l) w (S_n × S_m)`, by closure under simple reflections.
pub fn double_coset(w: &[usize], n: usize, k: usize) -> BTreeSet<Perm> {
    let big = w.len();
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(x) = queue.pop_front() {
        for i in 1..big {
            let mut next = Vec::new();
            if i != k {
                next.push(mul_s_left(i, &x));
            }
            if i != n {
                next.push(mul_s_right(&x, i));
            }
            for y in next {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_lengths() {
        let idx = PermIndex::new(3);
        assert_eq!(idx.len(), 6);
        assert_eq!(idx.perms[0], identity(3));
        assert_eq!(idx.words[idx.longest()], vec![1, 2, 1]);
        for (p, w) in idx.perms.iter().zip(&idx.words) {
            assert_eq!(&from_word(3, w), p);
            assert_eq!(length(p), w.len());
        }
    }

    #[test]
    fn coset_rep_counts() {
        assert_eq!(coset_reps(1, 1), vec![identity(2), vec![1, 0]]);
        assert_eq!(coset_reps(2, 2).len(), 6);
    }

    #[test]
    fn wr_small_cases() {
        assert_eq!(double_coset_wr(1, 1, 1, 1, 1).unwrap(), identity(2));
        assert_eq!(double_coset_wr(1, 1, 1, 1, 0).unwrap(), vec![1, 0]);
        assert!(double_coset_wr(1, 1, 1, 1, 2).is_err());
        let w = double_coset_wr(2, 1, 2, 1, 1).unwrap();
        assert_eq!(double_coset(&w, 2, 2).len(), 4);
    }
}
