//! The twisted Heisenberg double `h = H⁺ # H⁻` of a tower, with `H⁺ = G(A)` and `H⁻ = K(A)`,
//! its lowest weight Fock space `H⁺`, and the quantum Weyl specialization for nilCoxeter
//! towers.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ground_ring::{qpi_integer, GroundElem, Mode, TwistScalar};
use crate::grothendieck::{twisted_bialgebra_with, GSide, GrothVector, Groth, Key};
use crate::linalg::{rank_of, SVec};
use crate::module::{induce_module, outer_tensor, restrict_module, Side, SuperModule};
use crate::report::Record;
use crate::superalgebra::AlgebraHom;
use crate::towers::Tower;
use crate::Q;

/// Twist bookkeeping, all biadditive maps stored as multiples of `nm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistDataSet {
    pub c: TwistScalar,
    pub chi: (i64, i64),
    pub gamma: (i64, i64),
    pub xi: (i64, i64),
    pub compatible: bool,
}

/// `ξ′ = (χ′)ᵀ + γ′ − (γ″)ᵀ`, `ξ″ = χ″ + γ′ − γ″`.
pub fn derive_xi(chi: (i64, i64), gamma: (i64, i64)) -> (i64, i64) {
    (chi.0 + gamma.0 - gamma.1, chi.1 + gamma.0 - gamma.1)
}

/// `χ′ = −(γ′)ᵀ`.
pub fn check_compatibility(chi: (i64, i64), gamma: (i64, i64)) -> bool {
    chi.0 == -gamma.0
}

impl TwistDataSet {
    pub fn new(c: TwistScalar, chi: (i64, i64), gamma: (i64, i64)) -> Self {
        TwistDataSet { c, chi, gamma, xi: derive_xi(chi, gamma), compatible: check_compatibility(chi, gamma) }
    }

    /// A tower's twist with `G(A)` presented as a `(c, 0, κ)`-Hopf algebra, which is allowed
    /// because `G(A)` is cocommutative up to the twist.
    pub fn for_tower(t: &Tower) -> Self {
        Self::new(t.twist, (0, t.kappa), t.gamma)
    }
}

/// A finite sum of `a # x` with `a` a basis key of `H⁺` and `x` one of `H⁻`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergElem {
    pub mode: Mode,
    pub terms: BTreeMap<(Key, Key), GroundElem>,
}

/// Vectors of the Fock space `H⁺`.
pub type FockVector = GrothVector;

impl HeisenbergElem {
    pub fn zero(mode: Mode) -> Self {
        HeisenbergElem { mode, terms: BTreeMap::new() }
    }

    pub fn monomial(mode: Mode, a: Key, x: Key) -> Self {
        let mut h = Self::zero(mode);
        h.add_term((a, x), &GroundElem::one(mode));
        h
    }

    pub fn one(mode: Mode) -> Self {
        Self::monomial(mode, (0, 0), (0, 0))
    }

    /// `a # 1`.
    pub fn plus(a: &GrothVector) -> Self {
        let mut h = Self::zero(a.mode);
        for (k, c) in &a.terms {
            h.add_term((*k, (0, 0)), c);
        }
        h
    }

    pub fn add_term(&mut self, key: (Key, Key), c: &GroundElem) {
        let slot = self.terms.entry(key).or_insert_with(|| GroundElem::zero(self.mode));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn scale(&self, s: &GroundElem) -> Self {
        let mut out = Self::zero(self.mode);
        for (k, c) in &self.terms {
            out.add_term(*k, &(c * s));
        }
        out
    }
}

pub struct Heisenberg {
    pub groth: Arc<Groth>,
    pub twist: TwistDataSet,
}

impl Heisenberg {
    pub fn new(groth: Arc<Groth>, twist: TwistDataSet) -> Result<Self> {
        if !twist.compatible {
            return Err(Error::InvalidArgument(format!(
                "twist χ′ = {} is not compatible with γ′ = {}",
                twist.chi.0, twist.gamma.0
            )));
        }
        Ok(Heisenberg { groth, twist })
    }

    pub fn for_tower(groth: Arc<Groth>) -> Result<Self> {
        let tw = TwistDataSet::for_tower(&groth.tower);
        Self::new(groth, tw)
    }

    pub fn mode(&self) -> Mode {
        self.groth.mode()
    }

    fn c_pow(&self, k: i64) -> GroundElem {
        self.twist.c.pow(k, self.mode())
    }

    /// `x*(b) = Σ_{(b)} c^{γ′(|b₁|,|b₂|)} ⟨x, b₂⟩ b₁` on basis elements.
    pub fn regular_action_basis(&self, x: Key, b: Key) -> Result<FockVector> {
        let g = &self.groth;
        let mut out = GrothVector::zero(GSide::G, self.mode());
        if x.0 > b.0 {
            return Ok(out);
        }
        let part = g.delta_part(GSide::G, b, b.0 - x.0)?;
        let s = &self.c_pow(self.twist.gamma.0 * ((b.0 - x.0) * x.0) as i64) * g.pairing_entry(x);
        for ((b1, b2), c) in &part.terms {
            if *b2 == x {
                out.add_term(*b1, &(c * &s));
            }
        }
        Ok(out)
    }

    pub fn regular_action(&self, x: &GrothVector, b: &FockVector) -> Result<FockVector> {
        let mut out = GrothVector::zero(GSide::G, self.mode());
        for (xk, cx) in &x.terms {
            for (bk, cb) in &b.terms {
                out = out.add(&self.regular_action_basis(*xk, *bk)?.scale(&(cx * cb)));
            }
        }
        Ok(out)
    }

    /// `(a # x)(v) = a · x*(v)`.
    pub fn fock_act(&self, h: &HeisenbergElem, v: &FockVector) -> Result<FockVector> {
        let g = &self.groth;
        let mut out = GrothVector::zero(GSide::G, self.mode());
        for ((a, x), c) in &h.terms {
            let xv = self.regular_action(&GrothVector::basis(GSide::K, self.mode(), *x), v)?;
            if xv.is_zero() {
                continue;
            }
            let av = g.nabla(&GrothVector::basis(GSide::G, self.mode(), *a), &xv)?;
            out = out.add(&av.scale(c));
        }
        Ok(out)
    }

    /// `(a#x)(b#y) = Σ_{(x),(b)} c^{γ″(|b|,|x₂|) + ξ″(|b|−|x₁|,|x₂|) + γ′(|b₁|,|b₂|)}
    /// ⟨x₁, b₂⟩ ab₁ # x₂y` on basis monomials.
    pub fn smash_basis(&self, ax: (Key, Key), by: (Key, Key)) -> Result<HeisenbergElem> {
        let g = &self.groth;
        let mode = self.mode();
        let ((a, x), (b, y)) = (ax, by);
        let tw = &self.twist;
        let mut out = HeisenbergElem::zero(mode);
        for ((x1, x2), cx) in &g.delta_basis(GSide::K, x)?.terms {
            if x1.0 > b.0 {
                continue;
            }
            for ((b1, b2), cb) in &g.delta_part(GSide::G, b, b.0 - x1.0)?.terms {
                if b2 != x1 {
                    continue;
                }
                let e = tw.gamma.1 * (b.0 * x2.0) as i64
                    + tw.xi.1 * ((b.0 - x1.0) * x2.0) as i64
                    + tw.gamma.0 * (b1.0 * b2.0) as i64;
                let s = &(&(cx * cb) * g.pairing_entry(*x1)) * &self.c_pow(e);
                let left = g.nabla_basis(GSide::G, a, *b1)?;
                let right = g.nabla_basis(GSide::K, *x2, y)?;
                for (p, cp) in &left.terms {
                    for (m, cm) in &right.terms {
                        out.add_term((*p, *m), &(&s * &(cp * cm)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn smash_multiply(&self, h1: &HeisenbergElem, h2: &HeisenbergElem) -> Result<HeisenbergElem> {
        let mut out = HeisenbergElem::zero(self.mode());
        for (k1, c1) in &h1.terms {
            for (k2, c2) in &h2.terms {
                out = out.add(&self.smash_basis(*k1, *k2)?.scale(&(c1 * c2)));
            }
        }
        Ok(out)
    }

    pub fn elem_json(&self, h: &HeisenbergElem) -> Value {
        let g = &self.groth;
        Value::Array(
            h.terms
                .iter()
                .map(|((a, x), c)| {
                    json!({
                        "plus_level": a.0,
                        "plus_label": g.label(GSide::G, *a),
                        "minus_level": x.0,
                        "minus_label": g.label(GSide::K, *x),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }

    /// Basis monomials `a # x` with both levels at most `n`.
    pub fn monomials(&self, n: usize) -> Vec<(Key, Key)> {
        let keys = self.groth.basis_upto(n);
        keys.iter().flat_map(|a| keys.iter().map(move |x| (*a, *x))).collect()
    }
}

fn elem_record(h: &Heisenberg, suite: &str, check: &str, ix: &[i64], lhs: &HeisenbergElem, rhs: &HeisenbergElem, cite: &str) -> Record {
    let mut r = Record::flag(suite, check, ix, lhs == rhs, h.elem_json(lhs), cite);
    r.rhs = h.elem_json(rhs);
    r
}

fn fock_record(h: &Heisenberg, suite: &str, check: &str, ix: &[i64], lhs: &FockVector, rhs: &FockVector, cite: &str) -> Record {
    let g = &h.groth;
    let mut r = Record::flag(suite, check, ix, lhs == rhs, g.vector_json(lhs), cite);
    r.rhs = g.vector_json(rhs);
    r
}

fn key_ix(k: Key) -> [i64; 2] {
    [k.0 as i64, k.1 as i64]
}

/// Derived `ξ`, the compatibility condition, and `H⁻` as a `(c, ξ)`-Hopf algebra up to
/// level `n`.
pub fn twist_checks(h: &Heisenberg, n: usize) -> Result<Vec<Record>> {
    let tw = &h.twist;
    let t = &h.groth.tower;
    let mut out = vec![Record::flag(
        "fock",
        "compatible dual pair",
        &[],
        tw.compatible,
        json!({"chi": [tw.chi.0, tw.chi.1], "gamma": [tw.gamma.0, tw.gamma.1], "xi": [tw.xi.0, tw.xi.1]}),
        "χ′ = −(γ′)ᵀ",
    )];
    out.extend(twisted_bialgebra_with(&h.groth, GSide::K, n, tw.xi, "fock")?);
    // The tower's own presentation of G(A) gives a second ξ.
    let xi2 = derive_xi(t.chi, t.gamma);
    if xi2 != tw.xi {
        out.extend(twisted_bialgebra_with(&h.groth, GSide::K, n, xi2, "fock")?);
    }
    Ok(out)
}

/// `(h₁h₂)v = h₁(h₂v)` on basis monomials and basis vectors, and associativity of the smash
/// product on basis triples, with levels summing to at most `n` on each side.
pub fn action_compat(h: &Heisenberg, n: usize) -> Result<Vec<Record>> {
    let mode = h.mode();
    let mons = h.monomials(n);
    let fock = h.groth.basis_upto(n);
    let pairs: Vec<((Key, Key), (Key, Key))> = mons
        .iter()
        .flat_map(|m1| mons.iter().map(move |m2| (*m1, *m2)))
        .filter(|(m1, m2)| m1.0 .0 + m2.0 .0 <= n && m1.1 .0 + m2.1 .0 <= n)
        .collect();
    let module_law: Vec<Vec<Record>> = pairs
        .par_iter()
        .map(|(m1, m2)| -> Result<Vec<Record>> {
            let h1 = HeisenbergElem::monomial(mode, m1.0, m1.1);
            let h2 = HeisenbergElem::monomial(mode, m2.0, m2.1);
            let h12 = h.smash_multiply(&h1, &h2)?;
            let mut recs = Vec::new();
            for v in &fock {
                if m1.0 .0 + m2.0 .0 + v.0 > n {
                    continue;
                }
                let vv = GrothVector::basis(GSide::G, mode, *v);
                let lhs = h.fock_act(&h12, &vv)?;
                let rhs = h.fock_act(&h1, &h.fock_act(&h2, &vv)?)?;
                let ix = [m1.0 .0, m1.1 .0, m2.0 .0, m2.1 .0, v.0].map(|x| x as i64);
                recs.push(fock_record(h, "fock", "module law", &ix, &lhs, &rhs, "(h₁h₂)v = h₁(h₂v)"));
            }
            Ok(recs)
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Record> = module_law.into_iter().flatten().collect();
    let triples: Vec<[(Key, Key); 3]> = pairs
        .iter()
        .flat_map(|(m1, m2)| mons.iter().map(move |m3| [*m1, *m2, *m3]))
        .filter(|[m1, m2, m3]| m1.0 .0 + m2.0 .0 + m3.0 .0 <= n && m1.1 .0 + m2.1 .0 + m3.1 .0 <= n)
        .collect();
    let assoc: Vec<Record> = triples
        .par_iter()
        .map(|[m1, m2, m3]| -> Result<Record> {
            let e = |m: &(Key, Key)| HeisenbergElem::monomial(mode, m.0, m.1);
            let lhs = h.smash_multiply(&h.smash_multiply(&e(m1), &e(m2))?, &e(m3))?;
            let rhs = h.smash_multiply(&e(m1), &h.smash_multiply(&e(m2), &e(m3))?)?;
            let ix = [m1.0 .0, m1.1 .0, m2.0 .0, m2.1 .0, m3.0 .0, m3.1 .0].map(|x| x as i64);
            Ok(elem_record(h, "fock", "smash product associative", &ix, &lhs, &rhs, "((a#x)(b#y))(c#z) = (a#x)((b#y)(c#z))"))
        })
        .collect::<Result<_>>()?;
    out.extend(assoc);
    for m in &mons {
        let e = HeisenbergElem::monomial(mode, m.0, m.1);
        let one = HeisenbergElem::one(mode);
        let ix = [m.0 .0 as i64, m.1 .0 as i64];
        out.push(elem_record(h, "fock", "unit", &ix, &h.smash_multiply(&one, &e)?, &e, "(1#1)(a#x) = a#x"));
        out.push(elem_record(h, "fock", "unit", &ix, &h.smash_multiply(&e, &one)?, &e, "(a#x)(1#1) = a#x"));
    }
    Ok(out)
}

/// Linear independence of the actions of all monomials with levels `≤ n` on `F_{≤2n}`,
/// evaluated at `q = 2` and at each admissible value of `π`.
pub fn faithfulness(h: &Heisenberg, n: usize) -> Result<Vec<Record>> {
    let mode = h.mode();
    let mons = h.monomials(n);
    let fock = h.groth.basis_upto(2 * n);
    let pos: BTreeMap<Key, usize> = fock.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let dim = fock.len();
    let mut actions: Vec<Vec<(usize, GroundElem)>> = Vec::with_capacity(mons.len());
    for (a, x) in &mons {
        let e = HeisenbergElem::monomial(mode, *a, *x);
        let mut entries = Vec::new();
        for (j, v) in fock.iter().enumerate() {
            if a.0 + v.0 > 2 * n {
                continue;
            }
            let img = h.fock_act(&e, &GrothVector::basis(GSide::G, mode, *v))?;
            for (k, c) in &img.terms {
                entries.push((pos[k] * dim + j, c.clone()));
            }
        }
        actions.push(entries);
    }
    let pis: &[i8] = if mode == Mode::Full { &[1, -1] } else { &[1] };
    let q = Q::from_integer(2.into());
    let mut out = Vec::new();
    for &pi in pis {
        let vecs: Vec<SVec> = actions
            .iter()
            .map(|entries| {
                let mut v: SVec = entries
                    .iter()
                    .map(|(i, c)| (*i, c.eval(&q, pi)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                v.sort_by_key(|t| t.0);
                v
            })
            .collect();
        let rank = rank_of(&vecs);
        out.push(Record::count(
            "faithfulness",
            &format!("no kernel up to level {n} at q = 2, π = {pi}"),
            &[n as i64, pi as i64],
            rank as u64,
            mons.len() as u64,
            "the action of h on F is faithful",
        ));
    }
    Ok(out)
}

/// `y₁ⁿ` in `G(A)` for `n ≤ top`.
fn y1_powers(h: &Heisenberg, top: usize) -> Result<Vec<FockVector>> {
    let g = &h.groth;
    let mode = h.mode();
    let y1 = GrothVector::basis(GSide::G, mode, (1, 0));
    let mut out = vec![GrothVector::basis(GSide::G, mode, (0, 0))];
    for k in 1..=top {
        let next = g.nabla(&out[k - 1], &y1)?;
        out.push(next);
    }
    Ok(out)
}

/// `x*(y₁ⁿ) = [n] y₁ⁿ⁻¹` for `n ≤ top` and `∂y − c y∂ = 1` as operators on `F_pj` and as an
/// identity in `h`.
pub fn weyl_check(h: &Heisenberg, top: usize) -> Result<Vec<Record>> {
    let g = &h.groth;
    let mode = h.mode();
    let c = h.twist.c;
    let top = top.min(g.max_level());
    let pows = y1_powers(h, top)?;
    let x = GrothVector::basis(GSide::K, mode, (1, 0));
    let y1 = GrothVector::basis(GSide::G, mode, (1, 0));
    let mut out = Vec::new();
    let mut operator_ok = true;
    for k in 0..=top {
        let lhs = h.regular_action(&x, &pows[k])?;
        let rhs = if k == 0 { GrothVector::zero(GSide::G, mode) } else { pows[k - 1].scale(&qpi_integer(k, c, mode)) };
        out.push(fock_record(h, "weyl", "quantum derivative of y^n", &[k as i64], &lhs, &rhs, "x*(y₁ⁿ) = [n] y₁ⁿ⁻¹"));
        if k < top {
            let dy = h.regular_action(&x, &g.nabla(&y1, &pows[k])?)?;
            let yd = g.nabla(&y1, &h.regular_action(&x, &pows[k])?)?.scale(&c.pow(1, mode));
            let lhs = dy.add(&yd.scale(&GroundElem::from_int(mode, -1)));
            operator_ok &= lhs == pows[k];
            out.push(fock_record(h, "weyl", "Weyl relation on y^n", &[k as i64], &lhs, &pows[k], "∂y − c y∂ = 1"));
        }
    }
    out.push(Record::flag(
        "weyl",
        "Weyl relation as operators",
        &[top as i64],
        operator_ok,
        json!({"degrees": top}),
        "∂y = c y∂ + 1 on F_pj",
    ));
    // Element level: (1#x)(y#1) − c(y#1)(1#x) = 1#1, and its powers.
    let dx = HeisenbergElem::monomial(mode, (0, 0), (1, 0));
    for k in 1..top {
        let yk = HeisenbergElem::plus(&pows[k]);
        let lhs = h
            .smash_multiply(&dx, &yk)?
            .add(&h.smash_multiply(&yk, &dx)?.scale(&c.pow(k as i64, mode)).scale(&GroundElem::from_int(mode, -1)));
        let rhs = HeisenbergElem::plus(&pows[k - 1].scale(&qpi_integer(k, c, mode)));
        let (check, cite) = if k == 1 {
            ("Weyl relation in h", "∂y − c y∂ = 1")
        } else {
            ("Weyl relation in h, powers", "∂yⁿ − cⁿ yⁿ∂ = [n] yⁿ⁻¹")
        };
        out.push(elem_record(h, "weyl", check, &[k as i64], &lhs, &rhs, cite));
    }
    Ok(out)
}

/// `x*(ab) = Σ_{(x)} c^E x₁*(a) x₂*(b)` with
/// `E = γ′(|a|−|x₁|,|x₂|) + γ′(|b|−|x₂|,|x₁|) + γ″(|x₁|,|x₂|) + χ′(|x₁|,|b|−|x₂|) + χ″(|a|−|x₁|,|x₂|)`.
pub fn general_relation(h: &Heisenberg, n: usize) -> Result<Vec<Record>> {
    let g = &h.groth;
    let mode = h.mode();
    let tw = &h.twist;
    let keys = g.basis_upto(n);
    let mut out = Vec::new();
    for &a in &keys {
        for &b in &keys {
            if a.0 + b.0 > n {
                continue;
            }
            let ab = g.nabla_basis(GSide::G, a, b)?;
            for &x in &keys {
                if x.0 > a.0 + b.0 {
                    continue;
                }
                let lhs = h.regular_action(&GrothVector::basis(GSide::K, mode, x), &ab)?;
                let mut rhs = GrothVector::zero(GSide::G, mode);
                for ((x1, x2), cx) in &g.delta_basis(GSide::K, x)?.terms {
                    if x1.0 > a.0 || x2.0 > b.0 {
                        continue;
                    }
                    let (n1, n2) = (x1.0 as i64, x2.0 as i64);
                    let (na, nb) = (a.0 as i64, b.0 as i64);
                    let e = tw.gamma.0 * (na - n1) * n2
                        + tw.gamma.0 * (nb - n2) * n1
                        + tw.gamma.1 * n1 * n2
                        + tw.chi.0 * n1 * (nb - n2)
                        + tw.chi.1 * (na - n1) * n2;
                    let l = h.regular_action_basis(*x1, a)?;
                    let r = h.regular_action_basis(*x2, b)?;
                    rhs = rhs.add(&g.nabla(&l, &r)?.scale(&(cx * &h.c_pow(e))));
                }
                let ix = [a.0, b.0, x.0].map(|v| v as i64);
                out.push(fock_record(h, "fock", "regular action on products", &ix, &lhs, &rhs, "x*(ab) = Σ c^E x₁*(a) x₂*(b)"));
            }
        }
    }
    Ok(out)
}

/// `xᵐ*(y₁ⁿ) = [n][n−1]⋯[n−m+1] y₁ⁿ⁻ᵐ`, so the span of the `y₁ⁿ` is invariant.
pub fn pj_invariance(h: &Heisenberg, top: usize) -> Result<Vec<Record>> {
    let mode = h.mode();
    let c = h.twist.c;
    let top = top.min(h.groth.max_level());
    let pows = y1_powers(h, top)?;
    let mut out = Vec::new();
    for k in 0..=top {
        for m in 0..=k {
            let lhs = h.regular_action(&GrothVector::basis(GSide::K, mode, (m, 0)), &pows[k])?;
            let mut s = GroundElem::one(mode);
            for j in k - m + 1..=k {
                s = &s * &qpi_integer(j, c, mode);
            }
            let rhs = pows[k - m].scale(&s);
            out.push(fock_record(h, "fock", "projective Fock space invariant", &[m as i64, k as i64], &lhs, &rhs, "xᵐ*(y₁ⁿ) = [n]⋯[n−m+1] y₁ⁿ⁻ᵐ"));
        }
    }
    Ok(out)
}

/// `⟨r, x*(b)⟩ = ⟨rx, b⟩`.
pub fn action_adjoint(h: &Heisenberg, n: usize) -> Result<Vec<Record>> {
    let g = &h.groth;
    let mode = h.mode();
    let keys = g.basis_upto(n);
    let mut out = Vec::new();
    for &r in &keys {
        for &x in &keys {
            if r.0 + x.0 > n {
                continue;
            }
            let rx = g.nabla_basis(GSide::K, r, x)?;
            for b in g.basis(r.0 + x.0) {
                let bv = GrothVector::basis(GSide::G, mode, b);
                let lhs = g.pairing(&GrothVector::basis(GSide::K, mode, r), &h.regular_action_basis(x, b)?);
                let rhs = g.pairing(&rx, &bv);
                let ix = [key_ix(r), key_ix(x), key_ix(b)].concat();
                out.push(Record::eq("fock", "action adjoint to multiplication", &ix, &lhs, &rhs, "⟨r, x*(b)⟩ = ⟨rx, b⟩"));
            }
        }
    }
    Ok(out)
}

/// `a ↦ ρ_{1,m}(1 ⊗ a)`, which is a map `A_m → A_{m+1}` because `A_1` is the ground field.
fn embed_after_one(t: &Tower, m: usize) -> Result<AlgebraHom> {
    if t.algebra(1).dim() != 1 {
        return Err(Error::InvalidArgument("A_1 is not the ground field".into()));
    }
    let rho = t.rho(1, m)?;
    AlgebraHom::new(t.algebra(m).clone(), t.algebra(m + 1).clone(), rho.images.clone())
}

/// `Ind_{F_1} M = Ind^{A_{m+1}}_{A_1⊗A_m}(F_1 ⊠ M)`.
fn ind_f1(t: &Tower, m: usize, module: &SuperModule) -> Result<SuperModule> {
    let f1 = SuperModule::regular(t.algebra(1).clone(), Side::Left);
    let x = outer_tensor(&f1, module, &t.tensor(1, m))?;
    induce_module(&*t.rho(1, m)?, &x)
}

/// `grdim Res Ind M = c · grdim Ind Res M + grdim M` for the declared `P_m` and `L_m`,
/// `m ≤ n`, with `Res = Res^{A_m}_{A_{m−1}}` and `Ind` its left adjoint.
pub fn categorified_weyl(t: &Tower, n: usize, suite: &str) -> Result<Vec<Record>> {
    let mode = t.mode;
    let c = t.c_pow(1);
    let mut out = Vec::new();
    for m in 0..=n.min(t.n_max.saturating_sub(1)) {
        let mods = [t.projectives(m), t.simples(m)].concat();
        for (i, d) in mods.iter().enumerate() {
            let ind = ind_f1(t, m, &d.module)?;
            let lhs = restrict_module(&embed_after_one(t, m)?, &ind)?.graded_dim(mode);
            let mut rhs = d.module.graded_dim(mode);
            if m > 0 {
                let res = restrict_module(&embed_after_one(t, m - 1)?, &d.module)?;
                rhs += &(&c * &ind_f1(t, m - 1, &res)?.graded_dim(mode));
            }
            out.push(Record::eq(
                suite,
                &format!("Res Ind vs Ind Res on {}", d.label),
                &[m as i64, i as i64],
                &lhs,
                &rhs,
                "Res_{F₁}∘Ind_{F₁} ≅ (Ind_{F₁}∘Res_{F₁}){1,0} ⊕ id",
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize, d: i64, eps: u8) -> Heisenberg {
        let t = Arc::new(Tower::nilcoxeter(n, d, eps).unwrap());
        Heisenberg::for_tower(Arc::new(Groth::new(t).unwrap())).unwrap()
    }

    fn failures(recs: &[Record]) -> Vec<String> {
        recs.iter().filter(|r| !r.pass).map(|r| format!("{} {:?} {} {}", r.check, r.indices, r.lhs, r.rhs)).collect()
    }

    #[test]
    fn derived_xi() {
        assert_eq!(derive_xi((0, 0), (0, 0)), (0, 0));
        assert_eq!(derive_xi((1, 0), (0, 1)), (0, -1));
        assert_eq!(derive_xi((0, 0), (3, 3)), (0, 0));
        assert!(check_compatibility((2, 0), (-2, 0)));
        assert!(!check_compatibility((1, 0), (0, 1)));
    }

    #[test]
    fn basic_smash() {
        let h = setup(3, 1, 0);
        let m = Mode::Full;
        let lhs = h.smash_multiply(&HeisenbergElem::monomial(m, (0, 0), (1, 0)), &HeisenbergElem::monomial(m, (1, 0), (0, 0))).unwrap();
        let mut rhs = HeisenbergElem::monomial(m, (1, 0), (1, 0)).scale(&GroundElem::q(m));
        rhs.add_term(((0, 0), (0, 0)), &GroundElem::one(m));
        assert_eq!(lhs, rhs);
        let v = h.fock_act(&HeisenbergElem::monomial(m, (0, 0), (1, 0)), &GrothVector::basis(GSide::G, m, (0, 0))).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn nilcoxeter_small_checks() {
        for eps in 0..2 {
            let h = setup(4, 1, eps);
            let mut recs = twist_checks(&h, 4).unwrap();
            recs.extend(action_compat(&h, 3).unwrap());
            recs.extend(weyl_check(&h, 4).unwrap());
            recs.extend(general_relation(&h, 4).unwrap());
            recs.extend(pj_invariance(&h, 4).unwrap());
            recs.extend(action_adjoint(&h, 4).unwrap());
            recs.extend(faithfulness(&h, 2).unwrap());
            assert_eq!(failures(&recs), Vec::<String>::new());
        }
    }

    #[test]
    fn corrupted_xi_is_detected() {
        let t = Arc::new(Tower::nilcoxeter(3, 1, 0).unwrap());
        let g = Arc::new(Groth::new(t.clone()).unwrap());
        let mut tw = TwistDataSet::for_tower(&t);
        tw.xi.1 += 1;
        let h = Heisenberg::new(g, tw).unwrap();
        let recs = action_compat(&h, 3).unwrap();
        assert!(recs.iter().any(|r| !r.pass && r.check == "module law"));
    }

    #[test]
    fn categorified_weyl_small() {
        let t = Tower::nilcoxeter(4, 1, 0).unwrap();
        let recs = categorified_weyl(&t, 3, "weyl").unwrap();
        assert_eq!(recs.len(), 8);
        assert_eq!(failures(&recs), Vec::<String>::new());
    }
}
