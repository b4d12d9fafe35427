//! Coefficient rings `Z[q, q^-1, π]/(π² - 1)` and its collapse `Z[1/2, q, q^-1]` (π = 1).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Integer coefficients, π² = 1.
    Full,
    /// π = 1 and 2 inverted.
    Collapsed,
}

/// `c = q^d π^eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistScalar {
    pub d: i64,
    pub eps: u8,
}

impl TwistScalar {
    pub fn new(d: i64, eps: u8) -> Self {
        TwistScalar { d, eps: eps & 1 }
    }

    /// `c^k`, for any integer `k`.
    pub fn pow(&self, k: i64, mode: Mode) -> GroundElem {
        let pi = (self.eps as i64 * k).rem_euclid(2) as u8;
        GroundElem::monomial(mode, self.d * k, pi, 1)
    }
}

/// Exact element of the ground ring. Terms are kept in canonical order
/// (q-exponent, then π-exponent) and zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundElem {
    mode: Mode,
    terms: BTreeMap<(i64, u8), BigRational>,
}

impl GroundElem {
    pub fn zero(mode: Mode) -> Self {
        GroundElem { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: Mode) -> Self {
        Self::from_int(mode, 1)
    }

    pub fn from_int(mode: Mode, n: impl Into<BigInt>) -> Self {
        Self::monomial(mode, 0, 0, n)
    }

    pub fn monomial(mode: Mode, q_exp: i64, pi_exp: u8, coeff: impl Into<BigInt>) -> Self {
        let mut e = Self::zero(mode);
        e.add_term(q_exp, pi_exp, BigRational::from_integer(coeff.into()));
        e
    }

    pub fn q(mode: Mode) -> Self {
        Self::monomial(mode, 1, 0, 1)
    }

    pub fn pi(mode: Mode) -> Self {
        Self::monomial(mode, 0, 1, 1)
    }

    /// Build from `(q_exp, pi_exp, coeff)` triples. In collapsed mode π-exponents are folded to 0;
    /// full-mode coefficients must be integers.
    pub fn from_terms<I>(mode: Mode, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, u8, BigRational)>,
    {
        let mut e = Self::zero(mode);
        for (qe, pe, c) in terms {
            if mode == Mode::Full && !c.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "non-integral coefficient {c} in full mode"
                )));
            }
            if mode == Mode::Collapsed && !is_dyadic(&c) {
                return Err(Error::InvalidArgument(format!("non-dyadic coefficient {c}")));
            }
            e.add_term(qe, pe, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, q_exp: i64, pi_exp: u8, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let pi_exp = match self.mode {
            Mode::Full => pi_exp & 1,
            Mode::Collapsed => 0,
        };
        let key = (q_exp, pi_exp);
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds `coeff · q^q_exp π^pi_exp` in place.
    pub fn add_monomial(&mut self, q_exp: i64, pi_exp: u8, coeff: impl Into<BigInt>) {
        self.add_term(q_exp, pi_exp, BigRational::from_integer(coeff.into()));
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u8, &BigRational)> {
        self.terms.iter().map(|(&(q, p), c)| (q, p, c))
    }

    pub fn coeff(&self, q_exp: i64, pi_exp: u8) -> BigRational {
        self.terms.get(&(q_exp, pi_exp)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::RingModeConflict)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (&(q, p), c) in &other.terms {
            out.add_term(q, p, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (&(q, p), c) in &other.terms {
            out.add_term(q, p, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = Self::zero(self.mode);
        for (&(q1, p1), c1) in &self.terms {
            for (&(q2, p2), c2) in &other.terms {
                out.add_term(q1 + q2, (p1 + p2) & 1, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.mode);
        let k = BigRational::from_integer(k.clone());
        for (&(q, p), c) in &self.terms {
            out.add_term(q, p, c * &k);
        }
        out
    }

    /// Multiply by `q^a π^b`.
    pub fn shift(&self, q_exp: i64, pi_exp: u8) -> Self {
        let mut out = Self::zero(self.mode);
        for (&(q, p), c) in &self.terms {
            out.add_term(q + q_exp, p + pi_exp, c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.mode);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// q ↦ q^-1, π fixed.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.mode);
        for (&(q, p), c) in &self.terms {
            out.add_term(-q, p, c.clone());
        }
        out
    }

    /// π ↦ 1, landing in the collapsed ring.
    pub fn collapse_pi(&self) -> Self {
        let mut out = Self::zero(Mode::Collapsed);
        for (&(q, _), c) in &self.terms {
            out.add_term(q, 0, c.clone());
        }
        out
    }

    /// Exact halving; only meaningful where 2 is invertible.
    pub fn halve(&self) -> Result<Self> {
        if self.mode != Mode::Collapsed {
            return Err(Error::InvalidArgument("halving requires the collapsed ring".into()));
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mut out = Self::zero(self.mode);
        for (&(q, p), c) in &self.terms {
            out.add_term(q, p, c / &two);
        }
        Ok(out)
    }

    /// The π-free `z` with `(1+π) z = self`, in full mode. Fails unless self is
    /// divisible, i.e. its π-part equals its π-free part.
    pub fn div_one_plus_pi(&self) -> Result<Self> {
        if self.mode != Mode::Full {
            return Err(Error::InvalidArgument("division by 1+π requires the full ring".into()));
        }
        let mut out = Self::zero(Mode::Full);
        let mut qs: Vec<i64> = self.terms.keys().map(|k| k.0).collect();
        qs.dedup();
        for q in qs {
            let a = self.coeff(q, 0);
            let b = self.coeff(q, 1);
            if a != b {
                return Err(Error::NotExpressible(format!("{self} is not a multiple of 1+π")));
            }
            out.add_term(q, 0, a);
        }
        Ok(out)
    }

    /// Exact division by an integer; errors if some coefficient is not divisible
    /// (full mode) or the divisor is not a power of two (collapsed mode).
    pub fn div_int(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let kr = BigRational::from_integer(k.clone());
        let mut out = Self::zero(self.mode);
        for (&(q, p), c) in &self.terms {
            let r = c / &kr;
            match self.mode {
                Mode::Full if !r.is_integer() => {
                    return Err(Error::NotExpressible(format!("{self} not divisible by {k}")))
                }
                Mode::Collapsed if !is_dyadic(&r) => {
                    return Err(Error::NotExpressible(format!("{self}/{k} is not dyadic")))
                }
                _ => {}
            }
            out.add_term(q, p, r);
        }
        Ok(out)
    }

    /// A unit of the ring: `±q^k π^e` (full) or `±2^a q^k` (collapsed).
    pub fn is_unit(&self) -> bool {
        if self.terms.len() != 1 {
            return false;
        }
        let c = self.terms.values().next().unwrap().abs();
        match self.mode {
            Mode::Full => c.is_one(),
            Mode::Collapsed => is_power_of_two(c.numer()) && is_power_of_two(c.denom()),
        }
    }

    pub fn inverse_unit(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (&(q, p), c) = self.terms.iter().next()?;
        let mut out = Self::zero(self.mode);
        out.add_term(-q, p, c.recip());
        Some(out)
    }

    /// Evaluate at rational `q` and `π = ±1`.
    pub fn eval(&self, q: &BigRational, pi: i8) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(qe, pe), c) in &self.terms {
            let mut t = c.clone();
            if qe >= 0 {
                t *= num_traits::pow(q.clone(), qe as usize);
            } else {
                t /= num_traits::pow(q.clone(), (-qe) as usize);
            }
            if pe == 1 && pi < 0 {
                t = -t;
            }
            acc += t;
        }
        acc
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Canonical `(q_exp, pi_exp, coeff)` triples.
    pub fn to_triples(&self) -> Vec<(i64, u8, BigRational)> {
        self.terms.iter().map(|(&(q, p), c)| (q, p, c.clone())).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&(q, p), c)| serde_json::json!([q, p, coeff_json(c)]))
                .collect(),
        )
    }

    pub fn from_json(mode: Mode, v: &serde_json::Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected term list".into()))?;
        let mut terms = Vec::new();
        for t in arr {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
                Error::Parse("expected [q_exp, pi_exp, coeff] triple".into())
            })?;
            let q = t[0].as_i64().ok_or_else(|| Error::Parse("q_exp".into()))?;
            let p = t[1].as_u64().ok_or_else(|| Error::Parse("pi_exp".into()))? as u8;
            let c = coeff_from_json(&t[2])?;
            terms.push((q, p, c));
        }
        Self::from_terms(mode, terms)
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    let n = n.abs();
    !n.is_zero() && (&n & (&n - BigInt::one())).is_zero()
}

fn is_dyadic(c: &BigRational) -> bool {
    is_power_of_two(c.denom())
}

pub(crate) fn coeff_json(c: &BigRational) -> serde_json::Value {
    if c.is_integer() {
        if let Some(i) = c.numer().to_i64() {
            return serde_json::json!(i);
        }
        return serde_json::json!(c.numer().to_string());
    }
    serde_json::json!(format!("{}/{}", c.numer(), c.denom()))
}

pub(crate) fn coeff_from_json(v: &serde_json::Value) -> Result<BigRational> {
    if let Some(i) = v.as_i64() {
        return Ok(BigRational::from_integer(i.into()));
    }
    let s = v.as_str().ok_or_else(|| Error::Parse(format!("bad coefficient {v}")))?;
    let parse = |s: &str| {
        s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {s}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

impl fmt::Display for GroundElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(q, p), c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match (q, p) {
                (0, 0) => String::new(),
                (0, 1) => "π".into(),
                (1, _) => format!("q{}", if p == 1 { "π" } else { "" }),
                (_, _) => format!("q^{q}{}", if p == 1 { "π" } else { "" }),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for GroundElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&GroundElem> for &GroundElem {
            type Output = GroundElem;
            fn $m(self, rhs: &GroundElem) -> GroundElem {
                self.$checked(rhs).expect("ring mode conflict")
            }
        }
        impl $tr<GroundElem> for GroundElem {
            type Output = GroundElem;
            fn $m(self, rhs: GroundElem) -> GroundElem {
                (&self).$checked(&rhs).expect("ring mode conflict")
            }
        }
        impl $tr<&GroundElem> for GroundElem {
            type Output = GroundElem;
            fn $m(self, rhs: &GroundElem) -> GroundElem {
                (&self).$checked(rhs).expect("ring mode conflict")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&GroundElem> for GroundElem {
    fn add_assign(&mut self, rhs: &GroundElem) {
        self.check_mode(rhs).expect("ring mode conflict");
        for (&(q, p), c) in &rhs.terms {
            self.add_term(q, p, c.clone());
        }
    }
}

impl SubAssign<&GroundElem> for GroundElem {
    fn sub_assign(&mut self, rhs: &GroundElem) {
        self.check_mode(rhs).expect("ring mode conflict");
        for (&(q, p), c) in &rhs.terms {
            self.add_term(q, p, -c.clone());
        }
    }
}

impl Neg for &GroundElem {
    type Output = GroundElem;
    fn neg(self) -> GroundElem {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for GroundElem {
    type Output = GroundElem;
    fn neg(self) -> GroundElem {
        (&self).neg()
    }
}

// Integer polynomials in a formal variable t, lowest degree first.
type TPoly = Vec<BigInt>;

fn tpoly_trim(mut p: TPoly) -> TPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn tpoly_mul(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    tpoly_trim(out)
}

/// Long division by a monic polynomial; returns (quotient, remainder).
fn tpoly_divmod_monic(a: &TPoly, b: &TPoly) -> (TPoly, TPoly) {
    let b = tpoly_trim(b.clone());
    assert!(b.last().is_some_and(|c| c.is_one()), "divisor must be monic");
    let mut r = tpoly_trim(a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lead = r.last().unwrap().clone();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lead * bj;
        }
        q[shift] = lead;
        r = tpoly_trim(r);
    }
    (tpoly_trim(q), r)
}

fn t_integer(n: usize) -> TPoly {
    vec![BigInt::one(); n]
}

fn t_factorial(n: usize) -> TPoly {
    (1..=n).fold(vec![BigInt::one()], |acc, i| tpoly_mul(&acc, &t_integer(i)))
}

fn specialize(p: &TPoly, c: TwistScalar, mode: Mode) -> GroundElem {
    let mut out = GroundElem::zero(mode);
    for (j, a) in p.iter().enumerate() {
        if !a.is_zero() {
            out += &c.pow(j as i64, mode).scale(a);
        }
    }
    out
}

/// `[n] = 1 + c + ... + c^{n-1}`, with `[0] = 0`.
pub fn qpi_integer(n: usize, c: TwistScalar, mode: Mode) -> GroundElem {
    specialize(&t_integer(n), c, mode)
}

pub fn qpi_factorial(n: usize, c: TwistScalar, mode: Mode) -> GroundElem {
    specialize(&t_factorial(n), c, mode)
}

/// `[n]! / ([k]! [n-k]!)`, computed by exact division of factorials in `Z[t]`
/// followed by `t ↦ c`. A nonzero remainder is reported as an internal error.
pub fn qpi_binomial(n: usize, k: usize, c: TwistScalar, mode: Mode) -> Result<GroundElem> {
    if k > n {
        return Err(Error::InvalidArgument(format!("binomial with k = {k} > n = {n}")));
    }
    let num = t_factorial(n);
    let den = tpoly_mul(&t_factorial(k), &t_factorial(n - k));
    let (quot, rem) = tpoly_divmod_monic(&num, &den);
    if !rem.is_empty() {
        return Err(Error::Internal(format!("[{n}]! not divisible by [{k}]![{}]!", n - k)));
    }
    Ok(specialize(&quot, c, mode))
}

/// Integer binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Sanity helper used in tests: gcd of all coefficients.
pub fn content(e: &GroundElem) -> BigInt {
    e.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(terms: &[(i64, u8, i64)]) -> GroundElem {
        let mut e = GroundElem::zero(Mode::Full);
        for &(q, p, c) in terms {
            e += &GroundElem::monomial(Mode::Full, q, p, c);
        }
        e
    }

    #[test]
    fn pi_squared_is_one() {
        let pi = GroundElem::pi(Mode::Full);
        assert!((&pi * &pi).is_one());
        let q = GroundElem::q(Mode::Full);
        assert!((&q * &GroundElem::monomial(Mode::Full, -1, 0, 1)).is_one());
    }

    #[test]
    fn square_of_one_plus_qpi() {
        let a = full(&[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(&a * &a, full(&[(0, 0, 1), (1, 1, 2), (2, 0, 1)]));
    }

    #[test]
    fn mode_conflict_is_reported() {
        let a = GroundElem::one(Mode::Full);
        let b = GroundElem::one(Mode::Collapsed);
        assert_eq!(a.checked_add(&b), Err(Error::RingModeConflict));
        assert_eq!(a.checked_mul(&b).unwrap_err().to_string(), "ring mode conflict");
    }

    #[test]
    fn q_integers() {
        let c11 = TwistScalar::new(1, 1);
        let c10 = TwistScalar::new(1, 0);
        assert!(qpi_integer(0, c11, Mode::Full).is_zero());
        assert_eq!(qpi_integer(2, c11, Mode::Full), full(&[(0, 0, 1), (1, 1, 1)]));
        assert_eq!(qpi_integer(3, c10, Mode::Full), full(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)]));
    }

    #[test]
    fn q_binomials() {
        let c11 = TwistScalar::new(1, 1);
        let c10 = TwistScalar::new(1, 0);
        assert!(qpi_binomial(5, 0, c11, Mode::Full).unwrap().is_one());
        assert_eq!(qpi_binomial(2, 1, c11, Mode::Full).unwrap(), full(&[(0, 0, 1), (1, 1, 1)]));
        assert_eq!(
            qpi_binomial(4, 2, c10, Mode::Full).unwrap(),
            full(&[(0, 0, 1), (1, 0, 1), (2, 0, 2), (3, 0, 1), (4, 0, 1)])
        );
        assert!(qpi_binomial(2, 3, c10, Mode::Full).is_err());
    }

    #[test]
    fn binomial_for_pure_pi_twist() {
        // c = π makes [2] a zero divisor; the formal computation still works.
        let c = TwistScalar::new(0, 1);
        let b = qpi_binomial(3, 1, c, Mode::Full).unwrap();
        assert_eq!(b, full(&[(0, 0, 2), (0, 1, 1)]));
    }

    #[test]
    fn bar_and_collapse() {
        let q = GroundElem::q(Mode::Full);
        assert_eq!(q.bar(), GroundElem::monomial(Mode::Full, -1, 0, 1));
        let a = full(&[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(a.bar(), full(&[(0, 0, 1), (-1, 1, 1)]));
        assert_eq!(a.bar().bar(), a);
        let one_pi = full(&[(0, 0, 1), (0, 1, 1)]);
        assert_eq!(one_pi.collapse_pi(), GroundElem::from_int(Mode::Collapsed, 2));
        assert!(full(&[(1, 1, 1), (1, 0, -1)]).collapse_pi().is_zero());
        assert!(one_pi.collapse_pi().halve().unwrap().is_one());
    }

    #[test]
    fn one_plus_pi_division() {
        let x = full(&[(0, 0, 3), (0, 1, 3), (2, 0, -1), (2, 1, -1)]);
        let z = x.div_one_plus_pi().unwrap();
        assert_eq!(z, full(&[(0, 0, 3), (2, 0, -1)]));
        assert!(full(&[(0, 0, 1)]).div_one_plus_pi().is_err());
    }

    #[test]
    fn units() {
        assert!(full(&[(3, 1, -1)]).is_unit());
        assert!(!full(&[(0, 0, 2)]).is_unit());
        assert!(GroundElem::from_int(Mode::Collapsed, 2).is_unit());
        assert!(!GroundElem::from_int(Mode::Collapsed, 3).is_unit());
    }

    #[test]
    fn json_round_trip() {
        let a = full(&[(-2, 1, 5), (0, 0, 1), (3, 0, -7)]);
        let j = a.to_json();
        assert_eq!(j.to_string(), "[[-2,1,5],[0,0,1],[3,0,-7]]");
        assert_eq!(GroundElem::from_json(Mode::Full, &j).unwrap(), a);
        let h = GroundElem::from_int(Mode::Collapsed, 3).halve().unwrap();
        assert_eq!(h.to_json().to_string(), "[[0,0,\"3/2\"]]");
    }

    #[test]
    fn display() {
        let a = full(&[(0, 0, 1), (1, 1, 2), (2, 0, -1)]);
        assert_eq!(a.to_string(), "1 + 2qπ - q^2");
    }
}
