//! JSON algebra and module spec files, and tower descriptors.
//!
//! An algebra spec is `{labels, degrees: [[z,par]...], unit: [[num,den]...], structure:
//! [[i,j,k,num,den]...]}` with optional `generators` and `frobenius: {trace, degree}`.
//! Rationals are `[num, den]` pairs.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{check_frobenius, FrobeniusStructure};
use crate::linalg::{SVec, SparseMat, SvAcc};
use crate::module::{Side, SuperModule};
use crate::superalgebra::{validate_algebra, Degree, SuperAlgebra, Word};
use crate::towers::Tower;
use crate::Q;

/// Largest dimension for which loading runs the full associativity audit.
const VALIDATE_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSpec {
    pub trace: Vec<[i64; 2]>,
    pub degree: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub labels: Vec<String>,
    pub degrees: Vec<[i64; 2]>,
    pub unit: Vec<[i64; 2]>,
    pub structure: Vec<[i64; 5]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<FrobeniusSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub side: String,
    pub degrees: Vec<[i64; 2]>,
    /// Basis indices of the algebra elements whose actions follow.
    pub action_basis: Vec<usize>,
    /// One list of `[row, col, num, den]` entries per element of `action_basis`.
    pub action: Vec<Vec<[i64; 4]>>,
}

fn rational(p: [i64; 2], what: &str) -> Result<Q> {
    if p[1] == 0 {
        return Err(Error::Validation(format!("{what}: zero denominator")));
    }
    Ok(Q::new(p[0].into(), p[1].into()))
}

fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::InvalidArgument(format!("{what}: {x} does not fit in 64 bits")))
}

fn pair(q: &Q, what: &str) -> Result<[i64; 2]> {
    Ok([to_i64(q.numer(), what)?, to_i64(q.denom(), what)?])
}

fn degree(d: [i64; 2], what: &str) -> Result<Degree> {
    if !(0..=1).contains(&d[1]) {
        return Err(Error::Validation(format!("{what}: parity {} is not 0 or 1", d[1])));
    }
    Ok(Degree::new(d[0], d[1] as u8))
}

fn dense(v: &[[i64; 2]], n: usize, what: &str) -> Result<SVec> {
    if v.len() != n {
        return Err(Error::Validation(format!("{what}: expected {n} entries, got {}", v.len())));
    }
    let mut out = Vec::new();
    for (i, p) in v.iter().enumerate() {
        let q = rational(*p, what)?;
        if !q.is_zero() {
            out.push((i, q));
        }
    }
    Ok(out)
}

fn dense_pairs(v: &SVec, n: usize, what: &str) -> Result<Vec<[i64; 2]>> {
    let mut out = vec![[0, 1]; n];
    for (i, q) in v {
        out[*i] = pair(q, what)?;
    }
    Ok(out)
}

/// Words for every basis element as monomials in the generators, found breadth first.
fn generator_words(a: &SuperAlgebra, gens: &[usize]) -> Result<Vec<Word>> {
    let u = a
        .unit_index()
        .ok_or_else(|| Error::Validation("generators need the unit to be a basis element".into()))?;
    let n = a.dim();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[u] = Some((Q::one(), Vec::new()));
    let mut frontier = vec![u];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &w in &frontier {
            for &g in gens {
                if let [(k, c)] = a.mul_basis(w, g).as_slice() {
                    if words[*k].is_none() {
                        let (cw, ww) = words[w].clone().expect("reached");
                        let mut word = ww;
                        word.push(g);
                        words[*k] = Some((cw / c, word));
                        next.push(*k);
                    }
                }
            }
        }
        frontier = next;
    }
    words
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| Error::Validation(format!("basis element {} is not a generator monomial", a.label(i)))))
        .collect()
}

impl AlgebraSpec {
    pub fn to_algebra(&self) -> Result<SuperAlgebra> {
        let n = self.labels.len();
        if self.degrees.len() != n {
            return Err(Error::Validation(format!("degrees: expected {n} entries, got {}", self.degrees.len())));
        }
        let deg = self
            .degrees
            .iter()
            .enumerate()
            .map(|(i, d)| degree(*d, &format!("degrees[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let unit = dense(&self.unit, n, "unit")?;
        let mut acc: Vec<SvAcc> = (0..n * n).map(|_| SvAcc::new()).collect();
        let mut seen = BTreeSet::new();
        for (r, row) in self.structure.iter().enumerate() {
            let what = format!("structure[{r}]");
            let [i, j, k] = [row[0], row[1], row[2]].map(|x| x as usize);
            if row[..3].iter().any(|&x| x < 0 || x as usize >= n) {
                return Err(Error::Validation(format!("{what}: basis index out of range")));
            }
            if !seen.insert((i, j, k)) {
                return Err(Error::Validation(format!("{what}: duplicate entry")));
            }
            if deg[i] + deg[j] != deg[k] {
                return Err(Error::Validation(format!(
                    "{what}: {}·{} has degree {:?} but {} has degree {:?}",
                    self.labels[i],
                    self.labels[j],
                    deg[i] + deg[j],
                    self.labels[k],
                    deg[k]
                )));
            }
            acc[i * n + j].add(k, rational([row[3], row[4]], &what)?);
        }
        let table = acc.into_iter().map(SvAcc::finish).collect();
        let mut a = SuperAlgebra::from_table(self.labels.clone(), deg, table, unit)?;
        let gens = match &self.generators {
            Some(g) => Some(g.clone()),
            None => a.unit_index().map(|u| (0..n).filter(|&i| i != u).collect()),
        };
        if let Some(g) = gens {
            if g.iter().any(|&x| x >= n) {
                return Err(Error::Validation("generators: basis index out of range".into()));
            }
            let words = generator_words(&a, &g)?;
            a = a.with_generators(g, words)?;
        }
        if n <= VALIDATE_DIM {
            let rep = validate_algebra(&a);
            if !rep.passed() {
                return Err(Error::Validation(format!("algebra axioms: {}", rep.violations.join("; "))));
            }
        }
        Ok(a)
    }

    pub fn from_algebra(a: &SuperAlgebra, frob: Option<&FrobeniusStructure>) -> Result<Self> {
        let n = a.dim();
        let mut structure = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in a.mul_basis(i, j) {
                    let [num, den] = pair(&c, "structure constant")?;
                    structure.push([i as i64, j as i64, k as i64, num, den]);
                }
            }
        }
        let frobenius = match frob {
            Some(f) => Some(FrobeniusSpec {
                trace: dense_pairs(&f.trace, n, "trace")?,
                degree: [f.degree.z, f.degree.par as i64],
            }),
            None => None,
        };
        Ok(AlgebraSpec {
            labels: a.labels().to_vec(),
            degrees: a.degrees().iter().map(|d| [d.z, d.par as i64]).collect(),
            unit: dense_pairs(a.unit(), n, "unit")?,
            structure,
            generators: a.generators().map(|g| g.to_vec()),
            frobenius,
        })
    }

    /// The algebra with the declared Frobenius trace.
    pub fn to_frobenius(&self) -> Result<FrobeniusStructure> {
        let a = Arc::new(self.to_algebra()?);
        let f = self
            .frobenius
            .as_ref()
            .ok_or_else(|| Error::Validation("frobenius: no trace declared".into()))?;
        let tr = dense(&f.trace, a.dim(), "frobenius.trace")?;
        check_frobenius(a, tr, degree(f.degree, "frobenius.degree")?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes") + "\n"
    }
}

impl ModuleSpec {
    pub fn from_module(m: &SuperModule) -> Result<Self> {
        let action = m
            .stored_actions()
            .iter()
            .map(|mat| {
                let mut entries = Vec::new();
                for (col, v) in mat.cols.iter().enumerate() {
                    for (row, q) in v {
                        let [num, den] = pair(q, "action entry")?;
                        entries.push([*row as i64, col as i64, num, den]);
                    }
                }
                Ok(entries)
            })
            .collect::<Result<_>>()?;
        Ok(ModuleSpec {
            side: match m.side {
                Side::Left => "left".into(),
                Side::Right => "right".into(),
            },
            degrees: m.deg.iter().map(|d| [d.z, d.par as i64]).collect(),
            action_basis: m.algebra.action_basis(),
            action,
        })
    }

    pub fn to_module(&self, algebra: Arc<SuperAlgebra>) -> Result<SuperModule> {
        let side = match self.side.as_str() {
            "left" => Side::Left,
            "right" => Side::Right,
            s => return Err(Error::Validation(format!("side: unknown value {s:?}"))),
        };
        if self.action_basis != algebra.action_basis() {
            return Err(Error::Validation("action_basis: does not match the algebra".into()));
        }
        let n = self.degrees.len();
        let deg = self
            .degrees
            .iter()
            .enumerate()
            .map(|(i, d)| degree(*d, &format!("degrees[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let mut mats = Vec::with_capacity(self.action.len());
        for (b, entries) in self.action.iter().enumerate() {
            let mut cols: Vec<SvAcc> = (0..n).map(|_| SvAcc::new()).collect();
            for e in entries {
                if e[0] < 0 || e[1] < 0 || e[0] as usize >= n || e[1] as usize >= n {
                    return Err(Error::Validation(format!("action[{b}]: index out of range")));
                }
                cols[e[1] as usize].add(e[0] as usize, rational([e[2], e[3]], &format!("action[{b}]"))?);
            }
            mats.push(SparseMat { nrows: n, cols: cols.into_iter().map(SvAcc::finish).collect() });
        }
        let m = SuperModule::new(algebra, deg, mats, side)?;
        let rep = m.validate();
        if !rep.passed() {
            return Err(Error::Validation(format!("module axioms: {}", rep.violations.join("; "))));
        }
        Ok(m)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A tower to build: a nilCoxeter tower or the wreath tower of a base algebra file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerDescriptor {
    NilCoxeter { n_max: usize, d: i64, eps: u8 },
    Wreath { base: PathBuf, n_max: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NilDesc {
    n_max: usize,
    d: i64,
    eps: u8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WreathDesc {
    base: PathBuf,
    n_max: usize,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum RawDescriptor {
    Nilcoxeter(NilDesc),
    Wreath(WreathDesc),
}

impl TowerDescriptor {
    /// Parses a descriptor; a relative `base` path is resolved against `dir`.
    pub fn parse(text: &str, dir: &Path) -> Result<Self> {
        let raw: RawDescriptor = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(match raw {
            RawDescriptor::Nilcoxeter(n) => {
                if n.eps > 1 {
                    return Err(Error::Validation(format!("nilcoxeter.eps: {} is not 0 or 1", n.eps)));
                }
                TowerDescriptor::NilCoxeter { n_max: n.n_max, d: n.d, eps: n.eps }
            }
            RawDescriptor::Wreath(w) => {
                let base = if w.base.is_relative() { dir.join(w.base) } else { w.base };
                TowerDescriptor::Wreath { base, n_max: w.n_max }
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn n_max(&self) -> usize {
        match self {
            TowerDescriptor::NilCoxeter { n_max, .. } | TowerDescriptor::Wreath { n_max, .. } => *n_max,
        }
    }

    pub fn with_n_max(mut self, n: usize) -> Self {
        match &mut self {
            TowerDescriptor::NilCoxeter { n_max, .. } | TowerDescriptor::Wreath { n_max, .. } => *n_max = n,
        }
        self
    }

    pub fn build(&self) -> Result<Tower> {
        match self {
            TowerDescriptor::NilCoxeter { n_max, d, eps } => Tower::nilcoxeter(*n_max, *d, *eps),
            TowerDescriptor::Wreath { base, n_max } => {
                let text = std::fs::read_to_string(base).map_err(|e| Error::Parse(format!("{}: {e}", base.display())))?;
                let f = AlgebraSpec::parse(&text)?.to_frobenius()?;
                Tower::wreath(Arc::new(f), *n_max)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::clifford1_frobenius;

    #[test]
    fn clifford_round_trip() {
        let f = clifford1_frobenius();
        let spec = AlgebraSpec::from_algebra(&f.algebra, Some(&f)).unwrap();
        let back = AlgebraSpec::parse(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        let g = back.to_frobenius().unwrap();
        assert_eq!(g.algebra.table(), f.algebra.table());
        assert_eq!(g.nakayama.images, f.nakayama.images);
    }

    #[test]
    fn parity_mismatch_is_rejected() {
        let text = r#"{"labels":["1","c"],"degrees":[[0,0],[0,1]],"unit":[[1,1],[0,1]],
            "structure":[[0,0,0,1,1],[0,1,1,1,1],[1,0,1,1,1],[1,1,1,1,1]]}"#;
        let err = AlgebraSpec::parse(text).unwrap().to_algebra().unwrap_err();
        assert!(matches!(err, Error::Validation(ref s) if s.contains("structure[3]")), "{err}");
    }

    #[test]
    fn descriptors() {
        let d = TowerDescriptor::parse(r#"{"nilcoxeter": {"n_max": 4, "d": 1, "eps": 1}}"#, Path::new(".")).unwrap();
        assert_eq!(d, TowerDescriptor::NilCoxeter { n_max: 4, d: 1, eps: 1 });
        assert_eq!(d.build().unwrap().n_max, 4);
        let w = TowerDescriptor::parse(r#"{"wreath": {"base": "cl.json", "n_max": 3}}"#, Path::new("/tmp/x")).unwrap();
        assert_eq!(w, TowerDescriptor::Wreath { base: PathBuf::from("/tmp/x/cl.json"), n_max: 3 });
        assert!(TowerDescriptor::parse(r#"{"nilcoxeter": {"n_max": 4}}"#, Path::new(".")).is_err());
    }
}
