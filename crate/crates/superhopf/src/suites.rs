//! Verification suites over a tower, run in a fixed order so that reports are reproducible
//! for any degree of parallelism.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use crate::algebra_file::TowerDescriptor;
use crate::error::{Error, Result};
use crate::grothendieck::{self as gr, GSide, Groth};
use crate::heisenberg::{self as hz, Heisenberg};
use crate::report::{Record, Report};
use crate::towers::{checks, Tower, TowerKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Axioms,
    Frobenius,
    Bialgebra,
    Pairing,
    Adjunction,
    Psi,
    S2,
    Weyl,
    Fock,
    Faithfulness,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Axioms,
        Suite::Frobenius,
        Suite::Bialgebra,
        Suite::Pairing,
        Suite::Adjunction,
        Suite::Psi,
        Suite::S2,
        Suite::Weyl,
        Suite::Fock,
        Suite::Faithfulness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Frobenius => "frobenius",
            Suite::Bialgebra => "bialgebra",
            Suite::Pairing => "pairing",
            Suite::Adjunction => "adjunction",
            Suite::Psi => "psi",
            Suite::S2 => "S2",
            Suite::Weyl => "weyl",
            Suite::Fock => "fock",
            Suite::Faithfulness => "faithfulness",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tower: TowerDescriptor,
    pub suites: Vec<Suite>,
    /// Replaces `(d, ε)` of a nilCoxeter descriptor.
    pub twist: Option<(i64, u8)>,
    pub jobs: usize,
    /// Also check the categorified Weyl identity with the shift `{d, ε}` for towers other
    /// than `d = 1, ε = 0`.
    pub extrapolated_shift: bool,
}

impl RunConfig {
    pub fn new(tower: TowerDescriptor, suites: Vec<Suite>) -> Self {
        RunConfig { tower, suites, twist: None, jobs: 1, extrapolated_shift: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::InvalidArgument("no suites selected".into()));
        }
        if self.tower.n_max() < 1 {
            return Err(Error::InvalidArgument("n_max must be at least 1".into()));
        }
        if self.jobs < 1 {
            return Err(Error::InvalidArgument("jobs must be at least 1".into()));
        }
        if self.twist.is_some() && !matches!(self.tower, TowerDescriptor::NilCoxeter { .. }) {
            return Err(Error::InvalidArgument("twist overrides apply to nilCoxeter towers only".into()));
        }
        Ok(())
    }

    fn descriptor(&self) -> TowerDescriptor {
        match (&self.tower, self.twist) {
            (TowerDescriptor::NilCoxeter { n_max, .. }, Some((d, eps))) => TowerDescriptor::NilCoxeter { n_max: *n_max, d, eps },
            (t, _) => t.clone(),
        }
    }
}

/// Highest level for the exhaustive Frobenius checks.
const FROBENIUS_DIM: usize = 720;
/// Highest level for the five-term regular action identity.
const GENERAL_RELATION_LEVEL: usize = 4;
/// Highest level for the categorified Weyl identity.
const CATEGORIFIED_LEVEL: usize = 5;

struct Ctx {
    tower: Arc<Tower>,
    groth: Option<Arc<Groth>>,
    heis: Option<Heisenberg>,
}

impl Ctx {
    fn groth(&mut self) -> Result<Arc<Groth>> {
        if self.groth.is_none() {
            self.groth = Some(Arc::new(Groth::new(self.tower.clone())?));
        }
        Ok(self.groth.clone().expect("just built"))
    }

    fn heis(&mut self) -> Result<&Heisenberg> {
        if self.heis.is_none() {
            let g = self.groth()?;
            self.heis = Some(Heisenberg::for_tower(g)?);
        }
        Ok(self.heis.as_ref().expect("just built"))
    }
}

fn run_suite(ctx: &mut Ctx, suite: Suite, cfg: &RunConfig) -> Result<Vec<Record>> {
    let t = ctx.tower.clone();
    let n = t.n_max;
    let top = t.declared_max;
    let nil = t.is_nilcoxeter();
    Ok(match suite {
        Suite::Axioms => {
            let mut out = checks::axioms(&t)?;
            if nil {
                out.extend((0..=n).map(|k| checks::grdim_factorial(&t, k)));
            }
            out
        }
        Suite::Frobenius => {
            let mut out = Vec::new();
            for k in 0..=n {
                if t.algebra(k).dim() > FROBENIUS_DIM {
                    break;
                }
                out.extend(checks::frobenius_checks(&t, k)?);
            }
            out
        }
        Suite::Bialgebra => {
            let g = ctx.groth()?;
            let mut out = gr::twisted_bialgebra(&g, GSide::K, top)?;
            out.extend(gr::twisted_bialgebra(&g, GSide::G, top)?);
            if nil {
                out.extend(gr::nilcoxeter_formulas(&g, top)?);
            }
            out
        }
        Suite::Pairing => {
            let g = ctx.groth()?;
            let mut out = Vec::new();
            for k in 0..=top {
                out.push(checks::ta4(&t, k)?);
            }
            out.extend(gr::hopf_pairing(&g, top, t.gamma)?);
            if let TowerKind::Wreath { .. } = t.kind {
                out.extend(gr::type_q_pairing(&g)?);
            }
            out
        }
        Suite::Adjunction => gr::adjunction(&*ctx.groth()?, n)?,
        Suite::Psi => gr::psi_invariance(&*ctx.groth()?, top)?,
        Suite::S2 => checks::s2_suite(&t, n)?,
        Suite::Weyl => {
            let mut out = Vec::new();
            if nil {
                out.extend(hz::weyl_check(ctx.heis()?, top)?);
                let standard = matches!(t.kind, TowerKind::NilCoxeter { d: 1, eps: 0 });
                if standard {
                    out.extend(hz::categorified_weyl(&t, (n - 1).min(CATEGORIFIED_LEVEL), "weyl")?);
                } else if cfg.extrapolated_shift {
                    out.extend(hz::categorified_weyl(&t, (n - 1).min(CATEGORIFIED_LEVEL), "weyl-extrapolated")?);
                }
            }
            out
        }
        Suite::Fock => {
            let h = ctx.heis()?;
            let mut out = hz::twist_checks(h, top)?;
            out.extend(hz::action_compat(h, top)?);
            out.extend(hz::general_relation(h, top.min(GENERAL_RELATION_LEVEL))?);
            if nil {
                out.extend(hz::pj_invariance(h, top)?);
            }
            out.extend(hz::action_adjoint(h, top)?);
            out
        }
        Suite::Faithfulness => hz::faithfulness(ctx.heis()?, top / 2)?,
    })
}

/// Builds the tower and runs the selected suites in the canonical suite order.
pub fn run_suites(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| {
        let tower = Arc::new(cfg.descriptor().build()?);
        let mut ctx = Ctx { tower, groth: None, heis: None };
        let mut suites = cfg.suites.clone();
        suites.sort();
        suites.dedup();
        let mut records = Vec::new();
        for s in suites {
            let start = Instant::now();
            let recs = run_suite(&mut ctx, s, cfg)?;
            let per = start.elapsed() / recs.len().max(1) as u32;
            records.extend(recs.into_iter().map(|r| r.timed(per)));
        }
        Ok(Report::new(records))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilcoxeter_all_suites() {
        let cfg = RunConfig::new(TowerDescriptor::NilCoxeter { n_max: 3, d: 1, eps: 1 }, Suite::ALL.to_vec());
        let r = run_suites(&cfg).unwrap();
        let failed: Vec<_> = r.records.iter().filter(|r| !r.pass).map(|r| (&r.suite, &r.check, &r.indices)).collect();
        assert!(failed.is_empty(), "{failed:?}");
        for s in Suite::ALL {
            assert!(r.records.iter().any(|x| x.suite == s.name() || (s == Suite::Weyl && x.suite == "weyl")), "{}", s.name());
        }
    }

    #[test]
    fn empty_suites_rejected() {
        let cfg = RunConfig::new(TowerDescriptor::NilCoxeter { n_max: 3, d: 1, eps: 0 }, Vec::new());
        assert!(matches!(run_suites(&cfg), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
