//! Acceptance criteria 1–14, one PASS/FAIL line each. Expected values come from the small
//! oracles below, written independently of the library's own q-integer code.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use superhopf::algebra_file::AlgebraSpec;
use superhopf::frobenius::{check_dual_iso, clifford1_frobenius, frobenius_tensor, nakayama, FrobeniusStructure};
use superhopf::grothendieck::{self as gr, GSide, Groth};
use superhopf::heisenberg::{self as hz, Heisenberg};
use superhopf::linalg::{SVec, SparseMat};
use superhopf::report::Record;
use superhopf::superalgebra::validate_algebra;
use superhopf::towers::nilcoxeter::build_nilcoxeter;
use superhopf::towers::{checks, Tower};
use superhopf::{GroundElem, Mode, Q};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

// ---- oracles -------------------------------------------------------------------------

fn c_pow(d: i64, eps: u8, k: i64) -> GroundElem {
    GroundElem::monomial(Mode::Full, d * k, ((eps as i64 * k).rem_euclid(2)) as u8, 1)
}

/// `[k] = 1 + c + ⋯ + c^{k−1}`.
fn cint(d: i64, eps: u8, k: usize) -> GroundElem {
    let mut s = GroundElem::zero(Mode::Full);
    for j in 0..k {
        s += &c_pow(d, eps, j as i64);
    }
    s
}

fn cfact(d: i64, eps: u8, n: usize) -> GroundElem {
    (1..=n).fold(GroundElem::one(Mode::Full), |acc, k| &acc * &cint(d, eps, k))
}

/// Pascal rule `qbin(n,k) = qbin(n−1,k−1) + c^k qbin(n−1,k)`.
fn qbin(d: i64, eps: u8, n: usize, k: usize) -> GroundElem {
    if k > n {
        return GroundElem::zero(Mode::Full);
    }
    if k == 0 || k == n {
        return GroundElem::one(Mode::Full);
    }
    &qbin(d, eps, n - 1, k - 1) + &(&c_pow(d, eps, k as i64) * &qbin(d, eps, n - 1, k))
}

const TWISTS: [(i64, u8); 3] = [(1, 0), (1, 1), (2, 1)];

fn failures(recs: &[Record]) -> Outcome {
    let bad: Vec<String> = recs
        .iter()
        .filter(|r| !r.pass)
        .take(5)
        .map(|r| format!("{}/{} {:?}", r.suite, r.check, r.indices))
        .collect();
    if bad.is_empty() {
        if recs.is_empty() {
            Err("no checks ran".into())
        } else {
            Ok(())
        }
    } else {
        Err(bad.join("; "))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T>(r: superhopf::Result<T>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn sergeev(n_max: usize) -> Result<Tower, String> {
    e(Tower::wreath(Arc::new(clifford1_frobenius()), n_max))
}

// ---- criteria ------------------------------------------------------------------------

fn c1() -> Outcome {
    for (d, eps) in TWISTS {
        let t = e(Tower::nilcoxeter(6, d, eps))?;
        for n in 0..=6 {
            let g = t.algebra(n).graded_dim(Mode::Full);
            ensure(g == cfact(d, eps, n), || format!("grdim N_{n}^({d},{eps}) = {g}"))?;
        }
    }
    Ok(())
}

fn c2() -> Outcome {
    for d in [1, 2] {
        for n in 0..=5 {
            let nc = e(build_nilcoxeter(n, d, 1))?;
            let rep = validate_algebra(&nc.algebra);
            ensure(rep.passed(), || format!("N_{n}^({d},1): {:?}", rep.violations))?;
            if n == 5 {
                ensure(rep.checked >= 120 * 120 * 120, || format!("only {} checks at n = 5", rep.checked))?;
            }
        }
    }
    Ok(())
}

fn c3() -> Outcome {
    for (d, eps) in TWISTS {
        let t = e(Tower::nilcoxeter(5, d, eps))?;
        for n in 0..=5 {
            failures(&e(checks::frobenius_checks(&t, n))?)?;
            let psi = e(t.psi(n))?;
            let nc = t.level(n).nil.as_ref().expect("nilCoxeter level");
            for i in 1..n {
                let img = &psi.images[nc.generator(i)];
                ensure(*img == vec![(nc.generator(n - i), Q::from_integer(1.into()))], || {
                    format!("ψ_{n}(u_{i}) = {img:?}")
                })?;
            }
        }
    }
    let t = sergeev(3)?;
    for n in 0..=3 {
        failures(&e(checks::frobenius_checks(&t, n))?)?;
        let psi = e(t.psi(n))?;
        let w = t.level(n).wreath.as_ref().expect("wreath level");
        for i in 1..n {
            let mut s: Vec<usize> = (0..n).collect();
            s.swap(i - 1, i);
            let mut s2: Vec<usize> = (0..n).collect();
            s2.swap(n - i - 1, n - i);
            let img = &psi.images[w.perm_element(&s)];
            ensure(*img == vec![(w.perm_element(&s2), Q::from_integer((-1).into()))], || {
                format!("Sergeev ψ_{n}(s_{i}) = {img:?}")
            })?;
        }
        for j in 0..n {
            let mut bs = vec![0; n];
            bs[j] = 1;
            let mut rev = vec![0; n];
            rev[n - 1 - j] = 1;
            let img = &psi.images[w.index(&bs, 0)];
            ensure(*img == vec![(w.index(&rev, 0), Q::from_integer(1.into()))], || {
                format!("Sergeev ψ_{n}(c_{}) = {img:?}", j + 1)
            })?;
        }
    }
    Ok(())
}

fn psi_tensor_oracle(f1: &FrobeniusStructure, f2: &FrobeniusStructure) -> SparseMat {
    let n2 = f2.algebra.dim();
    let n = f1.algebra.dim() * n2;
    let cols = (0..n)
        .map(|x| {
            let mut v: SVec = Vec::new();
            for (i, a) in &f1.nakayama.images[x / n2] {
                for (j, b) in &f2.nakayama.images[x % n2] {
                    v.push((i * n2 + j, a * b));
                }
            }
            v.sort_by_key(|t| t.0);
            v
        })
        .collect();
    SparseMat { nrows: n, cols }
}

fn c4() -> Outcome {
    let t = e(Tower::nilcoxeter(3, 1, 1))?;
    let pairs = [
        (e(t.frobenius(2))?, e(t.frobenius(3))?, "N2⊗N3"),
        (clifford1_frobenius(), clifford1_frobenius(), "Cl⊗Cl"),
    ];
    for (f1, f2, name) in pairs {
        let f = e(frobenius_tensor(&f1, &f2))?;
        let got = nakayama(&f);
        ensure(got == psi_tensor_oracle(&f1, &f2), || format!("{name}: Nakayama of the tensor product differs"))?;
    }
    Ok(())
}

fn c5() -> Outcome {
    for (d, eps) in TWISTS {
        let t = e(Tower::nilcoxeter(4, d, eps))?;
        for n in 0..=4 {
            let rep = check_dual_iso(&e(t.frobenius(n))?, None);
            ensure(rep.passed(), || format!("N_{n}^({d},{eps}): {rep:?}"))?;
        }
    }
    let t = sergeev(2)?;
    for n in 0..=2 {
        let rep = check_dual_iso(&e(t.frobenius(n))?, None);
        ensure(rep.passed(), || format!("Sergeev {n}: {rep:?}"))?;
    }
    Ok(())
}

fn groth(n: usize, d: i64, eps: u8) -> Result<Arc<Groth>, String> {
    let t = Arc::new(e(Tower::nilcoxeter(n, d, eps))?);
    Ok(Arc::new(e(Groth::new(t))?))
}

fn c6() -> Outcome {
    for (d, eps) in TWISTS {
        let g = groth(6, d, eps)?;
        failures(&e(gr::hopf_pairing(&g, 6, (0, 1)))?)?;
        failures(&e(gr::twisted_bialgebra(&g, GSide::K, 6))?)?;
        failures(&e(gr::twisted_bialgebra(&g, GSide::G, 6))?)?;
    }
    Ok(())
}

fn c7() -> Outcome {
    for (d, eps) in TWISTS {
        let g = groth(6, d, eps)?;
        let recs = e(gr::adjunction(&g, 6))?;
        ensure(recs.len() >= 28, || format!("only {} adjunction checks", recs.len()))?;
        failures(&recs)?;
    }
    Ok(())
}

fn c8() -> Outcome {
    for (d, eps) in TWISTS {
        let t = e(Tower::nilcoxeter(5, d, eps))?;
        failures(&e(checks::s2_suite(&t, 5))?)?;
    }
    failures(&e(checks::s2_suite(&sergeev(3)?, 3))?)
}

fn c9() -> Outcome {
    for (d, eps) in TWISTS {
        let g = groth(6, d, eps)?;
        for n in 0..=6 {
            let dx = e(g.delta_basis(GSide::K, (n, 0)))?;
            let dy = e(g.delta_basis(GSide::G, (n, 0)))?;
            ensure(dx.terms.len() == n + 1 && dy.terms.len() == n + 1, || format!("Δ at level {n} has extra terms"))?;
            for k in 0..=n {
                // Classes with q^n[P] = [P{n}] carry the conjugate coefficients.
                let cx = dx.coeff((k, 0), (n - k, 0)).bar();
                ensure(cx == qbin(d, eps, n, k), || format!("Δ(x^{n}) at k = {k}: {cx}"))?;
                let cy = dy.coeff((k, 0), (n - k, 0));
                ensure(cy.is_one(), || format!("Δ(y_{n}) at k = {k}: {cy}"))?;
            }
        }
    }
    Ok(())
}

fn c10() -> Outcome {
    for (d, eps) in [(1, 0), (1, 1), (2, 1), (0, 0)] {
        let h = e(Heisenberg::for_tower(groth(8, d, eps)?))?;
        let recs = e(hz::weyl_check(&h, 8))?;
        failures(&recs)?;
        ensure(recs.iter().any(|r| r.check == "Weyl relation as operators"), || "no operator check".into())?;
        ensure(recs.iter().any(|r| r.check == "Weyl relation in h"), || "no element check".into())?;
        // x*(y₁ⁿ) = [n] y₁ⁿ⁻¹ against the oracle, in the y_n basis: y₁ⁿ = [n]! y_n.
        for r in recs.iter().filter(|r| r.check == "quantum derivative of y^n") {
            let n = r.indices[0] as usize;
            if n == 0 {
                continue;
            }
            let expect = &cint(d, eps, n) * &cfact(d, eps, n - 1);
            let want = serde_json::json!([{"level": n - 1, "label": format!("L{}", n - 1), "coeff": expect.to_json()}]);
            ensure(r.lhs == want, || format!("x*(y^{n}) = {}", r.lhs))?;
        }
    }
    Ok(())
}

fn c11() -> Outcome {
    for eps in [0, 1] {
        let h = e(Heisenberg::for_tower(groth(5, 1, eps)?))?;
        let recs = e(hz::action_compat(&h, 5))?;
        ensure(recs.iter().any(|r| r.check == "module law"), || "no module law checks".into())?;
        ensure(recs.iter().any(|r| r.check == "smash product associative"), || "no associativity checks".into())?;
        failures(&recs)?;
    }
    for eps in [0, 1] {
        let h = e(Heisenberg::for_tower(groth(6, 1, eps)?))?;
        let recs = e(hz::faithfulness(&h, 3))?;
        for r in &recs {
            ensure(r.lhs == serde_json::json!(16), || format!("rank {} of 16", r.lhs))?;
        }
        failures(&recs)?;
    }
    Ok(())
}

fn c12() -> Outcome {
    let t = e(Tower::nilcoxeter(6, 1, 0))?;
    let recs = e(hz::categorified_weyl(&t, 5, "weyl"))?;
    ensure(recs.len() == 12, || format!("{} checks instead of 12", recs.len()))?;
    failures(&recs)?;
    // Oracle: Ind P_n = P_{n+1} and Ind L_n has graded dimension [n+1].
    for r in &recs {
        let n = r.indices[0] as usize;
        let want = if r.check.contains('P') { cfact(1, 0, n + 1) } else { cint(1, 0, n + 1) };
        ensure(r.lhs == want.to_json(), || format!("{} at {n}: {}", r.check, r.lhs))?;
    }
    Ok(())
}

fn c13() -> Outcome {
    let g = e(Groth::new(Arc::new(sergeev(1)?)))?;
    let recs = e(gr::type_q_pairing(&g))?;
    failures(&recs)?;
    let one_plus_pi = &GroundElem::one(Mode::Full) + &GroundElem::pi(Mode::Full);
    let full = recs.iter().find(|r| r.check == "projective against simple, full ring").ok_or("missing full-ring check")?;
    ensure(full.lhs == one_plus_pi.to_json(), || format!("⟨P,V⟩ = {}", full.lhs))?;
    let two = GroundElem::from_int(Mode::Collapsed, 2);
    let coll = recs.iter().find(|r| r.check == "projective against simple, collapsed ring").ok_or("missing collapsed check")?;
    ensure(coll.lhs == two.to_json(), || format!("collapsed ⟨P,V⟩ = {}", coll.lhs))?;
    ensure(recs.iter().any(|r| r.check == "collapsed division by 2" && r.pass), || "no exact halving".into())
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("superhopf-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn c14() -> Outcome {
    let dir = scratch_dir();
    let f = clifford1_frobenius();
    let spec = e(AlgebraSpec::from_algebra(&f.algebra, Some(&f)))?;
    std::fs::write(dir.join("clifford.json"), spec.to_json()).map_err(|x| x.to_string())?;
    let descriptors = [
        ("nil.json", r#"{"nilcoxeter": {"n_max": 4, "d": 1, "eps": 1}}"#),
        ("sergeev.json", r#"{"wreath": {"base": "clifford.json", "n_max": 3}}"#),
    ];
    let bin = env!("CARGO_BIN_EXE_superhopf");
    for (name, text) in descriptors {
        let desc = dir.join(name);
        std::fs::write(&desc, text).map_err(|x| x.to_string())?;
        let mut outputs = Vec::new();
        for jobs in ["1", "4"] {
            let out = dir.join(format!("{name}.{jobs}.report.json"));
            let status = Command::new(bin)
                .arg("verify")
                .arg(&desc)
                .args(["--format", "json", "--jobs", jobs, "--out"])
                .arg(&out)
                .status()
                .map_err(|x| x.to_string())?;
            ensure(status.code() == Some(0), || format!("{name} --jobs {jobs}: exit {status}"))?;
            outputs.push(std::fs::read(&out).map_err(|x| x.to_string())?);
        }
        ensure(!outputs[0].is_empty() && outputs[0] == outputs[1], || format!("{name}: reports differ across --jobs"))?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("graded dimension of N_n is [n]!", Duration::from_secs(10), c1),
        ("cocycle coherence of N_n^(d,1)", Duration::from_secs(120), c2),
        ("Frobenius structures and Nakayama closed forms", Duration::from_secs(60), c3),
        ("Nakayama automorphism of tensor products", Duration::from_secs(5), c4),
        ("dual bimodule isomorphism", Duration::from_secs(30), c5),
        ("twisted Hopf pairing and twisted bialgebra", Duration::from_secs(60), c6),
        ("induction-restriction adjunction", Duration::from_secs(60), c7),
        ("Mackey dimension identity and signs", Duration::from_secs(120), c8),
        ("coproducts of x^n and y_n", Duration::from_secs(30), c9),
        ("quantum Weyl relation", Duration::from_secs(10), c10),
        ("Fock module law, smash associativity, faithfulness", Duration::from_secs(120), c11),
        ("categorified Weyl relation", Duration::from_secs(60), c12),
        ("type Q pairing", Duration::from_secs(1), c13),
        ("deterministic reports across --jobs", Duration::from_secs(600), c14),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        if only.is_some_and(|o| o != k) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(took <= *budget, || format!("took {:.1}s, budget {}s", took.as_secs_f64(), budget.as_secs()))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {k:>2}: {name} ({:.2}s)", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {k:>2}: {name} ({:.2}s): {msg}", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
