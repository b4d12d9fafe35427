use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use superhopf::algebra_file::AlgebraSpec;
use superhopf::frobenius::clifford1_frobenius;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_superhopf"));
    c.env_remove("SUPERHOPF_OUT_DIR");
    c
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("superhopf-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn nil_descriptor(dir: &Path, n_max: usize, d: i64, eps: u8) -> PathBuf {
    write(dir, "nil.json", &format!(r#"{{"nilcoxeter": {{"n_max": {n_max}, "d": {d}, "eps": {eps}}}}}"#))
}

#[test]
fn verify_passes_and_reports_json() {
    let dir = scratch("verify");
    let desc = nil_descriptor(&dir, 3, 1, 1);
    let out = run(bin().arg("verify").arg(&desc).args(["--suites", "axioms,bialgebra", "--format", "json"]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = report["records"].as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["pass"] == true));
    assert!(records.iter().all(|r| r.get("elapsed").is_none()));
    let suites: Vec<&str> = records.iter().map(|r| r["suite"].as_str().unwrap()).collect();
    let first_bialgebra = suites.iter().position(|s| *s == "bialgebra").unwrap();
    assert!(suites[..first_bialgebra].iter().all(|s| *s == "axioms"));
}

#[test]
fn suite_order_does_not_depend_on_the_command_line() {
    let dir = scratch("order");
    let desc = nil_descriptor(&dir, 3, 2, 1);
    let a = run(bin().arg("verify").arg(&desc).args(["--suites", "psi,axioms", "--format", "json"]));
    let b = run(bin().arg("verify").arg(&desc).args(["--suites", "axioms,psi,axioms", "--format", "json"]));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn twist_overrides_apply() {
    let dir = scratch("twist");
    let desc = nil_descriptor(&dir, 3, 1, 0);
    let out = run(bin().arg("verify").arg(&desc).args(["--suites", "axioms", "--d", "2", "--eps", "1", "--format", "json"]));
    assert_eq!(out.status.code(), Some(0));
    let base = run(bin().arg("verify").arg(&desc).args(["--suites", "axioms", "--format", "json"]));
    assert_ne!(out.stdout, base.stdout);
}

#[test]
fn weyl_subcommand() {
    let dir = scratch("weyl");
    let out_file = dir.join("weyl.txt");
    let out = run(bin().args(["weyl", "--d", "-1", "--eps", "1", "--n-max", "4", "--out"]).arg(&out_file));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(out_file).unwrap();
    assert!(text.contains("Weyl relation"));
}

#[test]
fn usage_errors_exit_64() {
    let dir = scratch("usage");
    let desc = nil_descriptor(&dir, 3, 1, 0);
    let cases: Vec<Vec<String>> = vec![
        vec!["frobnicate".into()],
        vec!["verify".into(), desc.display().to_string(), "--suites".into(), "".into()],
        vec!["verify".into(), desc.display().to_string(), "--suites".into(), "nonsense".into()],
        vec!["verify".into(), desc.display().to_string(), "--jobs".into(), "0".into()],
        vec!["verify".into(), desc.display().to_string(), "--eps".into(), "3".into()],
        vec!["verify".into(), dir.join("missing.json").display().to_string()],
        vec!["weyl".into(), "--d".into(), "1".into(), "--eps".into(), "2".into()],
    ];
    for args in cases {
        let out = run(bin().args(&args));
        assert_eq!(out.status.code(), Some(64), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn malformed_descriptor_exits_64() {
    let dir = scratch("malformed");
    let bad = write(&dir, "bad.json", r#"{"nilcoxeter": {"n_max": 3, "d": 1, "eps": 0, "extra": 1}}"#);
    assert_eq!(run(bin().arg("verify").arg(&bad)).status.code(), Some(64));
    let junk = write(&dir, "junk.json", "not json");
    assert_eq!(run(bin().arg("build").arg(&junk)).status.code(), Some(64));
}

#[test]
fn parity_mismatch_in_spec_file_exits_64() {
    let dir = scratch("parity");
    // c odd with c·c = c puts an odd product in an odd slot of even degree.
    write(
        &dir,
        "bad.json",
        r#"{"labels": ["1", "c"], "degrees": [[0, 0], [0, 1]], "unit": [[1, 1], [0, 1]],
            "structure": [[0, 0, 0, 1, 1], [0, 1, 1, 1, 1], [1, 0, 1, 1, 1], [1, 1, 1, 1, 1]]}"#,
    );
    let desc = write(&dir, "wreath.json", r#"{"wreath": {"base": "bad.json", "n_max": 2}}"#);
    let out = run(bin().arg("build").arg(&desc));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(64), "{err}");
    assert!(err.contains("structure[3]"), "{err}");
}

#[test]
fn build_dump_and_wreath_round_trip() {
    let dir = scratch("dump");
    let f = clifford1_frobenius();
    write(&dir, "clifford.json", &AlgebraSpec::from_algebra(&f.algebra, Some(&f)).unwrap().to_json());
    let desc = write(&dir, "sergeev.json", r#"{"wreath": {"base": "clifford.json", "n_max": 3}}"#);
    let out = run(bin().arg("build").arg(&desc));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let listing = String::from_utf8(out.stdout).unwrap();
    let dims: Vec<&str> = listing.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(dims, ["1", "2", "8", "48"]);

    let dump = dir.join("dump");
    let out = run(bin().arg("build").arg(&desc).args(["--dump", "--n-max", "2", "--out"]).arg(&dump));
    assert_eq!(out.status.code(), Some(0));
    for n in 0..=2 {
        let text = std::fs::read_to_string(dump.join(format!("A{n}.json"))).unwrap();
        let spec = AlgebraSpec::parse(&text).unwrap();
        assert_eq!(spec.to_algebra().unwrap().dim(), [1, 2, 8][n]);
    }
    assert!(std::fs::read_dir(&dump).unwrap().any(|e| e.unwrap().file_name().to_string_lossy().ends_with(".module.json")));
}

#[test]
fn out_dir_from_environment() {
    let dir = scratch("env");
    let desc = nil_descriptor(&dir, 2, 1, 0);
    let out = run(bin().env("SUPERHOPF_OUT_DIR", dir.join("reports")).arg("verify").arg(&desc).args(["--suites", "axioms", "--format", "json"]));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(dir.join("reports").join("report.json").exists());
}
