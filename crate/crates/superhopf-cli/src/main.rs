//! `superhopf`: build towers, run verification suites, dump algebra spec files.
//!
//! Exit codes: 0 all checks passed, 1 some check failed, 2 internal error, 64 usage or
//! input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use superhopf::algebra_file::{AlgebraSpec, ModuleSpec, TowerDescriptor};
use superhopf::report::Report;
use superhopf::suites::{run_suites, RunConfig, Suite};
use superhopf::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Directory for reports and dumps when `--out` is not given.
const OUT_DIR_ENV: &str = "SUPERHOPF_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "superhopf", version, about = "Verify towers of graded superalgebras and their twisted Heisenberg doubles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites on a tower descriptor.
    Verify {
        descriptor: PathBuf,
        /// Comma-separated suites; all by default.
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<String>>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override d of a nilCoxeter descriptor.
        #[arg(long)]
        d: Option<i64>,
        /// Override ε of a nilCoxeter descriptor.
        #[arg(long)]
        eps: Option<u8>,
        /// Also check the categorified Weyl identity with shift {d, ε} for other twists.
        #[arg(long)]
        extrapolated_shift: bool,
    },
    /// Quantum Weyl relation on a nilCoxeter tower.
    Weyl {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        eps: u8,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a tower and write its algebras and declared modules as spec files.
    Build {
        descriptor: PathBuf,
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Validation(_) | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn out_path(out: Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    out.or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(default_name)))
}

fn emit(report: &Report, format: Format, out: Option<PathBuf>) -> Result<u8, Failure> {
    let (text, name) = match format {
        Format::Json => (report.to_json(), "report.json"),
        Format::Text => (report.to_text(), "report.txt"),
    };
    match out_path(out, name) {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
            }
            fs::write(&p, text).map_err(|e| io_err(&p, e))?;
        }
        None => print!("{text}"),
    }
    let s = &report.summary;
    eprintln!("{} checks, {} passed, {} failed", s.total, s.passed, s.failed);
    Ok(if report.all_passed() { 0 } else { EXIT_FAIL })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify { descriptor, suites, n_max, jobs, format, out, d, eps, extrapolated_shift } => {
            let mut tower = TowerDescriptor::load(&descriptor)?;
            if let Some(n) = n_max {
                tower = tower.with_n_max(n);
            }
            let suites = match suites {
                None => Suite::ALL.to_vec(),
                Some(names) => names
                    .iter()
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<Suite>())
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let twist = match (d, eps, &tower) {
                (None, None, _) => None,
                (d, eps, TowerDescriptor::NilCoxeter { d: d0, eps: e0, .. }) => Some((d.unwrap_or(*d0), eps.unwrap_or(*e0))),
                _ => return Err(Failure::Usage("--d/--eps apply to nilCoxeter descriptors only".into())),
            };
            if twist.is_some_and(|(_, e)| e > 1) {
                return Err(Failure::Usage("--eps must be 0 or 1".into()));
            }
            let cfg = RunConfig { tower, suites, twist, jobs, extrapolated_shift };
            emit(&run_suites(&cfg)?, format, out)
        }
        Command::Weyl { d, eps, n_max, format, out } => {
            if eps > 1 {
                return Err(Failure::Usage("--eps must be 0 or 1".into()));
            }
            let cfg = RunConfig::new(TowerDescriptor::NilCoxeter { n_max, d, eps }, vec![Suite::Weyl]);
            emit(&run_suites(&cfg)?, format, out)
        }
        Command::Build { descriptor, dump, n_max, out } => {
            let mut desc = TowerDescriptor::load(&descriptor)?;
            if let Some(n) = n_max {
                desc = desc.with_n_max(n);
            }
            let tower = desc.build()?;
            if !dump {
                for n in 0..=tower.n_max {
                    println!("A{n}: dimension {}", tower.algebra(n).dim());
                }
                return Ok(0);
            }
            let dir = out
                .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("superhopf-dump"));
            fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
            for n in 0..=tower.n_max {
                let frob = tower.frobenius(n).ok();
                let spec = AlgebraSpec::from_algebra(tower.algebra(n), frob.as_ref())?;
                let p = dir.join(format!("A{n}.json"));
                fs::write(&p, spec.to_json()).map_err(|e| io_err(&p, e))?;
                for m in tower.projectives(n).into_iter().chain(tower.simples(n)) {
                    let spec = ModuleSpec::from_module(&m.module)?;
                    let p = dir.join(format!("{}.module.json", m.label));
                    let text = serde_json::to_string(&spec).expect("module spec serializes") + "\n";
                    fs::write(&p, text).map_err(|e| io_err(&p, e))?;
                }
            }
            eprintln!("wrote levels 0..={} to {}", tower.n_max, dir.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
