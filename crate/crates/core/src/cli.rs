//! The `liecomm` command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input, 2 solver failure (error name on
//! standard error), 3 certificate verification failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::algebra::{su, AlgebraElement};
use crate::cert::{Certificate, ConfigEcho, Dec, Mat};
use crate::error::Error;
use crate::group::GroupElement;
use crate::numkit::{self, CMatrix};
use crate::rootsys::{
    compact_form_from_roots, fourier_orthogonal_torus, frame_torus, orthogonal_torus_for, CartanType,
    RootSystemPresentation, UnitaryFrame,
};
use crate::solver::{
    decompose_algebra, decompose_group, measure_openness, random_target, AlgebraConfig, GroupConfig, Level,
    OpennessConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "LIECOMM_TOL";

#[derive(Debug, Parser)]
#[command(name = "liecomm", version, about = "Small commutator decompositions in su(n) and SU(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose a target as a commutator and write a certificate.
    Decompose(DecomposeArgs),
    /// Re-verify a certificate from its witnesses.
    Verify {
        cert: PathBuf,
    },
    /// Build a maximal torus orthogonal to a reference torus.
    OrthTorus(TorusArgs),
    /// Measure witness size against target size over random targets.
    Measure(MeasureArgs),
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long, default_value = "algebra")]
    level: Level,
    #[arg(long, default_value = "su")]
    group: String,
    #[arg(long)]
    n: usize,
    /// JSON file `{"matrix": [[[re, im], …], …]}`.
    #[arg(long, conflicts_with = "random")]
    target: Option<PathBuf>,
    #[arg(long, requires = "eps")]
    random: bool,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct TorusArgs {
    #[arg(long = "type", requires = "rank", conflicts_with = "group")]
    cartan_type: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, requires = "n")]
    group: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Reference frame as a JSON matrix file; defaults to the standard frame.
    #[arg(long, requires = "group")]
    frame: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    #[arg(long, default_value = "algebra")]
    level: Level,
    #[arg(long, default_value = "su")]
    group: String,
    #[arg(long)]
    n: usize,
    /// Comma separated, strictly descending.
    #[arg(long, value_delimiter = ',', required = true)]
    eps: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0: all cores). The report does not depend on it.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// JSON report; the CSV goes next to it unless `--csv` is given.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
}

/// Outcome of a subcommand: exit code plus a message for standard error.
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn malformed(message: impl Into<String>) -> Self {
        Exit {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }

    fn solver(e: &Error) -> Self {
        let stage = e.stage().map(|s| format!(" [stage {s}]")).unwrap_or_default();
        Exit {
            code: EXIT_SOLVER,
            message: format!("{}{stage}: {e}", e.name()),
        }
    }
}

type CmdResult = std::result::Result<(), Exit>;

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify { cert } => cmd_verify(&cert),
        Command::OrthTorus(a) => cmd_orth_torus(a),
        Command::Measure(a) => cmd_measure(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(exit) => {
            eprintln!("{}", exit.message);
            exit.code
        }
    }
}

fn tolerance(flag: Option<f64>, default: f64) -> std::result::Result<f64, Exit> {
    let tol = match (flag, std::env::var(TOL_ENV)) {
        (Some(t), _) => t,
        (None, Ok(v)) => v
            .trim()
            .parse()
            .map_err(|_| Exit::malformed(format!("{TOL_ENV}={v:?} is not a number")))?,
        (None, Err(_)) => default,
    };
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Exit::malformed(format!("tolerance must be positive, got {tol}")))
    }
}

fn require_su(group: &str, n: usize) -> CmdResult {
    if group != "su" {
        return Err(Exit::malformed(format!("unsupported group {group:?}; only su is available")));
    }
    if n < 2 {
        return Err(Exit::malformed("--n must be at least 2"));
    }
    Ok(())
}

#[derive(Deserialize)]
struct MatrixFile {
    matrix: Mat,
}

fn read_matrix(path: &Path, n: usize) -> std::result::Result<CMatrix, Exit> {
    let text = fs::read_to_string(path).map_err(|e| Exit::malformed(format!("{}: {e}", path.display())))?;
    let file: MatrixFile =
        serde_json::from_str(&text).map_err(|e| Exit::malformed(format!("{}: {e}", path.display())))?;
    let m = file.matrix.0;
    if m.nrows() != n || m.ncols() != n {
        return Err(Exit::malformed(format!(
            "{}: matrix is {}x{}, expected {n}x{n}",
            path.display(),
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m)
}

fn write_output(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Exit::malformed(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_decompose(a: DecomposeArgs) -> CmdResult {
    require_su(&a.group, a.n)?;
    if a.target.is_none() && !a.random {
        return Err(Exit::malformed("either --target or --random is required"));
    }
    let algebra = su(a.n);
    let random_z = |eps: f64| {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Exit::malformed(format!("--eps must be positive, got {eps}")));
        }
        Ok(random_target(&algebra, eps, a.seed))
    };
    let echo = |tol: f64, z_max: f64| ConfigEcho {
        tol: Dec(tol),
        z_max: Some(Dec(z_max)),
        seed: a.random.then_some(a.seed),
        eps: a.eps.filter(|_| a.random).map(Dec),
    };
    let cert = match a.level {
        Level::Algebra => {
            let mut config = AlgebraConfig::default();
            config.tol = tolerance(a.tol, config.tol)?;
            let z = match &a.target {
                Some(path) => {
                    let m = read_matrix(path, a.n)?;
                    let scale = numkit::frob(&m).max(1.0);
                    if numkit::skew_defect(&m) > 1e-10 * scale || numkit::trace(&m).norm() > 1e-10 * scale {
                        return Err(Exit::malformed("target is not a traceless skew-Hermitian matrix"));
                    }
                    AlgebraElement::from_matrix(&algebra, &m).map_err(|e| Exit::malformed(e.to_string()))?
                }
                None => random_z(a.eps.unwrap_or_default())?,
            };
            let d = decompose_algebra(&algebra, &z, &config).map_err(|e| Exit::solver(&e))?;
            Certificate::from_algebra(&d, echo(config.tol, config.z_max)).map_err(|e| Exit::solver(&e))?
        }
        Level::Group => {
            let mut config = GroupConfig::default();
            config.tol = tolerance(a.tol, config.tol)?;
            let z = match &a.target {
                Some(path) => {
                    GroupElement::new(read_matrix(path, a.n)?).map_err(|e| Exit::malformed(e.to_string()))?
                }
                None => GroupElement::exp(&random_z(a.eps.unwrap_or_default())?).map_err(|e| Exit::solver(&e))?,
            };
            let d = decompose_group(&algebra, &z, &config).map_err(|e| Exit::solver(&e))?;
            Certificate::from_group(&d, echo(config.tol, config.z_max)).map_err(|e| Exit::solver(&e))?
        }
    };
    write_output(a.out.as_deref(), &cert.to_canonical_string())
}

fn cmd_verify(path: &Path) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| Exit::malformed(format!("{}: {e}", path.display())))?;
    let cert = Certificate::parse(&text).map_err(|e| Exit::malformed(format!("{}: {e}", path.display())))?;
    let v = cert.verify().map_err(|e| Exit::malformed(format!("{}: {e}", path.display())))?;
    print!("{v}");
    if v.passed() {
        println!("{} certificate verified", cert.kind());
        Ok(())
    } else {
        let failed: Vec<&str> = v.failures().map(|c| c.name.as_str()).collect();
        Err(Exit {
            code: EXIT_VERIFY,
            message: format!("verification failed: {}", failed.join(", ")),
        })
    }
}

fn cmd_orth_torus(a: TorusArgs) -> CmdResult {
    let cert = match (&a.cartan_type, a.rank, &a.group, a.n) {
        (Some(t), Some(rank), None, _) => {
            let t: CartanType = t.parse().map_err(|e: Error| Exit::malformed(e.to_string()))?;
            let p = RootSystemPresentation::classical(t, rank).map_err(|e| Exit::solver(&e))?;
            let form = compact_form_from_roots(&p).map_err(|e| Exit::solver(&e))?;
            let torus = orthogonal_torus_for(&form).map_err(|e| Exit::solver(&e))?;
            Certificate::from_root_torus(t, &torus, &form.torus).map_err(|e| Exit::solver(&e))?
        }
        (None, _, Some(g), Some(n)) => {
            require_su(g, n)?;
            let algebra = su(n);
            let frame = match &a.frame {
                Some(path) => UnitaryFrame::new(read_matrix(path, n)?).map_err(|e| Exit::malformed(e.to_string()))?,
                None => UnitaryFrame::standard(n),
            };
            let torus = fourier_orthogonal_torus(&algebra, &frame).map_err(|e| Exit::solver(&e))?;
            let reference = frame_torus(&algebra, &frame).map_err(|e| Exit::solver(&e))?;
            Certificate::from_su_torus(&torus, &reference, &frame).map_err(|e| Exit::solver(&e))?
        }
        _ => return Err(Exit::malformed("give either --type and --rank, or --group and --n")),
    };
    write_output(a.out.as_deref(), &cert.to_canonical_string())
}

fn cmd_measure(a: MeasureArgs) -> CmdResult {
    require_su(&a.group, a.n)?;
    let algebra = su(a.n);
    let mut config = OpennessConfig::new(a.level, a.eps.clone(), a.samples, a.seed);
    config.jobs = a.jobs;
    let tol = match a.level {
        Level::Algebra => {
            config.algebra.tol = tolerance(a.tol, config.algebra.tol)?;
            config.algebra.tol
        }
        Level::Group => {
            config.group.tol = tolerance(a.tol, config.group.tol)?;
            config.group.tol
        }
    };
    let report = measure_openness(&algebra, &config).map_err(|e| Exit::malformed(e.to_string()))?;
    let cert = Certificate::from_openness(&report, a.n, tol);
    write_output(a.out.as_deref(), &cert.to_canonical_string())?;
    let csv_path = a.csv.clone().or_else(|| a.out.as_ref().map(|p| p.with_extension("csv")));
    if let Some(p) = csv_path {
        fs::write(&p, report.to_csv()).map_err(|e| Exit::malformed(format!("{}: {e}", p.display())))?;
    }
    if let Some(f) = report.failures.first() {
        return Err(Exit {
            code: EXIT_SOLVER,
            message: format!(
                "{}: {} of {} samples failed; first at eps {:e}, sample {}, seed {}",
                f.error,
                report.failures.len(),
                a.samples * a.eps.len(),
                f.eps,
                f.sample,
                f.seed
            ),
        });
    }
    if a.out.is_some() {
        match report.exponent {
            Some(beta) => println!("exponent {beta:.4}, constant {:.4}", report.constant),
            None => println!("constant {:.4}", report.constant),
        }
    }
    Ok(())
}
