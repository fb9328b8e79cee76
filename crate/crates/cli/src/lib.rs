//! Command-line front end: kernel values, Dirichlet extensions, integral
//! means, series coefficients, bounds and verification reports.

pub mod io;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use abh_core::bounds::{BoundSpec, Theorem};
use abh_core::dirichlet::{BoundaryFunction, Exponent, PoissonSolver, MIN_NODE_FLOOR};
use abh_core::kernel::{c_const, estimate_ckl, u_higher_deriv, u_modulus_bound, u_value, DiskPoint, ParamPair};
use abh_core::series::{coeffs_from_boundary, default_truncation, eval_series};
use abh_core::verify::{run_suite, Suite, SuiteConfig};
use abh_core::{Error, ParamPair64};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use crate::io::{CoefficientsJson, FieldRow, MeanRow};

/// Environment variable overriding the quadrature node floor.
pub const QUAD_NODES_ENV: &str = "ABH_QUAD_NODES";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "abh", version, about = "Numerics for (alpha,beta)-harmonic functions on the unit disk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// alpha as "re,im" (or a real number)
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// beta as "re,im" (or a real number)
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
}

impl ParamArgs {
    fn parse(&self) -> Result<ParamPair64, Error> {
        ParamPair::new(io::parse_complex(&self.alpha)?, io::parse_complex(&self.beta)?)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the kernel K = c u at a point, with an optional derivative
    Kernel {
        #[command(flatten)]
        params: ParamArgs,
        /// Point as "r,theta"
        #[arg(long)]
        z: String,
        /// Derivative order "k,l" for d_z^k d_zbar^l
        #[arg(long)]
        deriv: Option<String>,
    },
    /// Solve the Dirichlet problem on a polar grid and write field CSV
    Extend {
        /// alpha as "re,im"; taken from the coefficient file when --coeffs is given
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Boundary JSON file
        #[arg(long)]
        boundary: Option<PathBuf>,
        /// Evaluate the series from this coefficient JSON instead of the integral
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Grid "r0:r1:nr,ntheta"
        #[arg(long)]
        grid: String,
        /// Output CSV (r,theta,re,im); standard output if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral means M_p(r, w) with the integral-mean bound, as CSV
    Means {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        boundary: PathBuf,
        /// Exponent p >= 1 or "inf"
        #[arg(long)]
        p: String,
        /// Comma-separated radii
        #[arg(long)]
        radii: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Series coefficients of the extension of a boundary function
    Coeffs {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        boundary: PathBuf,
        /// Truncation; defaults to the boundary degree (N/2 - 1 for samples)
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the right-hand side of one of the estimates
    Bounds {
        /// One of 31, 31cap, 32, 32z, 32zbar, 33, 44, 44i, 44ii, 45
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long, default_value_t = 0.0)]
        r: f64,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        /// Boundary norm ||f||_p
        #[arg(long, default_value_t = 1.0)]
        fnorm: f64,
        /// Constant for theorem 33; estimated on the default grid if omitted
        #[arg(long)]
        ckl: Option<f64>,
    },
    /// Run verification suites and write a JSON report
    Verify {
        /// all, t31, t32, t33, t44, t45, subharmonic, residual or sharpness
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Numerical(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Self::Validation(e.to_string())
        } else {
            Self::Numerical(e.to_string())
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Validation(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(bytes).map_err(|e| Failure::Validation(format!("stdout: {e}"))),
    }
}

fn node_floor() -> Result<Option<usize>, Failure> {
    match std::env::var(QUAD_NODES_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= MIN_NODE_FLOOR => Ok(Some(n)),
            _ => Err(Failure::Validation(format!(
                "{QUAD_NODES_ENV}='{v}' must be an integer >= {MIN_NODE_FLOOR}"
            ))),
        },
    }
}

fn solver(params: ParamPair64) -> Result<PoissonSolver<f64>, Failure> {
    let s = PoissonSolver::new(params)?;
    Ok(match node_floor()? {
        Some(n) => s.with_node_floor(n)?,
        None => s,
    })
}

fn cjson(z: Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

fn read_boundary(path: &Path) -> Result<BoundaryFunction<f64>, Failure> {
    Ok(io::parse_boundary(&read_text(path)?)?)
}

fn cmd_kernel(params: &ParamArgs, z: &str, deriv: Option<&str>, stdout: &mut dyn Write) -> CmdResult {
    let params = params.parse()?;
    let (r, theta) = io::parse_real_pair(z)?;
    let point = DiskPoint::new(r, theta)?;
    let c = c_const(&params)?;
    let u = u_value(&params, &point);
    let mut out = json!({
        "alpha": cjson(params.alpha),
        "beta": cjson(params.beta),
        "z": { "r": r, "theta": theta },
        "c": cjson(c),
        "u": cjson(u),
        "value": cjson(c * u),
        "modulus_bound": c.norm() * u_modulus_bound(&params, &point),
    });
    if let Some(d) = deriv {
        let (k, l) = io::parse_order(d)?;
        let du = u_higher_deriv(&params, &point, k, l)?;
        out["derivative"] = json!({ "k": k, "l": l, "value": cjson(c * du), "u": cjson(du) });
    }
    let text = serde_json::to_string_pretty(&out).expect("json") + "\n";
    write_output(None, text.as_bytes(), stdout)
}

struct ExtendArgs<'a> {
    alpha: Option<&'a str>,
    beta: Option<&'a str>,
    boundary: Option<&'a Path>,
    coeffs: Option<&'a Path>,
    grid: &'a str,
    out: Option<&'a Path>,
}

fn cmd_extend(a: ExtendArgs<'_>, stdout: &mut dyn Write) -> CmdResult {
    let grid = io::parse_grid(a.grid)?;
    let flag_params = match (a.alpha, a.beta) {
        (Some(al), Some(be)) => Some(ParamPair::new(io::parse_complex(al)?, io::parse_complex(be)?)?),
        (None, None) => None,
        _ => return Err(Failure::Validation("--alpha and --beta must be given together".into())),
    };
    let points = grid.points();
    let values: Vec<Complex64> = if let Some(path) = a.coeffs {
        let cj = io::parse_coefficients(&read_text(path)?)?;
        let params = cj.params()?;
        if let Some(fp) = flag_params {
            if fp != params {
                return Err(Failure::Validation("--alpha/--beta disagree with the coefficient file".into()));
            }
        }
        let seq = cj.sequence()?;
        points.iter().map(|z| eval_series(&params, &seq, z)).collect::<Result<_, _>>()?
    } else {
        let params = flag_params.ok_or_else(|| Failure::Validation("--alpha and --beta are required".into()))?;
        let path = a.boundary.ok_or_else(|| Failure::Validation("--boundary or --coeffs is required".into()))?;
        let f = read_boundary(path)?;
        solver(params)?.extend_grid(&f, &grid)?
    };
    let rows: Vec<FieldRow> = points
        .iter()
        .zip(values)
        .map(|(z, value)| FieldRow { r: z.r, theta: z.theta, value })
        .collect();
    let mut buf = Vec::new();
    io::write_field_csv(&mut buf, &rows)?;
    write_output(a.out, &buf, stdout)
}

fn cmd_means(params: &ParamArgs, boundary: &Path, p: &str, radii: &str, out: Option<&Path>, stdout: &mut dyn Write) -> CmdResult {
    let params = params.parse()?;
    let f = read_boundary(boundary)?;
    let p = Exponent::new(io::parse_exponent(p)?)?;
    let radii = io::parse_list(radii)?;
    let s = solver(params)?;
    let norm = f.lp_norm(p);
    let rows = radii
        .iter()
        .map(|&r| {
            if !(0.0..1.0).contains(&r) {
                return Err(Error::InvalidArgument(format!("radius {r} outside [0, 1)")));
            }
            let mp = s.integral_mean(&f, r, p)?;
            let bound = abh_core::bounds::theorem31_rhs(&params, r, norm)?;
            Ok(MeanRow { r, mp, bound, margin: bound - mp })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut buf = Vec::new();
    io::write_means_csv(&mut buf, &rows)?;
    write_output(out, &buf, stdout)
}

fn cmd_coeffs(params: &ParamArgs, boundary: &Path, max_m: Option<usize>, out: Option<&Path>, stdout: &mut dyn Write) -> CmdResult {
    let params = params.parse()?;
    let f = read_boundary(boundary)?;
    let m = max_m.unwrap_or_else(|| default_truncation(&f));
    let seq = coeffs_from_boundary(&params, &f, m)?;
    let text = serde_json::to_string_pretty(&CoefficientsJson::new(&params, &seq)).expect("json") + "\n";
    write_output(out, text.as_bytes(), stdout)
}

fn parse_theorem(s: &str) -> Result<Theorem, Failure> {
    Ok(match s {
        "31" => Theorem::T31,
        "31cap" => Theorem::T31Cap,
        "32" | "32z" => Theorem::T32z,
        "32zbar" => Theorem::T32zbar,
        "33" => Theorem::T33,
        "44" | "44ii" => Theorem::T44ii,
        "44i" => Theorem::T44i,
        "45" => Theorem::T45,
        other => return Err(Failure::Validation(format!("unknown theorem '{other}'"))),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    theorem: &str,
    params: &ParamArgs,
    p: &str,
    r: f64,
    k: u32,
    l: u32,
    fnorm: f64,
    ckl: Option<f64>,
    stdout: &mut dyn Write,
) -> CmdResult {
    let theorem = parse_theorem(theorem)?;
    let params = params.parse()?;
    let p = Exponent::new(io::parse_exponent(p)?)?;
    let ckl = match (theorem, ckl) {
        (Theorem::T33, None) => Some(estimate_ckl(&params, k, l)?),
        (_, c) => c,
    };
    let spec = BoundSpec { theorem, params, p, r, k, l };
    let value = spec.evaluate(fnorm, ckl)?;
    let text = serde_json::to_string_pretty(&json!({
        "lhs_spec": value.lhs_spec,
        "rhs_value": value.rhs_value,
        "components": value.components,
    }))
    .expect("json")
        + "\n";
    write_output(None, text.as_bytes(), stdout)
}

fn cmd_verify(suite: &str, seed: u64, report: Option<&Path>, stdout: &mut dyn Write) -> CmdResult {
    let suite: Suite = suite.parse()?;
    let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
    let rep = run_suite(suite, &cfg)?;
    if let Some(path) = report {
        let text = rep.to_json() + "\n";
        fs::write(path, text).map_err(|e| Failure::Validation(format!("cannot write {}: {e}", path.display())))?;
    }
    let line = format!(
        "checks: {}  failed: {}  worst margin: {:.3e}\n",
        rep.summary.total, rep.summary.failed, rep.summary.worst_margin
    );
    write_output(None, line.as_bytes(), stdout)?;
    if rep.summary.failed > 0 {
        let first = rep.failures().next().map(|c| c.name.clone()).unwrap_or_default();
        return Err(Failure::Verification(format!("{} checks failed (first: {first})", rep.summary.failed)));
    }
    Ok(())
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Kernel { params, z, deriv } => cmd_kernel(&params, &z, deriv.as_deref(), stdout),
        Command::Extend { alpha, beta, boundary, coeffs, grid, out } => cmd_extend(
            ExtendArgs {
                alpha: alpha.as_deref(),
                beta: beta.as_deref(),
                boundary: boundary.as_deref(),
                coeffs: coeffs.as_deref(),
                grid: &grid,
                out: out.as_deref(),
            },
            stdout,
        ),
        Command::Means { params, boundary, p, radii, out } => cmd_means(&params, &boundary, &p, &radii, out.as_deref(), stdout),
        Command::Coeffs { params, boundary, max_m, out } => cmd_coeffs(&params, &boundary, max_m, out.as_deref(), stdout),
        Command::Bounds { theorem, params, p, r, k, l, fnorm, ckl } => {
            cmd_bounds(&theorem, &params, &p, r, k, l, fnorm, ckl, stdout)
        }
        Command::Verify { suite, seed, report } => cmd_verify(&suite, seed, report.as_deref(), stdout),
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code: 0 success, 1 invalid input, 2 numerical failure, 3 failed checks.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if !e.use_stderr() {
                let _ = stdout.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let line = text.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return EXIT_VALIDATION;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Validation(m) => (EXIT_VALIDATION, m),
                Failure::Numerical(m) => (EXIT_NUMERICAL, m),
                Failure::Verification(m) => (EXIT_VERIFICATION, m),
            };
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}
