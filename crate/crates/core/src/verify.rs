//! Randomized verification of the integral-mean, gradient and coefficient
//! estimates, plus sharpness, subharmonicity and residual experiments.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::{
    c_q, theorem31_cap_rhs, theorem31_rhs, theorem32_bounds, theorem33_rhs, theorem45_rhs, GradientConstants,
};
use crate::dirichlet::{BoundaryFunction, CircleOperator, EvalGrid, Exponent, PoissonSolver, MEAN_ANGLES};
use crate::error::{Error, Result};
use crate::kernel::{c_const, estimate_ckl, DiskPoint, ParamPair};
use crate::numdiff::laplacian_5pt;
use crate::series::{
    apply_d, calibrate_orientation, coeffs_from_boundary, eval_series, eval_series_gradient, pochhammer_ratio,
    CoefficientSeq,
};
use crate::specfun::hyp2f1_real;

type Params = ParamPair<f64>;
type Boundary = BoundaryFunction<f64>;

/// Residual checks pass when `|Δ_{α,β} w| <= RESIDUAL_TOL (1 + |w|)`.
pub const RESIDUAL_TOL: f64 = 1e-5;
/// Slack in the sub-mean-value test.
pub const SUBMEAN_SLACK: f64 = 1e-10;
/// Slack in the sign test for the discrete Laplacian.
pub const LAPLACIAN_SLACK: f64 = 1e-8;
/// Points per family in [`residual_suite`].
pub const RESIDUAL_POINTS: usize = 100;
/// Radii at which the extremal family is evaluated.
pub const SHARPNESS_RHOS: [f64; 3] = [0.9, 0.95, 0.99];
/// Samples of the extremal boundary functions.
pub const EXTREMAL_SAMPLES: usize = 4096;

/// Parameters of a randomized run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub n_boundary: usize,
    pub degree: usize,
    pub param_grid: Vec<Params>,
    pub radii: Vec<f64>,
    pub p_list: Vec<Exponent<f64>>,
    pub tolerance_rel: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let c = Complex64::new;
        let pairs = [
            (c(0.0, 0.0), c(0.0, 0.0)),
            (c(0.5, 0.0), c(0.5, 0.0)),
            (c(1.0, 0.0), c(0.5, 0.0)),
            (c(-0.4, 0.0), c(0.7, 0.0)),
            (c(0.5, 0.5), c(0.3, -0.4)),
            (c(1.0, 1.0), c(1.0, -1.0)),
        ];
        Self {
            seed: 42,
            n_boundary: 50,
            degree: 8,
            param_grid: pairs.iter().map(|&(a, b)| ParamPair::new(a, b).expect("admissible")).collect(),
            radii: vec![0.3, 0.6, 0.9, 0.95],
            p_list: vec![Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Finite(4.0), Exponent::Infinite],
            tolerance_rel: 1e-8,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_boundary == 0 || self.degree == 0 {
            return Err(Error::InvalidArgument("suite needs at least one boundary of degree >= 1".into()));
        }
        if self.param_grid.is_empty() || self.radii.is_empty() || self.p_list.is_empty() {
            return Err(Error::InvalidArgument("suite grids must be non-empty".into()));
        }
        if self.radii.iter().any(|&r| !(0.0..=crate::dirichlet::MAX_RADIUS).contains(&r)) {
            return Err(Error::InvalidArgument("suite radii must lie in [0, 0.999]".into()));
        }
        if !(self.tolerance_rel > 0.0 && self.tolerance_rel <= 1e-2) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {} outside (0, 1e-2]",
                self.tolerance_rel
            )));
        }
        Ok(())
    }
}

/// `(α, β)` as `[re, im]` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
}

impl From<&Params> for ParamsRecord {
    fn from(p: &Params) -> Self {
        Self { alpha: [p.alpha.re, p.alpha.im], beta: [p.beta.re, p.beta.im] }
    }
}

fn serialize_p<S: Serializer>(p: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        None => s.serialize_none(),
        Some(v) if v.is_infinite() => s.serialize_str("inf"),
        Some(v) => s.serialize_f64(*v),
    }
}

fn deserialize_p<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }
    match Option::<Repr>::deserialize(d)? {
        None => Ok(None),
        Some(Repr::Num(v)) => Ok(Some(v)),
        Some(Repr::Text(t)) if t == "inf" => Ok(Some(f64::INFINITY)),
        Some(Repr::Text(t)) => Err(serde::de::Error::custom(format!("bad exponent {t}"))),
    }
}

/// One comparison `lhs` against `rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: ParamsRecord,
    #[serde(serialize_with = "serialize_p", deserialize_with = "deserialize_p", default)]
    pub p: Option<f64>,
    pub r: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn base(name: &str, params: &Params, p: Option<Exponent<f64>>, r: Option<f64>) -> Self {
        Self {
            name: name.to_string(),
            params: params.into(),
            p: p.map(|e| e.value()),
            r,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            pass: false,
            detail: String::new(),
        }
    }

    /// Passes iff `lhs <= rhs (1 + tol)`.
    fn upper(mut self, lhs: f64, rhs: f64, tol: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.margin = rhs - lhs;
        self.pass = lhs.is_finite() && rhs.is_finite() && lhs <= rhs * (1.0 + tol);
        self
    }

    /// Passes iff `|lhs - rhs| <= tol |rhs|`.
    fn equal(mut self, lhs: f64, rhs: f64, tol: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.margin = rhs - lhs;
        self.pass = lhs.is_finite() && rhs.is_finite() && (lhs - rhs).abs() <= tol * rhs.abs();
        self
    }

    /// Passes iff `lhs < rhs`.
    fn strictly_below(mut self, lhs: f64, rhs: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.margin = rhs - lhs;
        self.pass = lhs < rhs;
        self
    }

    fn failed(mut self, err: &Error) -> Self {
        self.pass = false;
        self.detail = err.to_string();
        self
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// A measured quantity that is reported but not asserted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub name: String,
    pub value: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub failed: usize,
    pub worst_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(default)]
    pub observations: Vec<Observation>,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>, observations: Vec<Observation>) -> Self {
        let failed = checks.iter().filter(|c| !c.pass).count();
        let worst_margin = checks
            .iter()
            .map(|c| c.margin)
            .filter(|m| !m.is_nan())
            .fold(f64::INFINITY, f64::min);
        Self { summary: Summary { total: checks.len(), failed, worst_margin }, checks, observations }
    }

    pub fn merge(reports: impl IntoIterator<Item = Self>) -> Self {
        let (mut checks, mut obs) = (Vec::new(), Vec::new());
        for r in reports {
            checks.extend(r.checks);
            obs.extend(r.observations);
        }
        Self::new(checks, obs)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Selectable groups of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    T31,
    T32,
    T33,
    T44,
    T45,
    Subharmonic,
    Residual,
    Sharpness,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Self::All,
            "t31" => Self::T31,
            "t32" => Self::T32,
            "t33" => Self::T33,
            "t44" => Self::T44,
            "t45" => Self::T45,
            "subharmonic" => Self::Subharmonic,
            "residual" => Self::Residual,
            "sharpness" => Self::Sharpness,
            other => return Err(Error::InvalidArgument(format!("unknown suite '{other}'"))),
        })
    }
}

/// A uniform sample from the closed unit disk.
pub fn random_unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    let rad: f64 = rng.random::<f64>().sqrt();
    Complex64::from_polar(rad, rng.random_range(0.0..TAU))
}

/// Trigonometric polynomial of random degree in `1..=max_degree` with
/// coefficients uniform on the unit disk.
pub fn random_trig(rng: &mut ChaCha8Rng, max_degree: usize) -> Boundary {
    let d = rng.random_range(1..=max_degree) as i64;
    BoundaryFunction::fourier((-d..=d).map(|m| (m, random_unit_disk(rng))).collect::<Vec<_>>())
}

/// Admissible parameters with `Re ∈ [-0.45, 2]`, `|Im| <= 1.5` and
/// `Re(α+β) > -0.9`.
pub fn random_params(rng: &mut ChaCha8Rng) -> Params {
    loop {
        let a = Complex64::new(rng.random_range(-0.45..2.0), rng.random_range(-1.5..1.5));
        let b = Complex64::new(rng.random_range(-0.45..2.0), rng.random_range(-1.5..1.5));
        if a.re + b.re > -0.9 {
            if let Ok(p) = ParamPair::new(a, b) {
                return p;
            }
        }
    }
}

fn boundaries(cfg: &SuiteConfig, stream: u64) -> Vec<Boundary> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    (0..cfg.n_boundary).map(|_| random_trig(&mut rng, cfg.degree)).collect()
}

/// `‖f‖_p` for every boundary and exponent, indexed `[f][p]`.
fn norm_table(fs: &[Boundary], ps: &[Exponent<f64>]) -> Vec<Vec<f64>> {
    fs.par_iter().map(|f| ps.iter().map(|&p| f.lp_norm(p)).collect()).collect()
}

fn solver(params: &Params) -> Result<PoissonSolver<f64>> {
    PoissonSolver::new(*params)
}

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Runs `job` for every `(param index, radius index)` in parallel and
/// concatenates the results in grid order.
fn per_param_radius<F>(cfg: &SuiteConfig, job: F) -> Vec<Check>
where
    F: Fn(&Params, f64) -> Vec<Check> + Sync,
{
    let jobs: Vec<(usize, usize)> = (0..cfg.param_grid.len())
        .flat_map(|i| (0..cfg.radii.len()).map(move |j| (i, j)))
        .collect();
    jobs.par_iter()
        .map(|&(i, j)| job(&cfg.param_grid[i], cfg.radii[j]))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn circle_ops(params: &Params, r: f64, degree: usize, orders: &[(u32, u32)]) -> Result<Vec<CircleOperator<f64>>> {
    let s = solver(params)?;
    orders.iter().map(|&(k, l)| s.circle(r, MEAN_ANGLES, degree, k, l)).collect()
}

fn t31_suite(cfg: &SuiteConfig) -> VerificationReport {
    let fs = boundaries(cfg, 1);
    let norms = norm_table(&fs, &cfg.p_list);
    let mut checks = per_param_radius(cfg, |params, r| {
        let ops = match circle_ops(params, r, cfg.degree, &[(0, 0)]) {
            Ok(ops) => ops,
            Err(e) => return vec![Check::base("t31", params, None, Some(r)).failed(&e)],
        };
        let mut out = Vec::new();
        for (fi, f) in fs.iter().enumerate() {
            let values = ops[0].apply(f);
            for (pi, &p) in cfg.p_list.iter().enumerate() {
                let base = Check::base("t31", params, Some(p), Some(r));
                let cap = Check::base("t31_cap", params, Some(p), Some(r));
                let (values, norm) = match &values {
                    Ok(v) => (v, norms[fi][pi]),
                    Err(e) => {
                        out.push(base.failed(e));
                        continue;
                    }
                };
                let lhs = p.mean_of(values.iter().map(|v| v.norm()));
                out.push(match theorem31_rhs(params, r, norm) {
                    Ok(rhs) => base.upper(lhs, rhs, cfg.tolerance_rel),
                    Err(e) => base.failed(&e),
                });
                out.push(match theorem31_cap_rhs(params, norm) {
                    Ok(rhs) => cap.upper(lhs, rhs, cfg.tolerance_rel),
                    Err(e) => cap.failed(&e),
                });
            }
        }
        out
    });
    checks.extend(t31_equality_checks(cfg));
    VerificationReport::new(checks, t31_general_ratios(cfg))
}

/// `f ≡ 1` with real `α = β`: the integral-mean bound is attained.
fn t31_equality_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let one = BoundaryFunction::constant(Complex64::new(1.0, 0.0));
    let mut out = Vec::new();
    for a in [0.0, 0.5, 1.0] {
        let params = ParamPair::real(a, a).expect("admissible");
        for &r in &cfg.radii {
            for &p in &cfg.p_list {
                let base = Check::base("t31_equality", &params, Some(p), Some(r));
                let res = solver(&params)
                    .and_then(|s| s.integral_mean(&one, r, p))
                    .and_then(|m| Ok((m, theorem31_rhs(&params, r, 1.0)?)));
                out.push(match res {
                    Ok((m, rhs)) => base.equal(m, rhs, cfg.tolerance_rel),
                    Err(e) => base.failed(&e),
                });
            }
        }
    }
    out
}

/// `M_p(r, K[1]) / RHS` for pairs with `Im α = Im β` but `α != β`, where the
/// sharpness claim is not asserted.
fn t31_general_ratios(cfg: &SuiteConfig) -> Vec<Observation> {
    let one = BoundaryFunction::constant(Complex64::new(1.0, 0.0));
    let pairs = [(Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)), (Complex64::new(0.5, 0.3), Complex64::new(0.2, 0.3))];
    let mut out = Vec::new();
    for (a, b) in pairs {
        let Ok(params) = ParamPair::new(a, b) else { continue };
        for &r in &cfg.radii {
            let ratio = solver(&params)
                .and_then(|s| s.integral_mean(&one, r, Exponent::Finite(2.0)))
                .and_then(|m| Ok(m / theorem31_rhs(&params, r, 1.0)?));
            out.push(Observation {
                name: "t31_constant_ratio".into(),
                value: ratio.unwrap_or(f64::NAN),
                detail: format!("alpha={a}, beta={b}, r={r}, p=2"),
            });
        }
    }
    out
}

fn t32_suite(cfg: &SuiteConfig) -> VerificationReport {
    let fs = boundaries(cfg, 2);
    let norms = norm_table(&fs, &cfg.p_list);
    let checks = per_param_radius(cfg, |params, r| {
        let ops = match circle_ops(params, r, cfg.degree, &[(1, 0), (0, 1)]) {
            Ok(ops) => ops,
            Err(e) => return vec![Check::base("t32", params, None, Some(r)).failed(&e)],
        };
        let mut out = Vec::new();
        for (fi, f) in fs.iter().enumerate() {
            let grads = ops[0].apply(f).and_then(|dz| Ok((dz, ops[1].apply(f)?)));
            for (pi, &p) in cfg.p_list.iter().enumerate() {
                if p.is_one() {
                    continue;
                }
                let cz = Check::base("t32_z", params, Some(p), Some(r));
                let czb = Check::base("t32_zbar", params, Some(p), Some(r));
                let res = grads.as_ref().map_err(Clone::clone).and_then(|g| Ok((g, theorem32_bounds(params, p, r)?)));
                match res {
                    Ok(((dz, dzb), g)) => {
                        let norm = norms[fi][pi];
                        let rz = GradientConstants::rhs(params, g.c_r, p, r, norm);
                        let rzb = GradientConstants::rhs(params, g.d_r, p, r, norm);
                        out.push(cz.upper(max_abs(dz), rz, cfg.tolerance_rel));
                        out.push(czb.upper(max_abs(dzb), rzb, cfg.tolerance_rel));
                    }
                    Err(e) => {
                        out.push(cz.failed(&e));
                        out.push(czb.failed(&e));
                    }
                }
            }
        }
        out
    });
    VerificationReport::new(checks, Vec::new())
}

const T33_ORDERS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

fn t33_suite(cfg: &SuiteConfig) -> VerificationReport {
    let fs = boundaries(cfg, 3);
    let norms = norm_table(&fs, &cfg.p_list);
    let ckl: Vec<Vec<Result<f64>>> = cfg
        .param_grid
        .par_iter()
        .map(|params| T33_ORDERS.iter().map(|&(k, l)| estimate_ckl(params, k, l)).collect())
        .collect();
    let mut observations = Vec::new();
    for (params, row) in cfg.param_grid.iter().zip(&ckl) {
        for (&(k, l), c) in T33_ORDERS.iter().zip(row) {
            observations.push(Observation {
                name: "ckl_estimate".into(),
                value: c.as_ref().copied().unwrap_or(f64::NAN),
                detail: format!("alpha={}, beta={}, k={k}, l={l}", params.alpha, params.beta),
            });
        }
    }
    let index_of = |params: &Params| cfg.param_grid.iter().position(|q| q == params).unwrap_or(0);
    let checks = per_param_radius(cfg, |params, r| {
        let ops = match circle_ops(params, r, cfg.degree, &T33_ORDERS) {
            Ok(ops) => ops,
            Err(e) => return vec![Check::base("t33", params, None, Some(r)).failed(&e)],
        };
        let consts = &ckl[index_of(params)];
        let mut out = Vec::new();
        for (fi, f) in fs.iter().enumerate() {
            for (oi, &(k, l)) in T33_ORDERS.iter().enumerate() {
                let name = format!("t33_k{k}_l{l}");
                let values = ops[oi].apply(f);
                for (pi, &p) in cfg.p_list.iter().enumerate() {
                    let base = Check::base(&name, params, Some(p), Some(r));
                    let res = values.as_ref().map_err(Clone::clone).and_then(|v| {
                        let c = consts[oi].clone()?;
                        Ok((p.mean_of(v.iter().map(|z| z.norm())), theorem33_rhs(params, r, k, l, c, norms[fi][pi])?))
                    });
                    out.push(match res {
                        Ok((lhs, rhs)) => base.upper(lhs, rhs, cfg.tolerance_rel),
                        Err(e) => base.failed(&e),
                    });
                }
            }
        }
        out
    });
    VerificationReport::new(checks, observations)
}

fn t44_suite(cfg: &SuiteConfig) -> VerificationReport {
    let fs = boundaries(cfg, 4);
    let norms = norm_table(&fs, &cfg.p_list);
    let mut cq_table: HashMap<(usize, usize), Result<f64>> = HashMap::new();
    for (pi, p) in cfg.p_list.iter().enumerate() {
        for k in 1..=cfg.degree {
            let v = match p.conjugate() {
                Exponent::Finite(q) => c_q(q, k),
                Exponent::Infinite => Ok(1.0),
            };
            cq_table.insert((pi, k), v);
        }
    }
    let jobs: Vec<usize> = (0..cfg.param_grid.len()).collect();
    let checks = jobs
        .par_iter()
        .map(|&i| {
            let params = &cfg.param_grid[i];
            let mut out = Vec::new();
            let c = match c_const(params) {
                Ok(c) => c.norm(),
                Err(e) => return vec![Check::base("t44", params, None, None).failed(&e)],
            };
            for (fi, f) in fs.iter().enumerate() {
                let seq = match coeffs_from_boundary(params, f, cfg.degree) {
                    Ok(s) => s,
                    Err(e) => {
                        out.push(Check::base("t44", params, None, None).failed(&e));
                        continue;
                    }
                };
                for k in 1..=cfg.degree {
                    let ra = pochhammer_ratio(params.alpha, k).norm();
                    let rb = pochhammer_ratio(params.beta, k).norm();
                    let (ck, cmk) = (seq.get(k as i64).norm(), seq.get(-(k as i64)).norm());
                    for (pi, &p) in cfg.p_list.iter().enumerate() {
                        let norm = norms[fi][pi];
                        let detail = format!("k={k}");
                        out.push(
                            Check::base("t44i_plus", params, Some(p), None)
                                .upper(ck, c * ra * norm, cfg.tolerance_rel)
                                .with_detail(detail.clone()),
                        );
                        out.push(
                            Check::base("t44i_minus", params, Some(p), None)
                                .upper(cmk, c * rb * norm, cfg.tolerance_rel)
                                .with_detail(detail.clone()),
                        );
                        let base = Check::base("t44ii", params, Some(p), None);
                        out.push(match &cq_table[&(pi, k)] {
                            Ok(cq) => base
                                .upper(ck / ra + cmk / rb, 2.0 * c * cq * norm, cfg.tolerance_rel)
                                .with_detail(detail),
                            Err(e) => base.failed(e),
                        });
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    VerificationReport::new(checks, Vec::new())
}

fn t45_suite(cfg: &SuiteConfig) -> VerificationReport {
    let fs = boundaries(cfg, 5);
    let norms = norm_table(&fs, &cfg.p_list);
    let mut checks = per_param_radius(cfg, |params, r| {
        let ops = match circle_ops(params, r, cfg.degree, &[(1, 0), (0, 1)]) {
            Ok(ops) => ops,
            Err(e) => return vec![Check::base("t45", params, None, Some(r)).failed(&e)],
        };
        let one = Complex64::new(1.0, 0.0);
        let wa = (params.alpha + one).norm() + params.beta.norm() * r;
        let wb = (params.beta + one).norm() + params.alpha.norm() * r;
        let mut out = Vec::new();
        for (fi, f) in fs.iter().enumerate() {
            let grads = ops[0].apply(f).and_then(|dz| Ok((dz, ops[1].apply(f)?)));
            for (pi, &p) in cfg.p_list.iter().enumerate() {
                let base = Check::base("t45", params, Some(p), Some(r));
                let res = grads.as_ref().map_err(Clone::clone).and_then(|(dz, dzb)| {
                    let lhs = dz
                        .iter()
                        .zip(dzb)
                        .map(|(a, b)| a.norm() / wa + b.norm() / wb)
                        .fold(0.0, f64::max);
                    Ok((lhs, theorem45_rhs(params, p, r, norms[fi][pi])?))
                });
                out.push(match res {
                    Ok((lhs, rhs)) => base.upper(lhs, rhs, cfg.tolerance_rel),
                    Err(e) => base.failed(&e),
                });
            }
        }
        out
    });
    let classical = ParamPair::real(0.0, 0.0).expect("admissible");
    for &r in &cfg.radii {
        let base = Check::base("t45_schwarz_pick", &classical, Some(Exponent::Infinite), Some(r));
        checks.push(match theorem45_rhs(&classical, Exponent::Infinite, r, 1.0) {
            Ok(v) => base.equal(v, 2.0 / (1.0 - r * r), 1e-15),
            Err(e) => base.failed(&e),
        });
    }
    VerificationReport::new(checks, Vec::new())
}

/// Extremal boundary data for the gradient estimate at `α = β = 0`:
/// `f_ρ = (1-ρ²)^{2/(1-p)} (1 + cos s)^{1/(p-1)} e^{is}` where
/// `e^{is} = (e^{it} - ρ)/(1 - ρ e^{it})`; `conjugate` selects `e^{-is}`.
pub fn sharpness_extremal(p: f64, rho: f64, conjugate: bool) -> Result<Boundary> {
    if !(p > 1.0) {
        return Err(Error::Precondition(format!("extremal family needs p > 1, got {p}")));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!("rho = {rho} outside (0, 1)")));
    }
    let scale = (1.0 - rho * rho).powf(2.0 / (1.0 - p));
    BoundaryFunction::from_fn(EXTREMAL_SAMPLES, |t| {
        let e = Complex64::from_polar(1.0, t);
        let m = (e - rho) / (1.0 - e * rho);
        let m = m / m.norm();
        let amp = scale * (1.0 + m.re).powf(1.0 / (p - 1.0));
        if conjugate {
            m.conj() * amp
        } else {
            m * amp
        }
    })
}

/// `(1-ρ²)^{1+1/p} |∂w(ρ)| / ‖f_ρ‖_p` at `α = β = 0`, with `∂ = ∂_z` or `∂_z̄`
/// (for the conjugate family).
pub fn sharpness_ratio(p: f64, rho: f64, conjugate: bool) -> Result<f64> {
    let f = sharpness_extremal(p, rho, conjugate)?;
    let s = solver(&ParamPair::real(0.0, 0.0)?)?;
    let (_, dz, dzb) = s.extend_gradient(&f, &DiskPoint::new(rho, 0.0)?)?;
    let d = if conjugate { dzb } else { dz };
    Ok((1.0 - rho * rho).powf(1.0 + 1.0 / p) * d.norm() / f.lp_norm(Exponent::Finite(p)))
}

fn sharpness_suite() -> VerificationReport {
    let params = ParamPair::real(0.0, 0.0).expect("admissible");
    let mut checks = Vec::new();
    let mut observations = Vec::new();
    for (p, asserted) in [(2.0, true), (4.0, false)] {
        let exp = Exponent::Finite(p);
        for conjugate in [false, true] {
            let tag = if conjugate { "zbar" } else { "z" };
            let ratios: Vec<Result<f64>> =
                SHARPNESS_RHOS.par_iter().map(|&rho| sharpness_ratio(p, rho, conjugate)).collect();
            let limit = theorem32_bounds(&params, exp, 0.0).map(|g| if conjugate { g.d_const } else { g.c_const });
            for (&rho, ratio) in SHARPNESS_RHOS.iter().zip(&ratios) {
                observations.push(Observation {
                    name: format!("sharpness_ratio_{tag}"),
                    value: ratio.as_ref().copied().unwrap_or(f64::NAN),
                    detail: format!("p={p}, rho={rho}"),
                });
                let base = Check::base(&format!("sharpness_bound_{tag}"), &params, Some(exp), Some(rho));
                let bound = theorem32_bounds(&params, exp, rho).map(|g| if conjugate { g.d_r } else { g.c_r });
                checks.push(match (ratio, &bound) {
                    (Ok(v), Ok(b)) => base.upper(*v, *b, 1e-8),
                    (Err(e), _) | (_, Err(e)) => base.failed(e),
                });
            }
            if !asserted {
                continue;
            }
            for (i, w) in ratios.windows(2).enumerate() {
                let base = Check::base(&format!("sharpness_increasing_{tag}"), &params, Some(exp), Some(SHARPNESS_RHOS[i + 1]));
                checks.push(match (&w[0], &w[1]) {
                    (Ok(a), Ok(b)) => base.strictly_below(*a, *b),
                    (Err(e), _) | (_, Err(e)) => base.failed(e),
                });
            }
            let last = *SHARPNESS_RHOS.last().expect("non-empty");
            let base = Check::base(&format!("sharpness_limit_{tag}"), &params, Some(exp), Some(last));
            checks.push(match (ratios.last().expect("non-empty"), &limit) {
                (Ok(v), Ok(c)) => base.upper((v - c).abs(), 0.1 * c, 0.0).with_detail(format!("ratio={v}, limit={c}")),
                (Err(e), _) | (_, Err(e)) => base.failed(e),
            });
        }
    }
    VerificationReport::new(checks, observations)
}

/// Default grid for [`subharmonicity_check`]: 32 radii up to `1 - 2δ` and 16 angles.
pub fn subharmonic_grid(delta: f64) -> EvalGrid<f64> {
    let top = 1.0 - 2.0 * delta;
    EvalGrid::new((1..=32).map(|i| top * i as f64 / 32.0).collect(), 16).expect("valid grid")
}

/// Sub-mean-value and Laplacian-sign tests for `F(-α, -β; 1; |z|²)`.
pub fn subharmonicity_check(params: &Params, grid: &EvalGrid<f64>, delta: f64) -> Result<VerificationReport> {
    if !params.is_real() || params.alpha.re < 0.0 || params.beta.re < 0.0 {
        return Err(Error::Precondition("subharmonicity needs real alpha, beta >= 0".into()));
    }
    if !(delta > 0.0 && delta <= 1e-2) {
        return Err(Error::InvalidArgument(format!("delta = {delta} outside (0, 1e-2]")));
    }
    if grid.radii().iter().any(|&r| r > 1.0 - 2.0 * delta + 1e-15) {
        return Err(Error::InvalidArgument("grid radii must not exceed 1 - 2 delta".into()));
    }
    let (a, b) = (params.alpha.re, params.beta.re);
    let big_f = |z: Complex64| hyp2f1_real(-a, -b, 1.0, z.norm_sqr()).map(|v| Complex64::new(v, 0.0));
    let checks: Vec<Check> = grid
        .points()
        .par_iter()
        .flat_map_iter(|pt| {
            let z = pt.to_complex();
            let r = Some(pt.r);
            let mean = (0..16).try_fold(0.0, |acc, j| {
                Ok::<_, Error>(acc + big_f(z + Complex64::from_polar(delta, TAU * j as f64 / 16.0))?.re)
            });
            let mean_check = match (big_f(z), mean) {
                (Ok(v), Ok(m)) => Check::base("submean", params, None, r).upper(v.re, m / 16.0 + SUBMEAN_SLACK, 0.0),
                (Err(e), _) | (_, Err(e)) => Check::base("submean", params, None, r).failed(&e),
            };
            let lap_check = match laplacian_5pt(big_f, z, delta) {
                Ok(l) => {
                    let v = 0.25 * (1.0 - pt.r * pt.r) * l.re;
                    Check::base("laplacian_sign", params, None, r).upper(-v, LAPLACIAN_SLACK, 0.0)
                }
                Err(e) => Check::base("laplacian_sign", params, None, r).failed(&e),
            };
            [
                mean_check.with_detail(format!("theta={}", pt.theta)),
                lap_check.with_detail(format!("theta={}", pt.theta)),
            ]
        })
        .collect();
    Ok(VerificationReport::new(checks, Vec::new()))
}

fn subharmonic_suite() -> VerificationReport {
    let delta = 1e-2;
    let grid = subharmonic_grid(delta);
    let mut reports = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        for b in [0.5, 1.0, 2.0] {
            let params = ParamPair::real(a, b).expect("admissible");
            reports.push(subharmonicity_check(&params, &grid, delta).unwrap_or_else(|e| {
                VerificationReport::new(vec![Check::base("submean", &params, None, None).failed(&e)], Vec::new())
            }));
        }
    }
    VerificationReport::merge(reports)
}

/// `Δ_{α,β} w` for a series, with `w_{zz̄}` from a five-point Laplacian.
pub fn series_residual(params: &Params, coeffs: &CoefficientSeq<f64>, z: &DiskPoint<f64>) -> Result<(Complex64, Complex64)> {
    let (w, wz, wzb) = eval_series_gradient(params, coeffs, z)?;
    let zc = z.to_complex();
    let lap = laplacian_5pt(|q| eval_series(params, coeffs, &DiskPoint::from_complex(q)?), zc, crate::dirichlet::RESIDUAL_STEP)?;
    let (a, b) = (params.alpha, params.beta);
    let res = lap * (0.25 * (1.0 - z.r * z.r)) + a * zc * wz + b * zc.conj() * wzb - a * b * w;
    Ok((res, w))
}

/// Residual checks for quadrature, series and `D`-transformed series.
pub fn residual_suite(cfg: &SuiteConfig) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(6);
    struct Case {
        params: Params,
        f: Boundary,
        coeffs: CoefficientSeq<f64>,
        z: DiskPoint<f64>,
    }
    let cases: Vec<Case> = (0..RESIDUAL_POINTS)
        .map(|i| {
            let params = cfg.param_grid[i % cfg.param_grid.len()];
            let f = random_trig(&mut rng, cfg.degree);
            let m = cfg.degree as i64;
            let coeffs = CoefficientSeq::new(cfg.degree, (-m..=m).map(|k| (k, random_unit_disk(&mut rng))).collect::<Vec<_>>())
                .expect("within truncation");
            let z = DiskPoint { r: rng.random_range(0.0..0.8), theta: rng.random_range(0.0..TAU) };
            Case { params, f, coeffs, z }
        })
        .collect();
    let check = |name: &str, c: &Case, res: Result<(Complex64, Complex64)>| {
        let base = Check::base(name, &c.params, None, Some(c.z.r));
        match res {
            Ok((res, w)) => base.upper(res.norm(), RESIDUAL_TOL * (1.0 + w.norm()), 0.0),
            Err(e) => base.failed(&e),
        }
    };
    let checks = cases
        .par_iter()
        .flat_map_iter(|c| {
            let quad = solver(&c.params).and_then(|s| Ok((s.operator_residual(&c.f, &c.z)?, s.extend(&c.f, &c.z)?)));
            let series = series_residual(&c.params, &c.coeffs, &c.z);
            let d = series_residual(&c.params, &apply_d(&c.coeffs), &c.z);
            [check("residual_quadrature", c, quad), check("residual_series", c, series), check("residual_d_operator", c, d)]
        })
        .collect::<Vec<_>>();
    let mut sorted = Vec::with_capacity(checks.len());
    for name in ["residual_quadrature", "residual_series", "residual_d_operator"] {
        sorted.extend(checks.iter().filter(|c| c.name == name).cloned());
    }
    VerificationReport::new(sorted, Vec::new())
}

/// The five inequality suites.
pub fn run_inequality_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    Ok(VerificationReport::merge([t31_suite(cfg), t32_suite(cfg), t33_suite(cfg), t44_suite(cfg), t45_suite(cfg)]))
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut report = match suite {
        Suite::All => VerificationReport::merge([
            run_inequality_suite(cfg)?,
            sharpness_suite(),
            subharmonic_suite(),
            residual_suite(cfg),
        ]),
        Suite::T31 => t31_suite(cfg),
        Suite::T32 => t32_suite(cfg),
        Suite::T33 => t33_suite(cfg),
        Suite::T44 => t44_suite(cfg),
        Suite::T45 => t45_suite(cfg),
        Suite::Subharmonic => subharmonic_suite(),
        Suite::Residual => residual_suite(cfg),
        Suite::Sharpness => sharpness_suite(),
    };
    if matches!(suite, Suite::All | Suite::T44) {
        report.observations.push(Observation {
            name: "fourier_orientation".into(),
            value: calibrate_orientation().map(|s| s as f64).unwrap_or(f64::NAN),
            detail: "sign sigma in c_k ~ f^(sigma k), chosen against quadrature".into(),
        });
    }
    Ok(report)
}
