//! Hypergeometric series representation of `(α,β)`-harmonic functions:
//!
//! `w(z) = Σ_{m≥0} c_m F(-α, m-β; m+1; |z|²) z^m + Σ_{m≥1} c_{-m} F(-β, m-α; m+1; |z|²) z̄^m`.

use std::collections::BTreeMap;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::dirichlet::{BoundaryFunction, PoissonSolver};
use crate::error::{Error, Result};
use crate::kernel::{c_const, DiskPoint, ParamPair};
use crate::scalar::{from_usize, lit, real, Real};
use crate::specfun::{hyp2f1, hyp2f1_derivative, pochhammer, HypParams};

/// Sign `σ` in `c_k ∝ f̂(σk)`, as confirmed by [`calibrate_orientation`].
pub const FOURIER_ORIENTATION: i64 = 1;

/// Finitely supported coefficients `c_m`, `|m| <= max_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeq<T: Real> {
    max_m: usize,
    coeffs: BTreeMap<i64, Complex<T>>,
}

impl<T: Real> CoefficientSeq<T> {
    pub fn new(max_m: usize, coeffs: impl IntoIterator<Item = (i64, Complex<T>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, c) in coeffs {
            if m.unsigned_abs() as usize > max_m {
                return Err(Error::InvalidArgument(format!("index {m} exceeds truncation {max_m}")));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidArgument(format!("coefficient {m} is not finite")));
            }
            *map.entry(m).or_insert_with(|| Complex::new(T::zero(), T::zero())) += c;
        }
        Ok(Self { max_m, coeffs: map })
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn get(&self, m: i64) -> Complex<T> {
        self.coeffs.get(&m).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }
}

/// Hypergeometric profile of index `m` with its `x`-derivative.
fn profile<T: Real>(params: &ParamPair<T>, m: i64, x: T, with_derivative: bool) -> Result<(Complex<T>, Complex<T>)> {
    let n = m.unsigned_abs() as usize;
    let (a, b) = if m >= 0 {
        (-params.alpha, real::<T>(from_usize(n)) - params.beta)
    } else {
        (-params.beta, real::<T>(from_usize(n)) - params.alpha)
    };
    let c = real::<T>(from_usize(n + 1));
    let f = hyp2f1(&HypParams::new(a, b, c, x)?)?;
    let df = if with_derivative { hyp2f1_derivative(a, b, c, x)? } else { Complex::default() };
    Ok((f, df))
}

pub fn eval_series<T: Real>(params: &ParamPair<T>, coeffs: &CoefficientSeq<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
    let zc = z.to_complex();
    let x = z.r * z.r;
    coeffs.iter().try_fold(Complex::default(), |acc, (m, c)| {
        let (f, _) = profile(params, m, x, false)?;
        let power = if m >= 0 { zc.powu(m as u32) } else { zc.conj().powu((-m) as u32) };
        Ok(acc + c * f * power)
    })
}

/// `(w, ∂_z w, ∂_z̄ w)` of the series.
pub fn eval_series_gradient<T: Real>(
    params: &ParamPair<T>,
    coeffs: &CoefficientSeq<T>,
    z: &DiskPoint<T>,
) -> Result<(Complex<T>, Complex<T>, Complex<T>)> {
    let zc = z.to_complex();
    let zb = zc.conj();
    let x = z.r * z.r;
    let zero = Complex::default();
    coeffs.iter().try_fold((zero, zero, zero), |(w, wz, wzb), (m, c)| {
        let (f, df) = profile(params, m, x, true)?;
        let n = m.unsigned_abs() as u32;
        let nf = lit::<T>(n as f64);
        let (v, dz, dzb) = if m >= 0 {
            let pw = zc.powu(n);
            let lower = if n > 0 { zc.powu(n - 1) * nf } else { zero };
            (f * pw, df * zb * pw + f * lower, df * zc * pw)
        } else {
            let pw = zb.powu(n);
            let lower = zb.powu(n - 1) * nf;
            (f * pw, df * zb * pw, df * zc * pw + f * lower)
        };
        Ok((w + c * v, wz + c * dz, wzb + c * dzb))
    })
}

/// Truncation used when none is given: the Fourier degree, or `N/2 - 1`
/// for `N` samples.
pub fn default_truncation<T: Real>(f: &BoundaryFunction<T>) -> usize {
    match f {
        BoundaryFunction::Samples(s) => s.values().len() / 2 - 1,
        _ => f.degree(),
    }
}

fn coeffs_oriented<T: Real>(
    params: &ParamPair<T>,
    f: &BoundaryFunction<T>,
    max_m: usize,
    sigma: i64,
) -> Result<CoefficientSeq<T>> {
    let n = 4 * max_m.max(8);
    let mut hat = f.sample(n);
    FftPlanner::new().plan_fft_forward(n).process(&mut hat);
    let scale = from_usize::<T>(n).recip();
    let fhat = |k: i64| hat[k.rem_euclid(n as i64) as usize] * scale;
    let c = c_const(params)?;
    let one = T::one();
    let mut out = Vec::with_capacity(2 * max_m + 1);
    let mut ratio_a = real(one);
    let mut ratio_b = real(one);
    for k in 0..=max_m as i64 {
        if k > 0 {
            let kf = lit::<T>(k as f64);
            ratio_a = ratio_a * (params.alpha + kf) / kf;
            ratio_b = ratio_b * (params.beta + kf) / kf;
        }
        out.push((k, c * ratio_a * fhat(sigma * k)));
        if k > 0 {
            out.push((-k, c * ratio_b * fhat(-sigma * k)));
        }
    }
    CoefficientSeq::new(max_m, out.into_iter().filter(|(_, v)| v.norm() != T::zero()))
}

/// `c_k = c_{α,β} (α+1)_k/k! f̂(k)` and `c_{-k} = c_{α,β} (β+1)_k/k! f̂(-k)` for
/// `k <= max_m`.
pub fn coeffs_from_boundary<T: Real>(
    params: &ParamPair<T>,
    f: &BoundaryFunction<T>,
    max_m: usize,
) -> Result<CoefficientSeq<T>> {
    coeffs_oriented(params, f, max_m, FOURIER_ORIENTATION)
}

/// `(α+1)_k / k!`.
pub fn pochhammer_ratio<T: Real>(a: Complex<T>, k: usize) -> Complex<T> {
    let fact = (1..=k).fold(T::one(), |acc, j| acc * from_usize::<T>(j));
    pochhammer(a + T::one(), k) / fact
}

/// Determines the orientation sign by comparing both candidates against the
/// quadrature extension of `e^{it}` and `e^{2it} + 0.5 e^{-it}`.
pub fn calibrate_orientation() -> Result<i64> {
    let params = ParamPair::new(Complex::new(0.6, 0.2), Complex::new(0.3, -0.1))?;
    let f = BoundaryFunction::fourier([(2, Complex::new(1.0, 0.0)), (-1, Complex::new(0.5, 0.0))]);
    let solver = PoissonSolver::new(params)?;
    let z = DiskPoint::new(0.55, 0.9)?;
    let reference = solver.extend(&f, &z)?;
    let err = |sigma| -> Result<f64> {
        let coeffs = coeffs_oriented(&params, &f, 2, sigma)?;
        Ok((eval_series(&params, &coeffs, &z)? - reference).norm())
    };
    Ok(if err(1)? <= err(-1)? { 1 } else { -1 })
}

/// The operator `D = z∂_z - z̄∂_z̄` on coefficients: `c_m ↦ m c_m`.
pub fn apply_d<T: Real>(coeffs: &CoefficientSeq<T>) -> CoefficientSeq<T> {
    let map = coeffs
        .iter()
        .map(|(m, c)| (m, c * lit::<T>(m as f64)))
        .filter(|(_, c)| c.norm() != T::zero())
        .collect();
    CoefficientSeq { max_m: coeffs.max_m, coeffs: map }
}
