//! Boundary data on the unit circle.

use std::collections::BTreeMap;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, lit, Real};

/// Grid size used for `L^p` norms of boundary data.
pub const NORM_GRID: usize = 4096;

/// An exponent `p ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent<T: Real> {
    Finite(T),
    Infinite,
}

impl<T: Real> Exponent<T> {
    /// Accepts `p >= 1` or `p = +∞`.
    pub fn new(p: T) -> Result<Self> {
        if p == T::infinity() {
            Ok(Self::Infinite)
        } else if p.is_finite() && p >= T::one() {
            Ok(Self::Finite(p))
        } else {
            Err(Error::InvalidArgument(format!("exponent p = {p} must lie in [1, inf]")))
        }
    }

    /// Hölder conjugate `q = p/(p-1)`.
    pub fn conjugate(&self) -> Self {
        match *self {
            Self::Infinite => Self::Finite(T::one()),
            Self::Finite(p) if p == T::one() => Self::Infinite,
            Self::Finite(p) => Self::Finite(p / (p - T::one())),
        }
    }

    /// `p` as a scalar (`+∞` for the infinite exponent).
    pub fn value(&self) -> T {
        match *self {
            Self::Finite(p) => p,
            Self::Infinite => T::infinity(),
        }
    }

    /// `1/p` (zero for `p = ∞`).
    pub fn recip(&self) -> T {
        match *self {
            Self::Finite(p) => p.recip(),
            Self::Infinite => T::zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(*self, Self::Finite(p) if p == T::one())
    }

    /// `M_p` of a list of moduli sampled uniformly on a circle.
    pub fn mean_of(&self, moduli: impl Iterator<Item = T>) -> T {
        match *self {
            Self::Infinite => moduli.fold(T::zero(), T::max),
            Self::Finite(p) => {
                let (sum, n) = moduli.fold((T::zero(), 0usize), |(s, n), m| (s + m.powf(p), n + 1));
                (sum / from_usize(n)).powf(p.recip())
            }
        }
    }
}

/// A continuous function on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryFunction<T: Real> {
    Constant(Complex<T>),
    /// Finite two-sided Fourier series `Σ a_m e^{imt}`.
    Fourier(BTreeMap<i64, Complex<T>>),
    /// Uniform samples at `t_j = 2πj/N`, interpreted through their
    /// trigonometric interpolant.
    Samples(SampledBoundary<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledBoundary<T: Real> {
    values: Vec<Complex<T>>,
    coeffs: BTreeMap<i64, Complex<T>>,
}

impl<T: Real> SampledBoundary<T> {
    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }
}

impl<T: Real> BoundaryFunction<T> {
    pub fn constant(value: Complex<T>) -> Self {
        Self::Constant(value)
    }

    pub fn fourier(coeffs: impl IntoIterator<Item = (i64, Complex<T>)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in coeffs {
            *map.entry(m).or_insert_with(|| Complex::new(T::zero(), T::zero())) += c;
        }
        Self::Fourier(map)
    }

    /// The single mode `e^{imt}`.
    pub fn mode(m: i64) -> Self {
        Self::fourier([(m, Complex::new(T::one(), T::zero()))])
    }

    /// Samples at `2πj/N`; `N >= 8` must be a power of two.
    pub fn samples(values: Vec<Complex<T>>) -> Result<Self> {
        let n = values.len();
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidBoundary(format!(
                "sample count {n} must be a power of two >= 8"
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidBoundary("non-finite sample".into()));
        }
        let coeffs = interpolant_coefficients(&values);
        Ok(Self::Samples(SampledBoundary { values, coeffs }))
    }

    /// Samples a closure at `N` uniform nodes.
    pub fn from_fn(n: usize, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let nf = from_usize::<T>(n);
        let values = (0..n)
            .map(|j| f((T::PI() + T::PI()) * from_usize::<T>(j) / nf))
            .collect();
        Self::samples(values)
    }

    /// Largest |m| with a (possibly) nonzero Fourier coefficient.
    pub fn degree(&self) -> usize {
        match self {
            Self::Constant(_) => 0,
            Self::Fourier(map) => map.keys().map(|m| m.unsigned_abs() as usize).max().unwrap_or(0),
            Self::Samples(s) => s.values.len() / 2,
        }
    }

    /// Fourier coefficient `(1/2π) ∫ f e^{-ikt} dt` of the representation.
    pub fn coefficient(&self, k: i64) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        match self {
            Self::Constant(c) => {
                if k == 0 {
                    *c
                } else {
                    zero
                }
            }
            Self::Fourier(map) => map.get(&k).copied().unwrap_or(zero),
            Self::Samples(s) => s.coeffs.get(&k).copied().unwrap_or(zero),
        }
    }

    /// All nonzero Fourier coefficients.
    pub fn coefficients(&self) -> BTreeMap<i64, Complex<T>> {
        match self {
            Self::Constant(c) => BTreeMap::from([(0, *c)]),
            Self::Fourier(map) => map.clone(),
            Self::Samples(s) => s.coeffs.clone(),
        }
    }

    pub fn eval(&self, t: T) -> Complex<T> {
        match self {
            Self::Constant(c) => *c,
            Self::Fourier(map) => eval_series(map, t),
            Self::Samples(s) => eval_series(&s.coeffs, t),
        }
    }

    /// Values at `t_j = 2πj/n`, exact for the representation whenever
    /// `n >= 2 · degree`.
    pub fn sample(&self, n: usize) -> Vec<Complex<T>> {
        match self {
            Self::Constant(c) => vec![*c; n],
            Self::Samples(s) if n <= s.values.len() && s.values.len() % n == 0 => {
                let stride = s.values.len() / n;
                s.values.iter().step_by(stride).copied().collect()
            }
            Self::Fourier(map) => synthesize(map, n),
            Self::Samples(s) => synthesize(&s.coeffs, n),
        }
    }

    /// `‖f‖_{L^p}` on a uniform grid of at least [`NORM_GRID`] nodes. For
    /// `p = ∞` the grid maximum is refined by local golden-section search.
    pub fn lp_norm(&self, p: Exponent<T>) -> T {
        if let Self::Constant(c) = self {
            return c.norm();
        }
        let n = NORM_GRID.max((4 * self.degree()).next_power_of_two());
        let values = self.sample(n);
        match p {
            Exponent::Finite(_) => p.mean_of(values.iter().map(|v| v.norm())),
            Exponent::Infinite => self.refined_sup(&values),
        }
    }

    /// `‖f‖_{L²}` by Parseval from the Fourier coefficients.
    pub fn l2_norm_parseval(&self) -> T {
        self.coefficients()
            .values()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
            .sqrt()
    }

    fn refined_sup(&self, values: &[Complex<T>]) -> T {
        let n = values.len();
        let grid_max = values.iter().map(|v| v.norm()).fold(T::zero(), T::max);
        let h = (T::PI() + T::PI()) / from_usize(n);
        let mut peaks: Vec<(T, usize)> = (0..n)
            .filter(|&j| {
                let m = values[j].norm();
                m >= values[(j + n - 1) % n].norm() && m >= values[(j + 1) % n].norm()
            })
            .map(|j| (values[j].norm(), j))
            .collect();
        peaks.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
        let mut best = grid_max;
        for &(_, j) in peaks.iter().take(8) {
            let t0 = h * from_usize(j);
            best = best.max(golden_max(|t| self.eval(t).norm(), t0 - h, t0 + h));
        }
        best
    }

    /// `a·f + b·g` as a Fourier-represented function.
    pub fn linear_combination(a: Complex<T>, f: &Self, b: Complex<T>, g: &Self) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in f.coefficients() {
            *map.entry(m).or_insert_with(|| Complex::new(T::zero(), T::zero())) += a * c;
        }
        for (m, c) in g.coefficients() {
            *map.entry(m).or_insert_with(|| Complex::new(T::zero(), T::zero())) += b * c;
        }
        Self::Fourier(map)
    }
}

fn eval_series<T: Real>(coeffs: &BTreeMap<i64, Complex<T>>, t: T) -> Complex<T> {
    coeffs.iter().fold(Complex::new(T::zero(), T::zero()), |acc, (&m, &c)| {
        acc + c * cis(t * lit::<T>(m as f64))
    })
}

/// Values of `Σ c_m e^{i m t_j}` at `n` uniform nodes. Modes are folded modulo
/// `n`, which is exact when `n > 2 · max|m|` (or `=` with a split Nyquist mode).
fn synthesize<T: Real>(coeffs: &BTreeMap<i64, Complex<T>>, n: usize) -> Vec<Complex<T>> {
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for (&m, &c) in coeffs {
        buf[m.rem_euclid(n as i64) as usize] += c;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf
}

/// Fourier coefficients of the trigonometric interpolant of `N` samples,
/// with the Nyquist mode split evenly between `±N/2`.
fn interpolant_coefficients<T: Real>(values: &[Complex<T>]) -> BTreeMap<i64, Complex<T>> {
    let n = values.len();
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = from_usize::<T>(n).recip();
    let half = n / 2;
    let mut map = BTreeMap::new();
    for (k, v) in buf.into_iter().enumerate() {
        let v = v * scale;
        if k < half {
            map.insert(k as i64, v);
        } else if k > half {
            map.insert(k as i64 - n as i64, v);
        } else {
            let split = v * lit::<T>(0.5);
            map.insert(half as i64, split);
            map.insert(-(half as i64), split);
        }
    }
    map
}

fn golden_max<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T) -> T {
    let ratio = lit::<T>(0.618_033_988_749_894_8);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}
