//! Complex Gamma, digamma, Pochhammer symbol and the Gauss hypergeometric
//! function `F(a, b; c; x)` for complex parameters and real `0 <= x < 1`.
//!
//! `hyp2f1` sums the power series directly for `x <= 0.75`. Above that it maps
//! to `1 - x`: the two-term connection formula when `c - a - b` is not an
//! integer, and the logarithmic forms (Abramowitz & Stegun 15.3.10/15.3.11)
//! when it is. Terminating series (`a` or `b` a non-positive integer) are
//! always summed exactly.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{
    from_usize, is_nonpositive_int, lit, near_nonpositive_int, real, Real,
};

/// Iteration cap for every hypergeometric series.
pub const MAX_TERMS: usize = 100_000;

/// Above this argument the series is rewritten in terms of `1 - x`.
pub const TRANSFORM_THRESHOLD: f64 = 0.75;

/// Inputs closer than this to `0, -1, -2, ...` are treated as poles.
pub const POLE_TOL: f64 = 1e-9;

const INTEGER_GAP_TOL: f64 = 1e-10;
const NEAR_INTEGER_GAP: f64 = 1e-4;
const NEAR_INTEGER_DIRECT_MAX_X: f64 = 0.98;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Γ(z) by the Lanczos approximation (g = 7, 9 terms) with reflection for
/// `Re z < 1/2`.
pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if near_nonpositive_int(z, lit(POLE_TOL)) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    if z.re < half {
        let pi = T::PI();
        return real(pi) / ((z * pi).sin() * gamma_unchecked(real(T::one()) - z));
    }
    let z = z - T::one();
    let mut acc = real(lit::<T>(LANCZOS_COEF[0]));
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += real(lit::<T>(c)) / (z + from_usize::<T>(i));
    }
    let t = z + lit::<T>(LANCZOS_G + 0.5);
    let sqrt_two_pi = (T::PI() + T::PI()).sqrt();
    ((z + half) * t.ln() - t).exp() * acc * sqrt_two_pi
}

/// 1/Γ(z), entire: exactly zero at the poles of Γ.
pub fn rgamma<T: Real>(z: Complex<T>) -> Complex<T> {
    if near_nonpositive_int(z, lit(POLE_TOL)) {
        Complex::new(T::zero(), T::zero())
    } else {
        gamma_unchecked(z).inv()
    }
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if near_nonpositive_int(z, lit(POLE_TOL)) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    Ok(digamma_unchecked(z))
}

fn digamma_unchecked<T: Real>(mut z: Complex<T>) -> Complex<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    let shift = lit::<T>(10.0);
    while z.re < shift {
        acc -= z.inv();
        z += T::one();
    }
    // Asymptotic expansion with Bernoulli numbers B_2 .. B_12.
    const TAIL: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
    ];
    let inv2 = (z * z).inv();
    let mut pow = inv2;
    let mut tail = Complex::new(T::zero(), T::zero());
    for &c in &TAIL {
        tail += pow * lit::<T>(c);
        pow *= inv2;
    }
    acc + z.ln() - z.inv() * lit::<T>(0.5) - tail
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, `(a)_0 = 1`, by direct product.
pub fn pochhammer<T: Real>(a: Complex<T>, n: usize) -> Complex<T> {
    (0..n).fold(real(T::one()), |acc, k| acc * (a + from_usize::<T>(k)))
}

/// Validated argument bundle for [`hyp2f1`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams<T: Real> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub x: T,
}

impl<T: Real> HypParams<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, x: T) -> Result<Self> {
        if near_nonpositive_int(c, lit(POLE_TOL)) {
            return Err(Error::InvalidC(format!("{c}")));
        }
        if !(x >= T::zero() && x < T::one()) {
            return Err(Error::InvalidArgument(format!(
                "hypergeometric argument x = {x} must satisfy 0 <= x < 1"
            )));
        }
        Ok(Self { a, b, c, x })
    }

    /// Real-parameter convenience constructor.
    pub fn real(a: T, b: T, c: T, x: T) -> Result<Self> {
        Self::new(real(a), real(b), real(c), x)
    }
}

/// Gauss hypergeometric function `F(a, b; c; x)`.
pub fn hyp2f1<T: Real>(p: &HypParams<T>) -> Result<Complex<T>> {
    eval(p.a, p.b, p.c, p.x)
}

/// Shorthand for real-parameter evaluation returning the real part.
pub fn hyp2f1_real<T: Real>(a: T, b: T, c: T, x: T) -> Result<T> {
    hyp2f1(&HypParams::real(a, b, c, x)?).map(|v| v.re)
}

fn eval<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, x: T) -> Result<Complex<T>> {
    if x == T::zero() {
        return Ok(real(T::one()));
    }
    if let Some(n) = terminating_degree(a, b) {
        return Ok(polynomial(a, b, c, x, n));
    }
    if x <= lit(TRANSFORM_THRESHOLD) {
        return direct_series(a, b, c, x);
    }
    let d = c - a - b;
    let m = d.re.round();
    let gap = (d - real(m)).norm();
    if gap < lit(INTEGER_GAP_TOL) {
        let m = m.to_i64().expect("integer gap fits in i64");
        integer_gap(a, b, c, x, m)
    } else if gap < lit(NEAR_INTEGER_GAP) && x <= lit(NEAR_INTEGER_DIRECT_MAX_X) {
        direct_series(a, b, c, x)
    } else {
        connection(a, b, c, x)
    }
}

fn terminating_degree<T: Real>(a: Complex<T>, b: Complex<T>) -> Option<usize> {
    match (is_nonpositive_int(a), is_nonpositive_int(b)) {
        (Some(n), Some(m)) => Some(n.min(m)),
        (Some(n), None) | (None, Some(n)) => Some(n),
        (None, None) => None,
    }
}

fn polynomial<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, x: T, n: usize) -> Complex<T> {
    let mut term = real(T::one());
    let mut sum = term;
    for k in 0..n {
        let kf = from_usize::<T>(k);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + T::one())) * x;
        sum += term;
    }
    sum
}

fn direct_series<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    x: T,
) -> Result<Complex<T>> {
    let tol = T::series_tol();
    // Terms can shrink transiently while n is below the parameter moduli.
    let guard = a.norm() + b.norm() + c.norm() + T::one();
    let mut term = real(T::one());
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = from_usize::<T>(n);
        term = term * (a + nf) * (b + nf) / ((c + nf) * (nf + T::one())) * x;
        sum += term;
        if term.norm() == T::zero() {
            return Ok(sum);
        }
        if nf > guard && term.norm() <= tol * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::ConvergenceFailure { terms: MAX_TERMS })
}

/// Two-term `x -> 1 - x` connection formula; `c - a - b` must not be an integer.
fn connection<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, x: T) -> Result<Complex<T>> {
    let one = real(T::one());
    let y = T::one() - x;
    let d = c - a - b;
    let gc = gamma_unchecked(c);
    let wa = gc * gamma_unchecked(d) * rgamma(c - a) * rgamma(c - b);
    let wb = gc * gamma_unchecked(-d) * rgamma(a) * rgamma(b);
    let mut out = Complex::new(T::zero(), T::zero());
    if wa.norm() != T::zero() {
        out += wa * eval(a, b, one - d, y)?;
    }
    if wb.norm() != T::zero() {
        out += wb * (d * y.ln()).exp() * eval(c - a, c - b, one + d, y)?;
    }
    finite(out)
}

/// `c - a - b = m` (integer). Negative `m` goes through Euler's transformation.
fn integer_gap<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    x: T,
    m: i64,
) -> Result<Complex<T>> {
    let y = T::one() - x;
    if m < 0 {
        let d = c - a - b;
        return Ok((d * y.ln()).exp() * eval(c - a, c - b, c, x)?);
    }
    let m = m as usize;
    let mf = from_usize::<T>(m);
    let c = a + b + mf;
    let log_y = y.ln();
    let tol = T::series_tol();
    let guard = a.norm() + b.norm() + mf + T::one();

    if m == 0 {
        let pref = gamma_unchecked(c) * rgamma(a) * rgamma(b);
        let mut coef = real(T::one());
        let mut psi_1 = lit::<T>(-EULER_GAMMA);
        let mut psi_a = digamma_unchecked(a);
        let mut psi_b = digamma_unchecked(b);
        let mut sum = Complex::new(T::zero(), T::zero());
        for n in 0..MAX_TERMS {
            let nf = from_usize::<T>(n);
            let term = coef * (-psi_a - psi_b - log_y + psi_1 + psi_1);
            sum += term;
            if nf > guard && term.norm() <= tol * sum.norm() {
                return finite(pref * sum);
            }
            let n1 = nf + T::one();
            coef = coef * (a + nf) * (b + nf) / (n1 * n1) * y;
            psi_1 += n1.recip();
            psi_a += (a + nf).inv();
            psi_b += (b + nf).inv();
        }
        return Err(Error::ConvergenceFailure { terms: MAX_TERMS });
    }

    // Finite part.
    let one_minus_m = real(T::one() - mf);
    let mut finite_sum = Complex::new(T::zero(), T::zero());
    let mut coef = real(T::one());
    for n in 0..m {
        finite_sum += coef;
        let nf = from_usize::<T>(n);
        coef = coef * (a + nf) * (b + nf) / ((one_minus_m + nf) * (nf + T::one())) * y;
    }
    let factorial_m_minus_1 = (1..m).fold(T::one(), |acc, k| acc * from_usize::<T>(k));
    let gc = gamma_unchecked(c);
    let pref1 = gc * factorial_m_minus_1 * rgamma(a + mf) * rgamma(b + mf);

    // Logarithmic tail.
    let sign = if m % 2 == 0 { T::one() } else { -T::one() };
    let pref2 = gc * rgamma(a) * rgamma(b) * (sign * y.powi(m as i32));
    let mut coef = real((1..=m).fold(T::one(), |acc, k| acc * from_usize::<T>(k)).recip());
    let mut psi_1 = lit::<T>(-EULER_GAMMA);
    let mut psi_m1 = (1..=m).fold(lit::<T>(-EULER_GAMMA), |acc, k| acc + from_usize::<T>(k).recip());
    let mut psi_am = digamma_unchecked(a + mf);
    let mut psi_bm = digamma_unchecked(b + mf);
    let mut tail = Complex::new(T::zero(), T::zero());
    let mut converged = pref2.norm() == T::zero();
    if !converged {
        for n in 0..MAX_TERMS {
            let nf = from_usize::<T>(n);
            let term = coef * (psi_am + psi_bm + log_y - psi_1 - psi_m1);
            tail += term;
            if nf > guard && term.norm() <= tol * tail.norm() {
                converged = true;
                break;
            }
            let n1 = nf + T::one();
            coef = coef * (a + mf + nf) * (b + mf + nf) / (n1 * (n1 + mf)) * y;
            psi_1 += n1.recip();
            psi_m1 += (n1 + mf).recip();
            psi_am += (a + mf + nf).inv();
            psi_bm += (b + mf + nf).inv();
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure { terms: MAX_TERMS });
    }
    finite(pref1 * finite_sum - pref2 * tail)
}

fn finite<T: Real>(v: Complex<T>) -> Result<Complex<T>> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("hypergeometric value {v}")))
    }
}

/// Gauss summation: `lim_{x -> 1} F(a, b; c; x) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`.
pub fn hyp2f1_limit_at_1<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
) -> Result<Complex<T>> {
    let d = c - a - b;
    if d.re <= T::zero() {
        return Err(Error::Precondition(format!(
            "Re(c - a - b) = {} must be positive",
            d.re
        )));
    }
    let tol = lit(POLE_TOL);
    for (name, v) in [("c", c), ("c - a", c - a), ("c - b", c - b)] {
        if near_nonpositive_int(v, tol) {
            return Err(Error::Precondition(format!(
                "{name} = {v} is a non-positive integer"
            )));
        }
    }
    finite(gamma_unchecked(c) * gamma_unchecked(d) / (gamma_unchecked(c - a) * gamma_unchecked(c - b)))
}

/// `d/dx F(a, b; c; x) = (ab/c) F(a+1, b+1; c+1; x)`.
pub fn hyp2f1_derivative<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    x: T,
) -> Result<Complex<T>> {
    let p = HypParams::new(a, b, c, x)?;
    let ab = p.a * p.b;
    if ab.norm() == T::zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let one = T::one();
    Ok(ab / p.c * eval(p.a + one, p.b + one, p.c + one, x)?)
}
