//! The canonical (α,β)-harmonic function
//!
//! ```text
//! u_{α,β}(z) = (1-|z|²)^{α+β+1} / ((1-z)^{α+1} (1-z̄)^{β+1})
//! ```
//!
//! the Poisson kernel `K_{α,β} = c_{α,β} u_{α,β}`, their Wirtinger derivatives
//! and pointwise modulus bounds. Complex powers use the principal logarithm;
//! `1-z` and `1-z̄` have positive real part on the disk so the branch is
//! continuous there.

mod terms;

use num_complex::Complex;

pub use terms::{KernelTerm, TermSum};

use crate::error::{Error, Result};
use crate::scalar::{cis, from_usize, lit, near_nonpositive_int, real, Real};
use crate::specfun::gamma;

/// Margin used when rejecting parameters at negative integers.
pub const PARAM_TOL: f64 = 1e-9;

/// Highest total derivative order `k + l` supported by [`u_higher_deriv`].
pub const MAX_DERIV_ORDER: u32 = 4;

/// The parameter pair `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPair<T: Real> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
}

impl<T: Real> ParamPair<T> {
    /// Validates `α, β ∉ {-1, -2, ...}` and `Re(α+β) > -1`.
    pub fn new(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        let tol = lit(PARAM_TOL);
        let one = T::one();
        if near_nonpositive_int(alpha + one, tol) {
            return Err(Error::InvalidParams(format!(
                "alpha = {alpha} is a negative integer"
            )));
        }
        if near_nonpositive_int(beta + one, tol) {
            return Err(Error::InvalidParams(format!(
                "beta = {beta} is a negative integer"
            )));
        }
        if !((alpha + beta).re > -one) {
            return Err(Error::InvalidParams(format!(
                "Re(alpha + beta) = {} must exceed -1",
                (alpha + beta).re
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn real(alpha: T, beta: T) -> Result<Self> {
        Self::new(real(alpha), real(beta))
    }

    /// `Re(α + β)`.
    pub fn sum_re(&self) -> T {
        (self.alpha + self.beta).re
    }

    /// `exp((π/2) |Im(α - β)|)`.
    pub fn imag_factor(&self) -> T {
        (T::FRAC_PI_2() * (self.alpha - self.beta).im.abs()).exp()
    }

    pub fn is_real(&self) -> bool {
        self.alpha.im == T::zero() && self.beta.im == T::zero()
    }

    /// `(β, α)`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }
}

/// A point `z = r e^{iθ}` of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint<T: Real> {
    pub r: T,
    pub theta: T,
}

impl<T: Real> DiskPoint<T> {
    pub fn new(r: T, theta: T) -> Result<Self> {
        if !(r >= T::zero() && r < T::one()) || !theta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "disk point (r = {r}, theta = {theta}) needs 0 <= r < 1"
            )));
        }
        Ok(Self { r, theta })
    }

    pub fn from_complex(z: Complex<T>) -> Result<Self> {
        Self::new(z.norm(), z.arg())
    }

    pub fn to_complex(&self) -> Complex<T> {
        cis(self.theta) * self.r
    }
}

/// `c_{α,β} = Γ(α+1) Γ(β+1) / Γ(α+β+1)`.
pub fn c_const<T: Real>(params: &ParamPair<T>) -> Result<Complex<T>> {
    let one = T::one();
    Ok(gamma(params.alpha + one)? * gamma(params.beta + one)?
        / gamma(params.alpha + params.beta + one)?)
}

/// `u_{α,β}` at an arbitrary complex point with `|z| < 1`.
pub fn u_at<T: Real>(params: &ParamPair<T>, z: Complex<T>) -> Complex<T> {
    let one = T::one();
    let log_w = (one - z.norm_sqr()).ln();
    let l = (real(one) - z).ln();
    let s = params.alpha + params.beta + one;
    (s * log_w - (params.alpha + one) * l - (params.beta + one) * l.conj()).exp()
}

/// `(u, ∂_z u, ∂_z̄ u)` at a complex point, sharing one evaluation of `u`.
pub fn u_gradient_at<T: Real>(
    params: &ParamPair<T>,
    z: Complex<T>,
) -> (Complex<T>, Complex<T>, Complex<T>) {
    let one = real(T::one());
    let u = u_at(params, z);
    let w = T::one() - z.norm_sqr();
    let zb = z.conj();
    let dz = ((params.alpha + one) * (one - zb) / ((one - z) * w) - params.beta * zb / w) * u;
    let dzbar = ((params.beta + one) * (one - z) / ((one - zb) * w) - params.alpha * z / w) * u;
    (u, dz, dzbar)
}

pub fn u_value<T: Real>(params: &ParamPair<T>, z: &DiskPoint<T>) -> Complex<T> {
    u_at(params, z.to_complex())
}

/// `K_{α,β}(z) = c_{α,β} u_{α,β}(z)`.
pub fn kernel_value<T: Real>(params: &ParamPair<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
    Ok(c_const(params)? * u_value(params, z))
}

pub fn u_dz<T: Real>(params: &ParamPair<T>, z: &DiskPoint<T>) -> Complex<T> {
    u_gradient_at(params, z.to_complex()).1
}

pub fn u_dzbar<T: Real>(params: &ParamPair<T>, z: &DiskPoint<T>) -> Complex<T> {
    u_gradient_at(params, z.to_complex()).2
}

/// `∂_z^k ∂_z̄^l u_{α,β}(z)` for `k + l <= 4`, evaluated exactly from the
/// symbolic expansion.
pub fn u_higher_deriv<T: Real>(
    params: &ParamPair<T>,
    z: &DiskPoint<T>,
    k: u32,
    l: u32,
) -> Result<Complex<T>> {
    check_order(k, l)?;
    Ok(TermSum::derivative(params, k, l).eval(z.to_complex()))
}

pub(crate) fn check_order(k: u32, l: u32) -> Result<()> {
    if k + l > MAX_DERIV_ORDER {
        Err(Error::OrderTooHigh(k + l))
    } else {
        Ok(())
    }
}

/// `exp((π/2)|Im(α-β)|) (1-|z|²)^{Re(α+β)+1} / |1-z|^{Re(α+β)+2}`, an upper
/// bound for `|u_{α,β}(z)|`.
pub fn u_modulus_bound<T: Real>(params: &ParamPair<T>, z: &DiskPoint<T>) -> T {
    modulus_bound_at(params, z.to_complex())
}

pub(crate) fn modulus_bound_at<T: Real>(params: &ParamPair<T>, z: Complex<T>) -> T {
    let one = T::one();
    let s = params.sum_re();
    let dist = (real(one) - z).norm();
    params.imag_factor() * (one - z.norm_sqr()).powf(s + one) / dist.powf(s + one + one)
}

/// Grid used by [`estimate_ckl`]: 64 radii up to 0.99 and 256 angles.
pub const CKL_RADII: usize = 64;
pub const CKL_ANGLES: usize = 256;
pub const CKL_R_MAX: f64 = 0.99;

/// Lower estimate of the constant in `|∂^k ∂̄^l u| <= C |u| / (1-|z|²)^{k+l}`:
/// the maximum of the ratio over the default polar grid.
pub fn estimate_ckl<T: Real>(params: &ParamPair<T>, k: u32, l: u32) -> Result<T> {
    estimate_ckl_on_grid(params, k, l, CKL_RADII, CKL_ANGLES, lit(CKL_R_MAX))
}

/// [`estimate_ckl`] on radii `r_max (i+1)/n_radii` and angles `2πj/n_angles`.
pub fn estimate_ckl_on_grid<T: Real>(
    params: &ParamPair<T>,
    k: u32,
    l: u32,
    n_radii: usize,
    n_angles: usize,
    r_max: T,
) -> Result<T> {
    check_order(k, l)?;
    if k + l == 0 {
        return Ok(T::one());
    }
    let deriv = TermSum::derivative(params, k, l);
    let n_r = from_usize::<T>(n_radii);
    let n_a = from_usize::<T>(n_angles);
    let mut best = T::zero();
    for i in 0..n_radii {
        let r = r_max * from_usize::<T>(i + 1) / n_r;
        let weight = (T::one() - r * r).powi((k + l) as i32);
        for j in 0..n_angles {
            let theta = (T::PI() + T::PI()) * from_usize::<T>(j) / n_a;
            let z = cis(theta) * r;
            let ratio = deriv.eval(z).norm() * weight / u_at(params, z).norm();
            if ratio > best {
                best = ratio;
            }
        }
    }
    if !best.is_finite() {
        return Err(Error::NonFinite(format!("C_(k={k},l={l}) estimate")));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numdiff::wirtinger;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::convert::Infallible;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn pp(a: C, b: C) -> ParamPair<f64> {
        ParamPair::new(a, b).unwrap()
    }

    fn pr(a: f64, b: f64) -> ParamPair<f64> {
        ParamPair::real(a, b).unwrap()
    }

    fn pt(r: f64, t: f64) -> DiskPoint<f64> {
        DiskPoint::new(r, t).unwrap()
    }

    fn random_params(rng: &mut ChaCha8Rng, complex: bool) -> ParamPair<f64> {
        loop {
            let im = |rng: &mut ChaCha8Rng| if complex { rng.random_range(-1.5..1.5) } else { 0.0 };
            let a = C::new(rng.random_range(-0.9..2.5), im(rng));
            let b = C::new(rng.random_range(-0.9..2.5), im(rng));
            if let Ok(p) = ParamPair::new(a, b) {
                if p.sum_re() > -0.8 {
                    return p;
                }
            }
        }
    }

    fn random_point(rng: &mut ChaCha8Rng, r_max: f64) -> C {
        let r = r_max * rng.random::<f64>().sqrt();
        C::from_polar(r, rng.random_range(0.0..2.0 * PI))
    }

    #[test]
    fn param_validation() {
        assert!(ParamPair::<f64>::real(-1.0, 0.5).is_err());
        assert!(ParamPair::<f64>::real(0.5, -2.0).is_err());
        assert!(ParamPair::<f64>::real(-0.6, -0.6).is_err());
        assert!(ParamPair::<f64>::real(0.0, -0.5).is_ok());
        let e = ParamPair::<f64>::real(-0.5, -0.7).unwrap_err();
        assert!(e.to_string().contains("Re(alpha + beta)"));
        assert!(DiskPoint::<f64>::new(1.0, 0.0).is_err());
    }

    #[test]
    fn normalisation_constant_examples() {
        assert!((c_const(&pr(0.0, 0.0)).unwrap() - C::new(1.0, 0.0)).norm() < 1e-14);
        assert!((c_const(&pr(1.0, 1.0)).unwrap() - C::new(0.5, 0.0)).norm() < 1e-14);
        assert!((c_const(&pr(0.5, 0.5)).unwrap() - C::new(PI / 4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn u_value_examples() {
        let p = pp(C::new(0.3, 1.1), C::new(0.7, -0.2));
        assert!((u_value(&p, &pt(0.0, 0.0)) - C::new(1.0, 0.0)).norm() < 1e-15);
        let z = pt(0.6, 1.3);
        let zc = z.to_complex();
        let poisson = (1.0 - 0.36) / (C::new(1.0, 0.0) - zc).norm_sqr();
        assert!((u_value(&pr(0.0, 0.0), &z) - C::new(poisson, 0.0)).norm() < 1e-13);
        let want = 0.75f64.powf(2.5) / 0.5f64.powf(3.5);
        assert!((u_value(&pr(1.0, 0.5), &pt(0.5, 0.0)) - C::new(want, 0.0)).norm() < 1e-13 * want);
    }

    #[test]
    fn kernel_value_examples() {
        let z = pt(0.3, 0.0);
        assert!((kernel_value(&pr(1.0, 1.0), &z).unwrap() - u_value(&pr(1.0, 1.0), &z) * 0.5).norm() < 1e-14);
        let p = pr(0.5, 0.5);
        assert!((kernel_value(&p, &pt(0.0, 0.0)).unwrap() - c_const(&p).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn first_derivatives_at_origin() {
        let p = pp(C::new(0.4, 0.3), C::new(-0.2, 0.9));
        let o = pt(0.0, 0.0);
        assert!((u_dz(&p, &o) - (p.alpha + 1.0)).norm() < 1e-14);
        assert!((u_dzbar(&p, &o) - (p.beta + 1.0)).norm() < 1e-14);
    }

    #[test]
    fn first_derivatives_match_finite_differences() {
        let p = pr(0.7, 0.2);
        let z = pt(0.4, PI / 3.0);
        let (fz, fzb) = wirtinger(|w| Ok::<_, Infallible>(u_at(&p, w)), z.to_complex(), 1e-5).unwrap();
        let rel = |a: C, b: C| (a - b).norm() / b.norm();
        assert!(rel(u_dz(&p, &z), fz) < 1e-6);
        assert!(rel(u_dzbar(&p, &z), fzb) < 1e-6);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..100 {
            let p = random_params(&mut rng, n % 2 == 1);
            let z = random_point(&mut rng, 0.85);
            let (_, dz, dzb) = u_gradient_at(&p, z);
            let (fz, fzb) = wirtinger(|w| Ok::<_, Infallible>(u_at(&p, w)), z, 1e-5).unwrap();
            assert!(rel(dz, fz) < 1e-6, "{p:?} {z}");
            assert!(rel(dzb, fzb) < 1e-6, "{p:?} {z}");
        }
    }

    #[test]
    fn higher_derivatives_agree_with_closed_forms() {
        let p = pp(C::new(0.7, 0.3), C::new(0.2, -0.5));
        for z in [pt(0.2, 0.4), pt(0.7, 2.0), pt(0.95, -1.0)] {
            let d00 = u_higher_deriv(&p, &z, 0, 0).unwrap();
            assert!((d00 - u_value(&p, &z)).norm() <= 1e-13 * d00.norm());
            let d10 = u_higher_deriv(&p, &z, 1, 0).unwrap();
            assert!((d10 - u_dz(&p, &z)).norm() <= 1e-12 * d10.norm());
            let d01 = u_higher_deriv(&p, &z, 0, 1).unwrap();
            assert!((d01 - u_dzbar(&p, &z)).norm() <= 1e-12 * d01.norm());
        }
        assert!(matches!(u_higher_deriv(&p, &pt(0.1, 0.0), 3, 2), Err(Error::OrderTooHigh(5))));
    }

    #[test]
    fn mixed_derivative_matches_nested_differences() {
        let p = pr(0.5, 0.5);
        let z = C::new(0.3, 0.0);
        let h = 1e-4;
        // ∂_z̄ of the exact ∂_z, by central differences.
        let dz = |w: C| Ok::<_, Infallible>(u_gradient_at(&p, w).1);
        let (_, fd) = wirtinger(dz, z, h).unwrap();
        let exact = u_higher_deriv(&p, &DiskPoint::from_complex(z).unwrap(), 1, 1).unwrap();
        assert!((exact - fd).norm() / exact.norm() < 1e-4);
    }

    #[test]
    fn modulus_bound_examples() {
        let p = pr(0.8, 0.8);
        for r in [0.1, 0.5, -0.7] {
            let z = DiskPoint::from_complex(C::new(r, 0.0)).unwrap();
            let b = u_modulus_bound(&p, &z);
            assert!((b - u_value(&p, &z).norm()).abs() <= 1e-13 * b);
        }
        let z = pt(0.6, 0.9);
        let zc = z.to_complex();
        let classical = (1.0 - 0.36) / (C::new(1.0, 0.0) - zc).norm_sqr();
        assert!((u_modulus_bound(&pr(0.0, 0.0), &z) - classical).abs() < 1e-13);

        let p = pp(C::new(1.0, 1.0), C::new(1.0, -1.0));
        let z = pt(0.5, 1.0);
        assert!(u_value(&p, &z).norm() <= u_modulus_bound(&p, &z));
    }

    #[test]
    fn modulus_bound_holds_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..20 {
            let p = random_params(&mut rng, n >= 10);
            for _ in 0..10_000 {
                let z = random_point(&mut rng, 0.999);
                let u = u_at(&p, z).norm();
                let b = modulus_bound_at(&p, z);
                assert!(u <= b * (1.0 + 1e-12), "{p:?} {z}: {u} > {b}");
            }
        }
    }

    #[test]
    fn conjugation_swaps_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = random_params(&mut rng, false);
            let z = random_point(&mut rng, 0.95);
            let lhs = u_at(&p, z).conj();
            let rhs = u_at(&p.swapped(), z);
            assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }
    }

    #[test]
    fn u_is_annihilated_by_the_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..100 {
            let p = random_params(&mut rng, n % 2 == 0);
            let z = random_point(&mut rng, 0.95);
            let d = DiskPoint::from_complex(z).unwrap();
            let u = u_higher_deriv(&p, &d, 0, 0).unwrap();
            let uz = u_higher_deriv(&p, &d, 1, 0).unwrap();
            let uzb = u_higher_deriv(&p, &d, 0, 1).unwrap();
            let uzzb = u_higher_deriv(&p, &d, 1, 1).unwrap();
            let res = uzzb * (1.0 - z.norm_sqr()) + p.alpha * z * uz + p.beta * z.conj() * uzb
                - p.alpha * p.beta * u;
            assert!(res.norm() <= 1e-8 * (1.0 + u.norm()), "{p:?} {z}: {res}");
        }
    }

    #[test]
    fn ckl_estimate_examples() {
        let p = pp(C::new(0.4, 0.2), C::new(1.2, 0.0));
        assert_eq!(estimate_ckl(&p, 0, 0).unwrap(), 1.0);

        // Brute-force grid maximisation of |u_z|(1-|z|²)/|u| for the classical kernel.
        let classical = pr(0.0, 0.0);
        let mut best: f64 = 0.0;
        for i in 0..CKL_RADII {
            let r = 0.99 * (i + 1) as f64 / CKL_RADII as f64;
            for j in 0..CKL_ANGLES {
                let z = C::from_polar(r, 2.0 * PI * j as f64 / CKL_ANGLES as f64);
                let one = C::new(1.0, 0.0);
                // ∂_z [(1-|z|²)/|1-z|²] = 1/(1-z)²
                let uz = one / (one - z).powi(2);
                let u = (1.0 - r * r) / (one - z).norm_sqr();
                best = best.max(uz.norm() * (1.0 - r * r) / u);
            }
        }
        let est = estimate_ckl(&classical, 1, 0).unwrap();
        assert!((est - best).abs() < 1e-12, "{est} vs {best}");
        assert!((est - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ckl_estimate_grows_under_refinement() {
        let p = pp(C::new(0.6, 0.4), C::new(0.3, -0.2));
        for (k, l) in [(1, 0), (1, 1), (0, 2)] {
            let coarse = estimate_ckl_on_grid(&p, k, l, 32, 128, 0.99).unwrap();
            let fine = estimate_ckl_on_grid(&p, k, l, 64, 256, 0.99).unwrap();
            assert!(fine >= coarse);
        }
    }

    #[test]
    fn single_precision_kernel() {
        let p = ParamPair::<f32>::real(1.0, 0.5).unwrap();
        let v = u_value(&p, &DiskPoint::new(0.5f32, 0.0).unwrap());
        let want = 0.75f32.powf(2.5) / 0.5f32.powf(3.5);
        assert!((v.re - want).abs() < 1e-4 * want);
    }
}
