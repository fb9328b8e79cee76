//! Right-hand sides of the integral-mean, gradient and coefficient estimates.

use std::collections::BTreeMap;

use crate::dirichlet::Exponent;
use crate::error::{Error, Result};
use crate::kernel::{c_const, check_order, ParamPair};
use crate::scalar::{from_usize, lit, real, Real};
use crate::series::pochhammer_ratio;
use crate::specfun::{gamma, hyp2f1_real};

/// Nodes of the tanh-sinh rule on each sub-interval in [`c_q`].
pub const C_Q_NODES: usize = 1024;

fn check_radius<T: Real>(r: T) -> Result<()> {
    if r >= T::zero() && r < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("radius {r} outside [0, 1)")))
    }
}

fn check_norm<T: Real>(f_norm: T) -> Result<()> {
    if f_norm >= T::zero() && f_norm.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("boundary norm {f_norm} must be finite and >= 0")))
    }
}

fn finite<T: Real>(v: T, what: &str) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("{what} = {v}")))
    }
}

/// `F(-σ/2, -σ/2; 1; r²)` with `σ = Re(α+β)`.
fn half_sum_profile<T: Real>(params: &ParamPair<T>, r: T) -> Result<T> {
    let h = -params.sum_re() / lit(2.0);
    hyp2f1_real(h, h, T::one(), r * r)
}

/// `F(1 - sq/2, 1 - sq/2; 1; r²)^{1/q}` with `s = Re(α+β) + 2`.
fn gradient_profile<T: Real>(params: &ParamPair<T>, q: T, r: T) -> Result<T> {
    let a = T::one() - (params.sum_re() + lit(2.0)) * q / lit(2.0);
    Ok(hyp2f1_real(a, a, T::one(), r * r)?.powf(q.recip()))
}

/// Finite conjugate exponent, rejecting `p = 1`.
fn finite_conjugate<T: Real>(p: Exponent<T>, what: &str) -> Result<T> {
    match p.conjugate() {
        Exponent::Finite(q) => Ok(q),
        Exponent::Infinite => Err(Error::Precondition(format!("{what} needs p > 1"))),
    }
}

/// `|c_{α,β}| e^{(π/2)|Im(α-β)|} F(-σ/2, -σ/2; 1; r²) ‖f‖`.
pub fn theorem31_rhs<T: Real>(params: &ParamPair<T>, r: T, f_norm: T) -> Result<T> {
    check_radius(r)?;
    check_norm(f_norm)?;
    let c = c_const(params)?.norm();
    finite(c * params.imag_factor() * half_sum_profile(params, r)? * f_norm, "theorem 3.1 bound")
}

/// `B(α,β) = Γ(σ+1) / Γ(σ/2+1)²`, the limit of the profile factor as `r → 1`
/// divided out by `|c_{α,β}|`.
pub fn b_constant<T: Real>(params: &ParamPair<T>) -> Result<T> {
    let s = params.sum_re();
    let num = gamma(real(s + T::one()))?.re;
    let den = gamma(real(s / lit(2.0) + T::one()))?.re;
    finite(num / (den * den), "B(alpha, beta)")
}

/// `|c_{α,β}| e^{(π/2)|Im(α-β)|} B(α,β) ‖f‖`, the radius-free cap (the
/// `r → 1` limit of [`theorem31_rhs`]).
pub fn theorem31_cap_rhs<T: Real>(params: &ParamPair<T>, f_norm: T) -> Result<T> {
    check_norm(f_norm)?;
    let c = c_const(params)?.norm();
    finite(c * params.imag_factor() * b_constant(params)? * f_norm, "theorem 3.1 cap")
}

/// Constants in the gradient estimates for `|w_z|` and `|w_z̄|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientConstants<T: Real> {
    pub c_r: T,
    pub c_const: T,
    pub d_r: T,
    pub d_const: T,
}

impl<T: Real> GradientConstants<T> {
    /// Full right-hand side `K / (1-r²)^{1+1/p} · e^{(π/2)|Im(α-β)|} ‖f‖`.
    pub fn rhs(params: &ParamPair<T>, constant: T, p: Exponent<T>, r: T, f_norm: T) -> T {
        constant * params.imag_factor() * f_norm / (T::one() - r * r).powf(T::one() + p.recip())
    }
}

pub fn theorem32_bounds<T: Real>(params: &ParamPair<T>, p: Exponent<T>, r: T) -> Result<GradientConstants<T>> {
    check_radius(r)?;
    let q = finite_conjugate(p, "the gradient estimate")?;
    let c = c_const(params)?.norm();
    let f1 = gradient_profile(params, q, r)?;
    let sq = (params.sum_re() + lit(2.0)) * q;
    let g = gamma(real(sq / lit(2.0)))?.re;
    let gamma_factor = (gamma(real(sq - T::one()))?.re / (g * g)).powf(q.recip());
    let one = real::<T>(T::one());
    let (a1, b1) = ((params.alpha + one).norm(), params.beta.norm());
    let (b2, a2) = ((params.beta + one).norm(), params.alpha.norm());
    Ok(GradientConstants {
        c_r: finite(c * (a1 + b1 * r) * f1, "C(r)")?,
        c_const: finite(c * (a1 + b1) * gamma_factor, "C")?,
        d_r: finite(c * (b2 + a2 * r) * f1, "D(r)")?,
        d_const: finite(c * (b2 + a2) * gamma_factor, "D")?,
    })
}

/// `|c_{α,β}| C_{k,l} / (1-r²)^{k+l} · e^{(π/2)|Im(α-β)|} F(-σ/2, -σ/2; 1; r²) ‖f‖`.
pub fn theorem33_rhs<T: Real>(params: &ParamPair<T>, r: T, k: u32, l: u32, ckl: T, f_norm: T) -> Result<T> {
    check_order(k, l)?;
    if !(ckl > T::zero() && ckl.is_finite()) {
        return Err(Error::InvalidArgument(format!("constant C_kl = {ckl} must be positive")));
    }
    let base = theorem31_rhs(params, r, f_norm)?;
    finite(base * ckl / (T::one() - r * r).powi((k + l) as i32), "theorem 3.3 bound")
}

/// `C_q = ((1/2π) ∫ |cos kt|^q dt)^{1/q}`, by tanh-sinh quadrature on each of
/// the `2k` arcs between consecutive zeros of `cos kt`.
pub fn c_q<T: Real>(q: T, k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::InvalidArgument("C_q needs k >= 1".into()));
    }
    if !(q >= T::one() && q.is_finite()) {
        return Err(Error::InvalidArgument(format!("C_q needs finite q >= 1, got {q}")));
    }
    let kf = from_usize::<T>(k);
    let pi = T::PI();
    let half_pi = pi / lit(2.0);
    let width = pi / kf;
    let n = C_Q_NODES;
    let tau_max = lit::<T>(3.2);
    let h = (tau_max + tau_max) / from_usize(n - 1);
    let mut total = T::zero();
    for j in 0..2 * k {
        let a = (half_pi + pi * from_usize(j)) / kf;
        let mut part = T::zero();
        for i in 0..n {
            let tau = -tau_max + h * from_usize(i);
            let y = half_pi * tau.sinh();
            let d = width / (T::one() + (-(y + y)).exp());
            let weight = width / lit(2.0) * half_pi * tau.cosh() / (y.cosh() * y.cosh());
            part = part + weight * (kf * (a + d)).cos().abs().powf(q);
        }
        total = total + part * h;
    }
    Ok((total / (pi + pi)).powf(q.recip()))
}

/// Coefficient bounds for a single index `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientBounds<T: Real> {
    /// Bound on `|c_k|`.
    pub bound_ck: T,
    /// Bound on `|c_{-k}|`.
    pub bound_cminusk: T,
    /// Bound on `k!/|(α+1)_k| |c_k| + k!/|(β+1)_k| |c_{-k}|`.
    pub combined: T,
    pub c_q: T,
}

pub fn theorem44_bounds<T: Real>(params: &ParamPair<T>, p: Exponent<T>, k: usize, f_norm: T) -> Result<CoefficientBounds<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("coefficient bounds need k >= 1".into()));
    }
    check_norm(f_norm)?;
    let c = c_const(params)?.norm();
    let q = match p.conjugate() {
        Exponent::Finite(q) => Some(q),
        Exponent::Infinite => None,
    };
    // q = ∞ is the limit sup |cos kt| = 1.
    let cq = match q {
        Some(q) => c_q(q, k)?,
        None => T::one(),
    };
    Ok(CoefficientBounds {
        bound_ck: finite(c * pochhammer_ratio(params.alpha, k).norm() * f_norm, "bound on |c_k|")?,
        bound_cminusk: finite(c * pochhammer_ratio(params.beta, k).norm() * f_norm, "bound on |c_-k|")?,
        combined: finite(lit::<T>(2.0) * c * cq * f_norm, "combined coefficient bound")?,
        c_q: cq,
    })
}

/// Bound on `|w_z|/(|α+1|+|β|r) + |w_z̄|/(|β+1|+|α|r)`.
pub fn theorem45_rhs<T: Real>(params: &ParamPair<T>, p: Exponent<T>, r: T, f_norm: T) -> Result<T> {
    check_radius(r)?;
    check_norm(f_norm)?;
    let c = c_const(params)?.norm();
    let two = lit::<T>(2.0);
    let s = params.sum_re();
    let e = params.imag_factor();
    let one = T::one();
    let value = match p.conjugate() {
        Exponent::Infinite => two * c * e * (one - r * r).powf(s) / (one - r).powf(s + two) * f_norm,
        Exponent::Finite(q) => {
            let f2 = gradient_profile(params, q, r)?;
            two * c * f_norm / (one - r * r).powf(one + p.recip()) * e * f2
        }
    };
    finite(value, "theorem 4.5 bound")
}

/// The estimates that can be evaluated from a [`BoundSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    T31,
    T31Cap,
    T32z,
    T32zbar,
    T33,
    T44i,
    T44ii,
    T45,
}

impl Theorem {
    /// Left-hand side the bound controls.
    pub fn lhs_spec(&self) -> &'static str {
        match self {
            Self::T31 | Self::T31Cap => "M_p(r, w)",
            Self::T32z => "|w_z(z)|, |z| = r",
            Self::T32zbar => "|w_zbar(z)|, |z| = r",
            Self::T33 => "M_p(r, d^k dbar^l w)",
            Self::T44i => "|c_k| (and |c_-k|)",
            Self::T44ii => "k!/|(alpha+1)_k| |c_k| + k!/|(beta+1)_k| |c_-k|",
            Self::T45 => "|w_z|/(|alpha+1|+|beta| r) + |w_zbar|/(|beta+1|+|alpha| r)",
        }
    }
}

/// A fully specified bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSpec<T: Real> {
    pub theorem: Theorem,
    pub params: ParamPair<T>,
    pub p: Exponent<T>,
    pub r: T,
    pub k: u32,
    pub l: u32,
}

/// Outcome of [`BoundSpec::evaluate`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue<T: Real> {
    pub lhs_spec: String,
    pub rhs_value: T,
    pub components: BTreeMap<String, T>,
}

impl<T: Real> BoundSpec<T> {
    /// `ckl` is used only by [`Theorem::T33`].
    pub fn evaluate(&self, f_norm: T, ckl: Option<T>) -> Result<BoundValue<T>> {
        let params = &self.params;
        let mut components = BTreeMap::new();
        components.insert("abs_c".to_string(), c_const(params)?.norm());
        components.insert("exp_factor".to_string(), params.imag_factor());
        let rhs = match self.theorem {
            Theorem::T31 => {
                components.insert("hypergeometric".into(), half_sum_profile(params, self.r)?);
                theorem31_rhs(params, self.r, f_norm)?
            }
            Theorem::T31Cap => {
                components.insert("B".into(), b_constant(params)?);
                theorem31_cap_rhs(params, f_norm)?
            }
            Theorem::T32z | Theorem::T32zbar => {
                let g = theorem32_bounds(params, self.p, self.r)?;
                components.insert("C_r".into(), g.c_r);
                components.insert("C_const".into(), g.c_const);
                components.insert("D_r".into(), g.d_r);
                components.insert("D_const".into(), g.d_const);
                let constant = if self.theorem == Theorem::T32z { g.c_r } else { g.d_r };
                GradientConstants::rhs(params, constant, self.p, self.r, f_norm)
            }
            Theorem::T33 => {
                let ckl = ckl.ok_or_else(|| Error::InvalidArgument("theorem 3.3 needs C_kl".into()))?;
                components.insert("C_kl".into(), ckl);
                theorem33_rhs(params, self.r, self.k, self.l, ckl, f_norm)?
            }
            Theorem::T44i | Theorem::T44ii => {
                let b = theorem44_bounds(params, self.p, self.k.max(1) as usize, f_norm)?;
                components.insert("bound_ck".into(), b.bound_ck);
                components.insert("bound_cminusk".into(), b.bound_cminusk);
                components.insert("combined".into(), b.combined);
                components.insert("C_q".into(), b.c_q);
                if self.theorem == Theorem::T44i {
                    b.bound_ck
                } else {
                    b.combined
                }
            }
            Theorem::T45 => theorem45_rhs(params, self.p, self.r, f_norm)?,
        };
        Ok(BoundValue { lhs_spec: self.theorem.lhs_spec().to_string(), rhs_value: rhs, components })
    }
}
