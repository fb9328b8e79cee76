//! Exact Wirtinger derivatives of `u_{α,β}` through a small term algebra.
//!
//! Every term has the shape
//! `coeff · z^i · z̄^j · (1-|z|²)^s · (1-z)^{-p} · (1-z̄)^{-q}`,
//! and finite sums of such terms are closed under `∂_z` and `∂_z̄`.

use num_complex::Complex;

use super::ParamPair;
use crate::scalar::{from_usize, real, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTerm<T: Real> {
    pub coeff: Complex<T>,
    pub i: u32,
    pub j: u32,
    pub s: Complex<T>,
    pub p: Complex<T>,
    pub q: Complex<T>,
}

impl<T: Real> KernelTerm<T> {
    fn same_shape(&self, other: &Self) -> bool {
        self.i == other.i
            && self.j == other.j
            && self.s == other.s
            && self.p == other.p
            && self.q == other.q
    }

    fn dz(&self, out: &mut Vec<Self>) {
        let zero = Complex::new(T::zero(), T::zero());
        if self.i > 0 {
            out.push(Self {
                coeff: self.coeff * from_usize::<T>(self.i as usize),
                i: self.i - 1,
                ..*self
            });
        }
        if self.s != zero {
            out.push(Self {
                coeff: -self.coeff * self.s,
                j: self.j + 1,
                s: self.s - T::one(),
                ..*self
            });
        }
        if self.p != zero {
            out.push(Self {
                coeff: self.coeff * self.p,
                p: self.p + T::one(),
                ..*self
            });
        }
    }

    fn dzbar(&self, out: &mut Vec<Self>) {
        let zero = Complex::new(T::zero(), T::zero());
        if self.j > 0 {
            out.push(Self {
                coeff: self.coeff * from_usize::<T>(self.j as usize),
                j: self.j - 1,
                ..*self
            });
        }
        if self.s != zero {
            out.push(Self {
                coeff: -self.coeff * self.s,
                i: self.i + 1,
                s: self.s - T::one(),
                ..*self
            });
        }
        if self.q != zero {
            out.push(Self {
                coeff: self.coeff * self.q,
                q: self.q + T::one(),
                ..*self
            });
        }
    }

    fn eval(&self, pre: &Precomputed<T>) -> Complex<T> {
        let log_part = self.s * pre.log_w - self.p * pre.log_1mz - self.q * pre.log_1mzbar;
        self.coeff * pre.z.powu(self.i) * pre.z.conj().powu(self.j) * log_part.exp()
    }
}

struct Precomputed<T: Real> {
    z: Complex<T>,
    log_w: T,
    log_1mz: Complex<T>,
    log_1mzbar: Complex<T>,
}

impl<T: Real> Precomputed<T> {
    fn new(z: Complex<T>) -> Self {
        let one = real(T::one());
        let log_1mz = (one - z).ln();
        Self {
            z,
            log_w: (T::one() - z.norm_sqr()).ln(),
            log_1mz,
            log_1mzbar: log_1mz.conj(),
        }
    }
}

/// A finite sum of [`KernelTerm`]s, immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct TermSum<T: Real> {
    terms: Vec<KernelTerm<T>>,
}

impl<T: Real> TermSum<T> {
    /// `u_{α,β}` itself: a single term.
    pub fn kernel(params: &ParamPair<T>) -> Self {
        let one = T::one();
        Self {
            terms: vec![KernelTerm {
                coeff: real(one),
                i: 0,
                j: 0,
                s: params.alpha + params.beta + one,
                p: params.alpha + one,
                q: params.beta + one,
            }],
        }
    }

    /// `∂_z^k ∂_z̄^l u_{α,β}`.
    pub fn derivative(params: &ParamPair<T>, k: u32, l: u32) -> Self {
        let mut sum = Self::kernel(params);
        for _ in 0..k {
            sum = sum.dz();
        }
        for _ in 0..l {
            sum = sum.dzbar();
        }
        sum
    }

    pub fn terms(&self) -> &[KernelTerm<T>] {
        &self.terms
    }

    pub fn dz(&self) -> Self {
        let mut raw = Vec::with_capacity(self.terms.len() * 3);
        self.terms.iter().for_each(|t| t.dz(&mut raw));
        Self::merged(raw)
    }

    pub fn dzbar(&self) -> Self {
        let mut raw = Vec::with_capacity(self.terms.len() * 3);
        self.terms.iter().for_each(|t| t.dzbar(&mut raw));
        Self::merged(raw)
    }

    fn merged(raw: Vec<KernelTerm<T>>) -> Self {
        let mut terms: Vec<KernelTerm<T>> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.iter_mut().find(|u| u.same_shape(&t)) {
                Some(u) => u.coeff += t.coeff,
                None => terms.push(t),
            }
        }
        terms.retain(|t| t.coeff.norm() != T::zero());
        Self { terms }
    }

    /// Evaluates the sum at a point of the open disk.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let pre = Precomputed::new(z);
        self.terms
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, t| acc + t.eval(&pre))
    }
}
