//! Whole-circle evaluation of the Poisson-type integral by FFT convolution.
//!
//! On `|z| = r` the trapezoid sum `(1/N) Σ_j G(θ_k - t_j) f(t_j)` is a circular
//! convolution, so one pair of FFTs yields all `N` angles at once.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::BoundaryFunction;
use crate::error::{Error, Result};
use crate::kernel::{c_const, check_order, u_at, u_gradient_at, ParamPair, TermSum};
use crate::scalar::{cis, from_usize, lit, Real};

/// `∂^k ∂̄^l w` on `n_out` uniform angles of a fixed circle, reusable across
/// boundary functions of degree at most `n_nodes / 2`.
pub struct CircleOperator<T: Real> {
    r: T,
    n_nodes: usize,
    n_out: usize,
    phase: i64,
    kernel_hat: Vec<Complex<T>>,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for CircleOperator<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CircleOperator")
            .field("r", &self.r)
            .field("n_nodes", &self.n_nodes)
            .field("n_out", &self.n_out)
            .finish()
    }
}

impl<T: Real> CircleOperator<T> {
    /// `n_nodes` must be a multiple of `n_out`.
    pub fn new(
        params: &ParamPair<T>,
        r: T,
        n_nodes: usize,
        n_out: usize,
        k: u32,
        l: u32,
    ) -> Result<Self> {
        check_order(k, l)?;
        if n_out == 0 || n_nodes % n_out != 0 {
            return Err(Error::InvalidArgument(format!(
                "{n_out} output angles do not divide {n_nodes} nodes"
            )));
        }
        let c = c_const(params)?;
        let terms = (k + l > 1).then(|| TermSum::derivative(params, k, l));
        let nf = from_usize::<T>(n_nodes);
        let two_pi = T::PI() + T::PI();
        let spin = k as i64 - l as i64;
        let mut kernel_hat: Vec<Complex<T>> = (0..n_nodes)
            .map(|m| {
                let phi = two_pi * from_usize::<T>(m) / nf;
                let zeta = cis(phi) * r;
                let d = match (k, l) {
                    (0, 0) => u_at(params, zeta),
                    (1, 0) => u_gradient_at(params, zeta).1,
                    (0, 1) => u_gradient_at(params, zeta).2,
                    _ => terms.as_ref().map(|t| t.eval(zeta)).unwrap_or_default(),
                };
                c * d * cis(phi * lit::<T>(spin as f64))
            })
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n_nodes);
        let inverse = planner.plan_fft_inverse(n_nodes);
        forward.process(&mut kernel_hat);
        let scale = (nf * nf).recip();
        kernel_hat.iter_mut().for_each(|v| *v = *v * scale);
        Ok(Self { r, n_nodes, n_out, phase: -spin, kernel_hat, forward, inverse })
    }

    pub fn radius(&self) -> T {
        self.r
    }

    pub fn nodes(&self) -> usize {
        self.n_nodes
    }

    /// Values at `θ_j = 2πj/n_out`.
    pub fn apply(&self, f: &BoundaryFunction<T>) -> Result<Vec<Complex<T>>> {
        if 2 * f.degree() > self.n_nodes {
            return Err(Error::InvalidArgument(format!(
                "boundary degree {} exceeds half of {} quadrature nodes",
                f.degree(),
                self.n_nodes
            )));
        }
        let mut buf = f.sample(self.n_nodes);
        self.forward.process(&mut buf);
        buf.iter_mut().zip(&self.kernel_hat).for_each(|(b, k)| *b = *b * *k);
        self.inverse.process(&mut buf);
        let stride = self.n_nodes / self.n_out;
        let two_pi = T::PI() + T::PI();
        let phase = lit::<T>(self.phase as f64);
        Ok((0..self.n_out)
            .map(|j| {
                let v = buf[j * stride];
                if self.phase == 0 {
                    v
                } else {
                    v * cis(phase * two_pi * from_usize::<T>(j) / from_usize::<T>(self.n_out))
                }
            })
            .collect())
    }
}
