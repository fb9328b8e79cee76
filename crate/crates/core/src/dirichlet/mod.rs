//! The Dirichlet problem for `Δ_{α,β} w = 0` with continuous boundary data,
//! solved through the Poisson-type integral
//! `w(z) = (1/2π) ∫ K_{α,β}(z e^{-it}) f(e^{it}) dt`.

mod boundary;
mod circle;

use num_complex::Complex;
use rayon::prelude::*;

pub use boundary::{BoundaryFunction, Exponent, SampledBoundary, NORM_GRID};
pub use circle::CircleOperator;

use crate::error::{Error, Result};
use crate::kernel::{c_const, check_order, u_at, u_gradient_at, DiskPoint, ParamPair, TermSum};
use crate::numdiff::laplacian_5pt;
use crate::scalar::{cis, from_usize, lit, Real};

/// Default lower bound on the number of trapezoid nodes.
pub const DEFAULT_NODE_FLOOR: usize = 512;
/// Smallest admissible node floor.
pub const MIN_NODE_FLOOR: usize = 64;
/// Evaluation radii beyond this are rejected.
pub const MAX_RADIUS: f64 = 0.999;
/// Angles used for integral means and boundary convergence.
pub const MEAN_ANGLES: usize = 4096;
/// Step of the finite-difference Laplacian in [`PoissonSolver::operator_residual`].
pub const RESIDUAL_STEP: f64 = 1e-4;
/// Relative slack in [`IntegralMeanReport::pass`].
pub const REPORT_SLACK: f64 = 1e-8;

/// Polar evaluation grid: every radius paired with `n_theta` uniform angles.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid<T: Real> {
    radii: Vec<T>,
    n_theta: usize,
}

impl<T: Real> EvalGrid<T> {
    pub fn new(radii: Vec<T>, n_theta: usize) -> Result<Self> {
        if n_theta == 0 || radii.is_empty() {
            return Err(Error::InvalidArgument("empty evaluation grid".into()));
        }
        if radii.iter().any(|&r| !(r >= T::zero() && r < T::one())) {
            return Err(Error::InvalidArgument("grid radii must lie in [0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("grid radii must be strictly increasing".into()));
        }
        Ok(Self { radii, n_theta })
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in radius-major order with `θ_j = 2πj/n_theta`.
    pub fn points(&self) -> Vec<DiskPoint<T>> {
        let nf = from_usize::<T>(self.n_theta);
        let two_pi = T::PI() + T::PI();
        self.radii
            .iter()
            .flat_map(|&r| {
                (0..self.n_theta).map(move |j| DiskPoint { r, theta: two_pi * from_usize::<T>(j) / nf })
            })
            .collect()
    }
}

/// `M_p(r, w)` next to the bound it is compared with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralMeanReport<T: Real> {
    pub r: T,
    pub p: Exponent<T>,
    pub value: T,
    pub bound: T,
    pub margin: T,
}

impl<T: Real> IntegralMeanReport<T> {
    pub fn new(r: T, p: Exponent<T>, value: T, bound: T) -> Self {
        Self { r, p, value, bound, margin: bound - value }
    }

    pub fn pass(&self) -> bool {
        self.value <= self.bound * (T::one() + lit(REPORT_SLACK))
    }
}

/// Trapezoid-rule solver for a fixed parameter pair.
#[derive(Debug, Clone)]
pub struct PoissonSolver<T: Real> {
    params: ParamPair<T>,
    c: Complex<T>,
    node_floor: usize,
}

impl<T: Real> PoissonSolver<T> {
    pub fn new(params: ParamPair<T>) -> Result<Self> {
        Ok(Self { c: c_const(&params)?, params, node_floor: DEFAULT_NODE_FLOOR })
    }

    /// Replaces the node floor; it must be at least [`MIN_NODE_FLOOR`].
    pub fn with_node_floor(mut self, floor: usize) -> Result<Self> {
        if floor < MIN_NODE_FLOOR {
            return Err(Error::InvalidArgument(format!(
                "node floor {floor} is below {MIN_NODE_FLOOR}"
            )));
        }
        self.node_floor = floor;
        Ok(self)
    }

    pub fn params(&self) -> &ParamPair<T> {
        &self.params
    }

    pub fn node_floor(&self) -> usize {
        self.node_floor
    }

    /// `max(floor, 2^⌈log₂ 64/(1-r)⌉, 2^⌈log₂ 2·deg f⌉)`.
    pub fn node_count(&self, r: T, f: &BoundaryFunction<T>) -> usize {
        let width = (lit::<T>(64.0) / (T::one() - r)).ceil().to_usize().unwrap_or(usize::MAX);
        self.node_floor
            .max(width.next_power_of_two())
            .max((2 * f.degree()).next_power_of_two())
    }

    fn check_radius(r: T) -> Result<()> {
        if r > lit(MAX_RADIUS) {
            Err(Error::RadiusTooLarge(format!("r = {r} exceeds {MAX_RADIUS}")))
        } else {
            Ok(())
        }
    }

    /// Trapezoid sum of `g(z e^{-it_j}, t_j) f(t_j)` over `samples.len()` nodes.
    fn quadrature(
        &self,
        samples: &[Complex<T>],
        mut g: impl FnMut(Complex<T>, T) -> Complex<T>,
        z: Complex<T>,
    ) -> Complex<T> {
        let n = samples.len();
        let nf = from_usize::<T>(n);
        let two_pi = T::PI() + T::PI();
        let sum = samples.iter().enumerate().fold(Complex::new(T::zero(), T::zero()), |acc, (j, fj)| {
            let t = two_pi * from_usize::<T>(j) / nf;
            acc + g(z * cis(-t), t) * fj
        });
        sum * self.c / nf
    }

    fn extend_sampled(&self, samples: &[Complex<T>], z: Complex<T>) -> Complex<T> {
        self.quadrature(samples, |zeta, _| u_at(&self.params, zeta), z)
    }

    pub fn extend(&self, f: &BoundaryFunction<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
        Self::check_radius(z.r)?;
        let samples = f.sample(self.node_count(z.r, f));
        Ok(self.extend_sampled(&samples, z.to_complex()))
    }

    /// `(w, ∂_z w, ∂_z̄ w)` from one pass over the nodes.
    pub fn extend_gradient(
        &self,
        f: &BoundaryFunction<T>,
        z: &DiskPoint<T>,
    ) -> Result<(Complex<T>, Complex<T>, Complex<T>)> {
        Self::check_radius(z.r)?;
        let samples = f.sample(self.node_count(z.r, f));
        Ok(self.gradient_sampled(&samples, z.to_complex()))
    }

    fn gradient_sampled(
        &self,
        samples: &[Complex<T>],
        z: Complex<T>,
    ) -> (Complex<T>, Complex<T>, Complex<T>) {
        let n = samples.len();
        let nf = from_usize::<T>(n);
        let two_pi = T::PI() + T::PI();
        let zero = Complex::new(T::zero(), T::zero());
        let (w, dz, dzb) = samples.iter().enumerate().fold((zero, zero, zero), |acc, (j, fj)| {
            let t = two_pi * from_usize::<T>(j) / nf;
            let rot = cis(-t);
            let (u, ud, udb) = u_gradient_at(&self.params, z * rot);
            (acc.0 + u * fj, acc.1 + ud * rot * fj, acc.2 + udb * rot.conj() * fj)
        });
        let s = self.c / nf;
        (w * s, dz * s, dzb * s)
    }

    pub fn extend_dz(&self, f: &BoundaryFunction<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
        Ok(self.extend_gradient(f, z)?.1)
    }

    pub fn extend_dzbar(&self, f: &BoundaryFunction<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
        Ok(self.extend_gradient(f, z)?.2)
    }

    /// `∂_z^k ∂_z̄^l w(z)` for `k + l <= 4`.
    pub fn extend_derivative(
        &self,
        f: &BoundaryFunction<T>,
        z: &DiskPoint<T>,
        k: u32,
        l: u32,
    ) -> Result<Complex<T>> {
        check_order(k, l)?;
        Self::check_radius(z.r)?;
        let samples = f.sample(self.node_count(z.r, f));
        let terms = TermSum::derivative(&self.params, k, l);
        let spin = lit::<T>(l as f64 - k as f64);
        Ok(self.quadrature(&samples, |zeta, t| terms.eval(zeta) * cis(spin * t), z.to_complex()))
    }

    /// Circle operator for `∂^k ∂̄^l w` on `|z| = r`, sized for boundary data
    /// of degree up to `max_degree`.
    pub fn circle(
        &self,
        r: T,
        n_angles: usize,
        max_degree: usize,
        k: u32,
        l: u32,
    ) -> Result<CircleOperator<T>> {
        Self::check_radius(r)?;
        if !n_angles.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "circle evaluation needs a power-of-two angle count, got {n_angles}"
            )));
        }
        let probe = BoundaryFunction::<T>::mode(max_degree as i64);
        let n = self.node_count(r, &probe).max(n_angles);
        CircleOperator::new(&self.params, r, n, n_angles, k, l)
    }

    /// `w` on `n_theta` uniform angles of each grid radius, radius-major.
    pub fn extend_grid(&self, f: &BoundaryFunction<T>, grid: &EvalGrid<T>) -> Result<Vec<Complex<T>>> {
        let n_theta = grid.n_theta();
        if n_theta.is_power_of_two() {
            let rows = grid
                .radii()
                .par_iter()
                .map(|&r| self.circle(r, n_theta, f.degree(), 0, 0)?.apply(f))
                .collect::<Result<Vec<_>>>()?;
            return Ok(rows.into_iter().flatten().collect());
        }
        grid.points().par_iter().map(|z| self.extend(f, z)).collect()
    }

    /// `M_p(r, w)` over [`MEAN_ANGLES`] angles.
    pub fn integral_mean(&self, f: &BoundaryFunction<T>, r: T, p: Exponent<T>) -> Result<T> {
        let values = self.circle(r, MEAN_ANGLES, f.degree(), 0, 0)?.apply(f)?;
        Ok(p.mean_of(values.iter().map(|v| v.norm())))
    }

    /// `M_p(r, ∂^k ∂̄^l w)` over [`MEAN_ANGLES`] angles.
    pub fn derivative_mean(
        &self,
        f: &BoundaryFunction<T>,
        r: T,
        p: Exponent<T>,
        k: u32,
        l: u32,
    ) -> Result<T> {
        let values = self.circle(r, MEAN_ANGLES, f.degree(), k, l)?.apply(f)?;
        Ok(p.mean_of(values.iter().map(|v| v.norm())))
    }

    /// `sup_θ |w(r e^{iθ}) - f(e^{iθ})|` for every radius.
    pub fn boundary_convergence_report(&self, f: &BoundaryFunction<T>, radii: &[T]) -> Result<Vec<T>> {
        let target = f.sample(MEAN_ANGLES);
        radii
            .iter()
            .map(|&r| {
                let w = self.circle(r, MEAN_ANGLES, f.degree(), 0, 0)?.apply(f)?;
                Ok(w.iter().zip(&target).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max))
            })
            .collect()
    }

    /// `Δ_{α,β} w(z)` with `w_{zz̄}` from a five-point Laplacian of the
    /// quadrature and exact first derivatives.
    pub fn operator_residual(&self, f: &BoundaryFunction<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
        Self::check_radius(z.r)?;
        let h = lit::<T>(RESIDUAL_STEP);
        let samples = f.sample(self.node_count((z.r + h).min(lit(MAX_RADIUS)), f));
        let zc = z.to_complex();
        let (w, wz, wzb) = self.gradient_sampled(&samples, zc);
        let lap = laplacian_5pt(|p| Ok::<_, Error>(self.extend_sampled(&samples, p)), zc, h)?;
        let (a, b) = (self.params.alpha, self.params.beta);
        Ok(lap * ((T::one() - z.r * z.r) * lit::<T>(0.25)) + a * zc * wz + b * zc.conj() * wzb - a * b * w)
    }
}

pub fn extend<T: Real>(params: &ParamPair<T>, f: &BoundaryFunction<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
    PoissonSolver::new(*params)?.extend(f, z)
}

pub fn extend_dz<T: Real>(params: &ParamPair<T>, f: &BoundaryFunction<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
    PoissonSolver::new(*params)?.extend_dz(f, z)
}

pub fn extend_dzbar<T: Real>(params: &ParamPair<T>, f: &BoundaryFunction<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
    PoissonSolver::new(*params)?.extend_dzbar(f, z)
}

pub fn integral_mean<T: Real>(params: &ParamPair<T>, f: &BoundaryFunction<T>, r: T, p: T) -> Result<T> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::InvalidArgument(format!("radius {r} outside [0, 1)")));
    }
    PoissonSolver::new(*params)?.integral_mean(f, r, Exponent::new(p)?)
}

pub fn boundary_convergence_report<T: Real>(
    params: &ParamPair<T>,
    f: &BoundaryFunction<T>,
    radii: &[T],
) -> Result<Vec<T>> {
    PoissonSolver::new(*params)?.boundary_convergence_report(f, radii)
}

pub fn operator_residual<T: Real>(params: &ParamPair<T>, f: &BoundaryFunction<T>, z: &DiskPoint<T>) -> Result<Complex<T>> {
    PoissonSolver::new(*params)?.operator_residual(f, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numdiff::wirtinger;
    use crate::specfun::hyp2f1_real;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn pp(a: f64, b: f64) -> ParamPair<f64> {
        ParamPair::real(a, b).unwrap()
    }

    fn pt(r: f64, t: f64) -> DiskPoint<f64> {
        DiskPoint::new(r, t).unwrap()
    }

    fn one() -> BoundaryFunction<f64> {
        BoundaryFunction::constant(C::new(1.0, 0.0))
    }

    fn random_trig(rng: &mut ChaCha8Rng, deg: i64) -> BoundaryFunction<f64> {
        BoundaryFunction::fourier((-deg..=deg).map(|m| {
            (m, C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) / (1.0 + m.abs() as f64))
        }))
    }

    #[test]
    fn classical_examples() {
        let p = pp(0.0, 0.0);
        for (r, t) in [(0.0, 0.0), (0.3, 1.0), (0.9, -2.0), (0.99, 0.5)] {
            assert!((extend(&p, &one(), &pt(r, t)).unwrap() - C::new(1.0, 0.0)).norm() < 1e-12);
            let z = pt(r, t).to_complex();
            let w = extend(&p, &BoundaryFunction::mode(1), &pt(r, t)).unwrap();
            assert!((w - z).norm() < 1e-12);
            assert!(extend_dz(&p, &one(), &pt(r, t)).unwrap().norm() < 1e-10);
            assert!((extend_dz(&p, &BoundaryFunction::mode(1), &pt(r, t)).unwrap() - 1.0).norm() < 1e-10);
            assert!(extend_dzbar(&p, &BoundaryFunction::mode(1), &pt(r, t)).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn constant_data_matches_hypergeometric_profile() {
        for (a, b) in [(0.5, 0.5), (1.0, 0.5), (-0.4, 0.7), (2.0, 1.0)] {
            let p = pp(a, b);
            let c = c_const(&p).unwrap();
            for r in [0.2, 0.7, 0.95] {
                let expect = c * hyp2f1_real(-a, -b, 1.0, r * r).unwrap();
                let got = extend(&p, &one(), &pt(r, 0.8)).unwrap();
                assert!((got - expect).norm() < 1e-11 * expect.norm(), "{a} {b} {r}");
            }
        }
    }

    #[test]
    fn radius_cap() {
        let p = pp(0.5, 0.5);
        assert!(matches!(extend(&p, &one(), &pt(0.9995, 0.0)), Err(Error::RadiusTooLarge(_))));
        assert!(extend(&p, &one(), &pt(0.999, 0.0)).is_ok());
    }

    #[test]
    fn node_count_rule() {
        let s = PoissonSolver::new(pp(0.0, 0.0)).unwrap();
        assert_eq!(s.node_count(0.0, &one()), 512);
        assert_eq!(s.node_count(0.9, &one()), 1024);
        assert_eq!(s.node_count(0.99, &one()), 8192);
        assert_eq!(s.node_count(0.0, &BoundaryFunction::mode(700)), 2048);
        let s = s.with_node_floor(64).unwrap();
        assert_eq!(s.node_count(0.0, &one()), 64);
        assert!(PoissonSolver::new(pp(0.0, 0.0)).unwrap().with_node_floor(32).is_err());
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_trig(&mut rng, 5);
        let p = pp(0.5, 0.3);
        let z = pt(0.4, 0.7);
        let (dz, dzb) = wirtinger(|q| extend(&p, &f, &DiskPoint::from_complex(q)?), z.to_complex(), 1e-5).unwrap();
        let got_dz = extend_dz(&p, &f, &z).unwrap();
        let got_dzb = extend_dzbar(&p, &f, &z).unwrap();
        assert!((got_dz - dz).norm() < 1e-5 * dz.norm());
        assert!((got_dzb - dzb).norm() < 1e-5 * dzb.norm());
        let s = PoissonSolver::new(p).unwrap();
        assert!((s.extend_derivative(&f, &z, 1, 0).unwrap() - got_dz).norm() < 1e-12);
        assert!((s.extend_derivative(&f, &z, 0, 1).unwrap() - got_dzb).norm() < 1e-12);
    }

    #[test]
    fn circle_operator_agrees_with_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = random_trig(&mut rng, 6);
        let params = ParamPair::new(C::new(0.5, 0.5), C::new(0.3, -0.4)).unwrap();
        let s = PoissonSolver::new(params).unwrap();
        for (k, l) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)] {
            let op = s.circle(0.8, 64, f.degree(), k, l).unwrap();
            let vals = op.apply(&f).unwrap();
            for j in [0, 7, 33] {
                let z = pt(0.8, 2.0 * std::f64::consts::PI * j as f64 / 64.0);
                let direct = s.extend_derivative(&f, &z, k, l).unwrap();
                assert!((vals[j] - direct).norm() < 1e-11 * (1.0 + direct.norm()), "{k}{l} {j}");
            }
        }
    }

    #[test]
    fn integral_means() {
        let p = pp(0.0, 0.0);
        let m = integral_mean(&p, &BoundaryFunction::mode(1), 0.5, 2.0).unwrap();
        assert!((m - 0.5).abs() < 1e-14);
        for (a, r, e) in [(0.5, 0.6, 1.0), (1.0, 0.9, 3.0), (0.0, 0.3, f64::INFINITY)] {
            let p = pp(a, a);
            let expect = c_const(&p).unwrap().norm() * hyp2f1_real(-a, -a, 1.0, r * r).unwrap();
            let m = integral_mean(&p, &one(), r, e).unwrap();
            assert!((m - expect).abs() < 1e-12 * expect);
        }
        assert!(integral_mean(&p, &one(), 0.5, 0.5).is_err());
    }

    #[test]
    fn boundary_convergence() {
        let p = pp(0.0, 0.0);
        let d = boundary_convergence_report(&p, &one(), &[0.5, 0.9]).unwrap();
        assert!(d.iter().all(|&x| x < 1e-13));
        let d = boundary_convergence_report(&p, &BoundaryFunction::mode(1), &[0.5, 0.9, 0.99]).unwrap();
        for (got, want) in d.iter().zip([0.5, 0.1, 0.01]) {
            assert!((got - want).abs() < 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_trig(&mut rng, 4);
        let d = boundary_convergence_report(&pp(1.0, 0.5), &f, &[0.5, 0.7, 0.9, 0.95, 0.99]).unwrap();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    }

    #[test]
    fn residuals() {
        let p = pp(0.0, 0.0);
        assert!(operator_residual(&p, &one(), &pt(0.5, 0.2)).unwrap().norm() < 1e-6);
        assert!(operator_residual(&p, &BoundaryFunction::mode(1), &pt(0.7, 1.2)).unwrap().norm() < 1e-6);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let f = random_trig(&mut rng, 4);
            let params = ParamPair::new(
                C::new(rng.random_range(-0.5..1.5), rng.random_range(-1.0..1.0)),
                C::new(rng.random_range(-0.5..1.5), rng.random_range(-1.0..1.0)),
            )
            .unwrap();
            let z = pt(rng.random_range(0.0..0.8), rng.random_range(0.0..6.28));
            let res = operator_residual(&params, &f, &z).unwrap();
            let w = extend(&params, &f, &z).unwrap();
            assert!(res.norm() <= 1e-5 * (1.0 + w.norm()), "{res} {params:?}");
        }
    }

    #[test]
    fn doubling_nodes_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_trig(&mut rng, 8);
        let params = ParamPair::new(C::new(1.0, 1.0), C::new(1.0, -1.0)).unwrap();
        let s = PoissonSolver::new(params).unwrap();
        for r in [0.3, 0.6, 0.9] {
            let z = pt(r, 1.1);
            let n = s.node_count(r, &f);
            let coarse = s.clone().with_node_floor(n).unwrap().extend(&f, &z).unwrap();
            let fine = s.clone().with_node_floor(2 * n).unwrap().extend(&f, &z).unwrap();
            assert!((coarse - fine).norm() < 1e-10 * fine.norm());
        }
    }

    #[test]
    fn linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = random_trig(&mut rng, 3);
        let g = random_trig(&mut rng, 5);
        let (a, b) = (C::new(0.3, -1.2), C::new(-0.7, 0.4));
        let h = BoundaryFunction::linear_combination(a, &f, b, &g);
        let params = ParamPair::new(C::new(0.2, 0.1), C::new(0.9, 0.0)).unwrap();
        let z = pt(0.75, -0.4);
        let lhs = extend(&params, &h, &z).unwrap();
        let rhs = extend(&params, &f, &z).unwrap() * a + extend(&params, &g, &z).unwrap() * b;
        assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn grid_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_trig(&mut rng, 3);
        let s = PoissonSolver::new(pp(0.5, 1.0)).unwrap();
        let fast = s.extend_grid(&f, &EvalGrid::new(vec![0.2, 0.5], 8).unwrap()).unwrap();
        let grid = EvalGrid::new(vec![0.2, 0.5], 8).unwrap();
        for (z, v) in grid.points().iter().zip(&fast) {
            assert!((s.extend(&f, z).unwrap() - v).norm() < 1e-12);
        }
        let odd = s.extend_grid(&f, &EvalGrid::new(vec![0.2, 0.5], 6).unwrap()).unwrap();
        assert_eq!(odd.len(), 12);
        assert!(EvalGrid::new(vec![0.5, 0.2], 4).is_err());
        assert!(EvalGrid::new(vec![0.5, 1.0], 4).is_err());
    }

    #[test]
    fn report_pass_rule() {
        let rep = IntegralMeanReport::new(0.5, Exponent::Finite(2.0), 1.0 + 5e-9, 1.0);
        assert!(rep.pass());
        assert!(!IntegralMeanReport::new(0.5, Exponent::Infinite, 1.0 + 2e-8, 1.0).pass());
    }

    #[test]
    fn f32_extension() {
        let p = ParamPair::<f32>::real(0.5, 0.5).unwrap();
        let f = BoundaryFunction::<f32>::constant(Complex::new(1.0, 0.0));
        let z = DiskPoint::<f32>::new(0.5, 0.3).unwrap();
        let c = c_const(&p).unwrap();
        let expect = c * hyp2f1_real(-0.5f32, -0.5, 1.0, 0.25).unwrap();
        assert!((extend(&p, &f, &z).unwrap() - expect).norm() < 1e-5);
    }
}
