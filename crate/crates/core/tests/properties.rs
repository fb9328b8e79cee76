use std::f64::consts::TAU;

use abh_core::bounds::{c_q, theorem31_rhs, theorem33_rhs, theorem45_rhs};
use abh_core::dirichlet::{BoundaryFunction, Exponent, PoissonSolver};
use abh_core::kernel::{u_modulus_bound, u_value, DiskPoint, ParamPair};
use abh_core::series::{coeffs_from_boundary, eval_series};
use abh_core::specfun::{hyp2f1, hyp2f1_derivative, hyp2f1_limit_at_1, hyp2f1_real, HypParams};
use abh_core::ParamPair64;
use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;

fn complex(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| Complex64::new(re, im))
}

fn params() -> impl Strategy<Value = ParamPair64> {
    ((-0.45..2.0f64, -1.5..1.5f64), (-0.45..2.0f64, -1.5..1.5f64))
        .prop_filter("Re(a+b) > -0.9", |((ar, _), (br, _))| ar + br > -0.9)
        .prop_map(|((ar, ai), (br, bi))| ParamPair::new(Complex64::new(ar, ai), Complex64::new(br, bi)).unwrap())
}

fn point(r_max: f64) -> impl Strategy<Value = DiskPoint<f64>> {
    (0.0..r_max, 0.0..TAU).prop_map(|(r, t)| DiskPoint::new(r, t).unwrap())
}

fn trig(max_degree: i64) -> impl Strategy<Value = BoundaryFunction<f64>> {
    (1..=max_degree).prop_flat_map(|d| {
        proptest::collection::vec(complex(1.0), (2 * d + 1) as usize)
            .prop_map(move |c| BoundaryFunction::fourier((-d..=d).zip(c).collect::<Vec<_>>()))
    })
}

fn x_grid() -> Vec<f64> {
    (1..=19).map(|i| 0.05 * i as f64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hypergeometric_is_monotone_with_the_sign_of_ab(a in -1.5..1.5f64, b in -1.5..1.5f64, c in 0.1..3.0f64) {
        prop_assume!(a <= c && b <= c);
        let v: Vec<f64> = x_grid().iter().map(|&x| hyp2f1_real(a, b, c, x).unwrap()).collect();
        for w in v.windows(2) {
            let slack = 1e-13 * w[0].abs().max(1.0);
            if a * b >= 0.0 {
                prop_assert!(w[1] >= w[0] - slack, "{a} {b} {c}: {v:?}");
            } else {
                prop_assert!(w[1] <= w[0] + slack, "{a} {b} {c}: {v:?}");
            }
        }
    }

    #[test]
    fn hyp2f1_derivative_matches_differences(a in complex(1.5), b in complex(1.5), c in 0.5..3.0f64, x in 0.05..0.9f64) {
        let cc = Complex64::new(c, 0.0);
        let h = 1e-5;
        let at = |x: f64| hyp2f1(&HypParams::new(a, b, cc, x).unwrap()).unwrap();
        let fd = (at(x + h) - at(x - h)) / (2.0 * h);
        let d = hyp2f1_derivative(a, b, cc, x).unwrap();
        prop_assert!((fd - d).norm() <= 1e-6 * d.norm().max(1.0), "{fd} vs {d}");
    }

    #[test]
    fn kernel_family_converges_to_the_gauss_limit(p in params()) {
        let one = Complex64::new(1.0, 0.0);
        let limit = hyp2f1_limit_at_1(-p.alpha, -p.beta, one).unwrap();
        let errs: Vec<f64> = (2..=8)
            .map(|k| (hyp2f1(&HypParams::new(-p.alpha, -p.beta, one, 1.0 - 10f64.powi(-k)).unwrap()).unwrap() - limit).norm())
            .collect();
        for w in errs.windows(2) {
            prop_assert!(w[1] <= w[0] || w[1] < 1e-12, "{errs:?}");
        }
        // The error decays like (1-x)^{1+Re(α+β)}.
        if p.sum_re() >= 0.0 {
            prop_assert!(errs[6] <= 1e-5, "{errs:?}");
        }
    }

    #[test]
    fn kernel_modulus_is_bounded(p in params(), z in point(0.999)) {
        prop_assert!(u_value(&p, &z).norm() <= u_modulus_bound(&p, &z) * (1.0 + 1e-12));
    }

    #[test]
    fn extension_is_linear(p in params(), f in trig(6), g in trig(6), a in complex(2.0), b in complex(2.0), z in point(0.9)) {
        let s = PoissonSolver::new(p).unwrap();
        let lhs = s.extend(&BoundaryFunction::linear_combination(a, &f, b, &g), &z).unwrap();
        let rhs = a * s.extend(&f, &z).unwrap() + b * s.extend(&g, &z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()), "{lhs} vs {rhs}");
    }

    #[test]
    fn series_agrees_with_quadrature(p in params(), f in trig(8), z in point(0.9)) {
        let coeffs = coeffs_from_boundary(&p, &f, f.degree()).unwrap();
        let s = PoissonSolver::new(p).unwrap();
        let d = (eval_series(&p, &coeffs, &z).unwrap() - s.extend(&f, &z).unwrap()).norm();
        prop_assert!(d <= 1e-6 * (1.0 + f.l2_norm_parseval()));
    }

    #[test]
    fn theorem33_at_order_zero_is_theorem31(p in params(), r in 0.0..0.99f64, norm in 0.0..10.0f64) {
        let a = theorem33_rhs(&p, r, 0, 0, 1.0, norm).unwrap();
        let b = theorem31_rhs(&p, r, norm).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn log_derivative_quotient_increases() {
    let xs: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
    for a in [0.5, 1.0, 2.0] {
        for b in [0.5, 1.0, 2.0] {
            let quotient: Vec<f64> = xs
                .iter()
                .map(|&x| {
                    let f = hyp2f1_real(-a, -b, 1.0, x).unwrap();
                    let d = hyp2f1_derivative(Complex64::new(-a, 0.0), Complex64::new(-b, 0.0), Complex64::new(1.0, 0.0), x)
                        .unwrap()
                        .re;
                    x * d / f
                })
                .collect();
            assert!(quotient.windows(2).all(|w| w[0] < w[1]), "a={a}, b={b}: {quotient:?}");
        }
    }
}

#[test]
fn c_q_is_at_most_one_and_independent_of_k() {
    for q in [1.0, 1.5, 2.0, 4.0] {
        let first = c_q(q, 1).unwrap();
        for k in 1..=8 {
            let v = c_q(q, k).unwrap();
            assert!(v <= 1.0, "q={q}, k={k}: {v}");
            assert_relative_eq!(v, first, epsilon = 1e-10);
        }
    }
}

#[test]
fn radial_bounds_are_nondecreasing_for_nonnegative_real_parameters() {
    let radii: Vec<f64> = (0..=98).map(|i| i as f64 / 100.0).collect();
    for a in [0.0, 0.5, 1.0, 2.0] {
        for b in [0.0, 0.7, 1.5] {
            let p = ParamPair::real(a, b).unwrap();
            let t31: Vec<f64> = radii.iter().map(|&r| theorem31_rhs(&p, r, 1.0).unwrap()).collect();
            assert!(t31.windows(2).all(|w| w[0] <= w[1]), "t31 a={a} b={b}");
            for e in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinite] {
                let t45: Vec<f64> = radii.iter().map(|&r| theorem45_rhs(&p, e, r, 1.0).unwrap()).collect();
                assert!(t45.windows(2).all(|w| w[0] <= w[1]), "t45 a={a} b={b} p={e:?}");
            }
        }
    }
}
