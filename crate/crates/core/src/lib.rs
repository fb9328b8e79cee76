//! Numerics for `(α,β)`-harmonic functions on the unit disk: special functions,
//! the Poisson-type kernel, the Dirichlet solver, the hypergeometric series
//! representation, closed-form bounds and a randomized verification harness.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod bounds;
pub mod dirichlet;
pub mod error;
pub mod kernel;
pub mod numdiff;
pub mod scalar;
pub mod series;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ParamPair64 = kernel::ParamPair<f64>;
pub type DiskPoint64 = kernel::DiskPoint<f64>;
pub type BoundaryFunction64 = dirichlet::BoundaryFunction<f64>;
pub type Exponent64 = dirichlet::Exponent<f64>;
pub type EvalGrid64 = dirichlet::EvalGrid<f64>;
pub type PoissonSolver64 = dirichlet::PoissonSolver<f64>;
pub type CoefficientSeq64 = series::CoefficientSeq<f64>;
pub type BoundSpec64 = bounds::BoundSpec<f64>;
