//! Central finite differences in the complex plane.

use num_complex::Complex;

use crate::scalar::{lit, Real};

/// Wirtinger derivatives `(∂_z f, ∂_z̄ f)` from central differences with step `h`
/// along both axes.
pub fn wirtinger<T, E, F>(f: F, z: Complex<T>, h: T) -> Result<(Complex<T>, Complex<T>), E>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>, E>,
{
    let hx = Complex::new(h, T::zero());
    let hy = Complex::new(T::zero(), h);
    let two_h = h + h;
    let dx = (f(z + hx)? - f(z - hx)?) / two_h;
    let dy = (f(z + hy)? - f(z - hy)?) / two_h;
    let i = Complex::new(T::zero(), T::one());
    let half = lit::<T>(0.5);
    Ok(((dx - i * dy) * half, (dx + i * dy) * half))
}

/// Five-point discrete Laplacian `Δf ≈ (f(z±h) + f(z±ih) - 4f(z)) / h²`.
pub fn laplacian_5pt<T, E, F>(f: F, z: Complex<T>, h: T) -> Result<Complex<T>, E>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>, E>,
{
    let hx = Complex::new(h, T::zero());
    let hy = Complex::new(T::zero(), h);
    let four = lit::<T>(4.0);
    let s = f(z + hx)? + f(z - hx)? + f(z + hy)? + f(z - hy)? - f(z)? * four;
    Ok(s / (h * h))
}
