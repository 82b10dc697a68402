//! Closed-form closure expressions in primitive variables.
//!
//! Written against the small [`Real`] trait so the same expressions serve
//! plain `f64` evaluation and forward-mode differentiation in the flux
//! Jacobian.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn sqrt(self) -> Self;
    fn value(self) -> f64;
}

impl Real for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn value(self) -> f64 {
        self
    }
}

/// Primitive variables `(ρ, u, p, q, r)` from raw moments.
#[inline]
pub fn primitives<T: Real>(m: &[T; 5], five: bool) -> [T; 5] {
    let rho = m[0];
    let u = m[1] / rho;
    let u2 = u * u;
    let p = m[2] - rho * u2;
    let q = m[3] - rho * u2 * u - p * u * 3.0;
    let r = if five {
        m[4] - rho * u2 * u2 - p * u2 * 6.0 - q * u * 4.0
    } else {
        T::cst(0.0)
    };
    [rho, u, p, q, r]
}

/// Bi-Gaussian shape cubic `2p³α³ + (ρr − 3p²)pα − ρq²`.
#[inline]
pub fn bigauss_cubic<T: Real>(rho: T, p: T, q: T, r: T, alpha: T) -> T {
    let p3 = p * p * p;
    p3 * alpha * alpha * alpha * 2.0 + (rho * r - p * p * 3.0) * p * alpha - rho * q * q
}

/// Bi-B-spline shape cubic `13p³α³ − 6p³α² + αp(5rρ − 12p²) − 5ρq²`.
#[inline]
pub fn bspline_cubic<T: Real>(rho: T, p: T, q: T, r: T, alpha: T) -> T {
    let p3 = p * p * p;
    let a2 = alpha * alpha;
    p3 * a2 * alpha * 13.0 - p3 * a2 * 6.0 + alpha * p * (r * rho * 5.0 - p * p * 12.0)
        - rho * q * q * 5.0
}

/// `q / α`, taken as zero on the degenerate single-Gaussian branch.
#[inline]
pub fn reduced_heat_flux<T: Real>(q: T, alpha: T) -> T {
    if alpha.value() == 0.0 {
        T::cst(0.0)
    } else {
        q / alpha
    }
}

/// Bi-delta closure `ρu⁴ + 6pu² + 4uq + q²/p + p²/ρ`.
#[inline]
pub fn bidelta_m4<T: Real>(rho: T, u: T, p: T, q: T) -> T {
    let u2 = u * u;
    rho * u2 * u2 + p * u2 * 6.0 + u * q * 4.0 + q * q / p + p * p / rho
}

/// Fourth raw moment of the two-node ansatz with shape parameter `α`.
///
/// `kurtosis_weight` is the coefficient κ in the `κ p²(1−α)²/ρ` width term:
/// 3 for Gaussians, 12/5 for C⁰ B-splines, 0 for deltas.
#[inline]
pub fn ansatz_m4<T: Real>(rho: T, u: T, p: T, q: T, alpha: T, kurtosis_weight: f64) -> T {
    let u2 = u * u;
    let qt = reduced_heat_flux(q, alpha);
    let one_minus = -alpha + 1.0;
    let pp = p * p / rho;
    rho * u2 * u2 + p * u2 * 6.0 + q * u * 4.0 + q * qt / p
        + pp * (alpha * alpha + alpha * one_minus * 6.0 + one_minus * one_minus * kurtosis_weight)
}

/// Bi-Gaussian fifth-moment closure.
#[inline]
pub fn bigauss_m5<T: Real>(rho: T, u: T, p: T, q: T, alpha: T) -> T {
    let qt = reduced_heat_flux(q, alpha);
    let u2 = u * u;
    let tilde = qt * qt * qt / (p * p) + qt * qt * u * 5.0 / p + qt * u2 * 10.0 + p * qt * 10.0 / rho
        - p * alpha * 2.0 / rho * (qt * 4.0 + p * u * 5.0);
    rho * u2 * u2 * u + p * u2 * u * 10.0 + p * p * u * 15.0 / rho + alpha * tilde
}

/// Bi-B-spline fifth-moment closure.
#[inline]
pub fn bspline_m5<T: Real>(rho: T, u: T, p: T, q: T, alpha: T) -> T {
    let u2 = u * u;
    rho * u2 * u2 * u
        + u2 * (p * u + q) * 10.0
        + p * q * 2.0 / rho * (-alpha * 4.0 + 5.0)
        + p * p * u / rho * (alpha * 6.0 - alpha * alpha * 13.0 + 12.0)
        + q * q * u * 5.0 / (p * alpha)
        + q * q * q / (p * p * alpha * alpha)
}
