//! Simultaneous root finding for small monic polynomials (Aberth–Ehrlich).

use num_complex::Complex64;

const MAX_ITERS: usize = 500;

/// Roots of `zⁿ + c[n−1] zⁿ⁻¹ + … + c[0]`.
///
/// A root is frozen once its residual is at the roundoff level of the
/// polynomial evaluation there. Returns the roots and whether every root
/// was frozen.
pub(crate) fn monic_roots(c: &[f64]) -> (Vec<Complex64>, bool) {
    let n = c.len();
    let (center, radius) = starting_circle(c);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    let abs_c: Vec<f64> = c.iter().map(|x| x.abs()).collect();
    let tol = 4.0 * (n + 1) as f64 * f64::EPSILON;
    for _ in 0..MAX_ITERS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = eval(c, z[i]);
            let bound = tol * magnitude(&abs_c, z[i].norm_sqr().sqrt());
            if p.norm_sqr() <= bound * bound {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    sum += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                if w.norm_sqr() <= f64::EPSILON * f64::EPSILON * z[i].norm_sqr() {
                    done[i] = true;
                }
            }
        }
        if done.iter().all(|&d| d) {
            return (z, true);
        }
    }
    (z, false)
}

/// Circle enclosing all roots: centered at their mean, with the Fujiwara
/// bound of the shifted polynomial as radius.
fn starting_circle(c: &[f64]) -> (f64, f64) {
    let n = c.len();
    let center = -c[n - 1] / n as f64;
    // Taylor shift p(z + center) by repeated synthetic division
    let mut b: Vec<f64> = c.iter().copied().chain(std::iter::once(1.0)).collect();
    for k in 0..n {
        for j in (k..n).rev() {
            b[j] += center * b[j + 1];
        }
    }
    let mut radius = 0.0f64;
    for (k, bk) in b[..n].iter().enumerate() {
        let mut r = bk.abs().powf(1.0 / (n - k) as f64);
        if k == 0 {
            r *= 0.5f64.powf(1.0 / n as f64);
        }
        radius = radius.max(2.0 * r);
    }
    (center, radius.max(f64::MIN_POSITIVE))
}

/// `|z|ⁿ + Σ |c_k| |z|ᵏ`, the scale of rounding error in Horner's rule.
fn magnitude(abs_c: &[f64], r: f64) -> f64 {
    abs_c.iter().rev().fold(1.0, |acc, &a| acc * r + a)
}

/// Polynomial value and derivative by Horner's rule.
fn eval(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(1.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}
