//! Half-line velocity moments for kinetic flux-vector splitting.

use super::{kernel_central_moments, QuadParams};
use crate::moments::{ClosureKind, MomentVec};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Right- and left-going flux vectors.
///
/// `F⁺_ℓ = ∫₀^∞ v^{ℓ+1} f̄ dv` and `F⁻_ℓ = ∫_{−∞}^0 v^{ℓ+1} f̄ dv` for
/// `ℓ < n_moments`, with `f̄` the reconstructed distribution.
pub fn kfvs_half_moments(params: &QuadParams, kind: ClosureKind, n_moments: usize) -> (MomentVec, MomentVec) {
    let mut plus = [0.0; 6];
    let mut minus = [0.0; 6];
    for (mu, w) in params.nodes() {
        if w == 0.0 {
            continue;
        }
        let (pos, neg) = match kind {
            _ if params.sigma <= 0.0 => delta_halves(mu),
            ClosureKind::BiDelta => delta_halves(mu),
            ClosureKind::BiGaussian => gaussian_halves(mu, params.sigma),
            ClosureKind::BiBSpline => triangle_halves(mu, 0.5 * params.sigma.sqrt()),
        };
        for k in 0..6 {
            plus[k] += w * pos[k];
            minus[k] += w * neg[k];
        }
    }
    let mut fp = MomentVec::ZERO;
    let mut fm = MomentVec::ZERO;
    for l in 0..n_moments {
        fp[l] = plus[l + 1];
        fm[l] = minus[l + 1];
    }
    (fp, fm)
}

fn powers(mu: f64) -> [f64; 6] {
    let mut out = [1.0; 6];
    for k in 1..6 {
        out[k] = out[k - 1] * mu;
    }
    out
}

fn delta_halves(mu: f64) -> ([f64; 6], [f64; 6]) {
    if mu > 0.0 {
        (powers(mu), [0.0; 6])
    } else if mu < 0.0 {
        ([0.0; 6], powers(mu))
    } else {
        let mut half = [0.0; 6];
        half[0] = 0.5;
        (half, half)
    }
}

/// Truncated moments of a unit-mass Gaussian with mean `mu`, variance `var`.
fn gaussian_halves(mu: f64, var: f64) -> ([f64; 6], [f64; 6]) {
    let sd = var.sqrt();
    let z = mu / (std::f64::consts::SQRT_2 * sd);
    let density0 = INV_SQRT_2PI / sd * (-0.5 * mu * mu / var).exp();
    let mut pos = [0.0; 6];
    let mut neg = [0.0; 6];
    pos[0] = 0.5 * libm::erfc(-z);
    neg[0] = 0.5 * libm::erfc(z);
    pos[1] = mu * pos[0] + var * density0;
    neg[1] = mu * neg[0] - var * density0;
    for k in 2..6 {
        let c = (k - 1) as f64 * var;
        pos[k] = mu * pos[k - 1] + c * pos[k - 2];
        neg[k] = mu * neg[k - 1] + c * neg[k - 2];
    }
    (pos, neg)
}

/// Truncated moments of the unit-mass triangle `(h − |v − μ|)/h²`.
fn triangle_halves(mu: f64, h: f64) -> ([f64; 6], [f64; 6]) {
    if mu - h >= 0.0 || mu + h <= 0.0 {
        let (c2, c4) = kernel_central_moments(ClosureKind::BiBSpline, 4.0 * h * h);
        let m = powers(mu);
        let full = [
            1.0,
            mu,
            m[2] + c2,
            m[3] + 3.0 * mu * c2,
            m[4] + 6.0 * m[2] * c2 + c4,
            m[5] + 10.0 * m[3] * c2 + 5.0 * mu * c4,
        ];
        return if mu > 0.0 { (full, [0.0; 6]) } else { ([0.0; 6], full) };
    }
    // split the support at v = 0, i.e. at t = −μ in the local variable
    let t0 = -mu;
    let neg = triangle_piece(mu, h, -h, t0);
    let pos = triangle_piece(mu, h, t0, h);
    (pos, neg)
}

/// `∫_{ta}^{tb} (μ + t)^k (h − |t|)/h² dt` for `k = 0..=5`, `−h ≤ ta ≤ tb ≤ h`.
fn triangle_piece(mu: f64, h: f64, ta: f64, tb: f64) -> [f64; 6] {
    // local moments ∫ t^j (h − |t|)/h² dt, split at t = 0
    let mut local = [0.0; 6];
    let mut add = |a: f64, b: f64, sign: f64| {
        let (mut pa, mut pb) = (a, b);
        for (j, slot) in local.iter_mut().enumerate() {
            let j1 = (j + 1) as f64;
            let j2 = (j + 2) as f64;
            let lin = (pb - pa) / j1;
            let quad = (pb * b - pa * a) / j2;
            *slot += (h * lin - sign * quad) / (h * h);
            pa *= a;
            pb *= b;
        }
    };
    if ta < 0.0 {
        add(ta, tb.min(0.0), -1.0);
    }
    if tb > 0.0 {
        add(ta.max(0.0), tb, 1.0);
    }
    let m = powers(mu);
    let mut out = [0.0; 6];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut binom = 1.0;
        for j in 0..=k {
            *slot += binom * m[k - j] * local[j];
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }
    out
}
