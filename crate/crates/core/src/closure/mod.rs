//! Moment inversion and closure evaluation for the two-node ansätze.
//!
//! Each closure represents the distribution as two equal-shape kernels at
//! abscissas `μ₁ ≤ μ₂` with weights `ω₁, ω₂`:
//!
//! * bi-delta: Dirac masses (four moments),
//! * bi-Gaussian: Gaussians of variance `σ`,
//! * bi-B-spline: C⁰ triangles with support `μ ± √σ / 2`.
//!
//! The five-moment closures carry a shape parameter `α ∈ (0, 1]` found as the
//! root of a cubic; `α = 1` recovers the bi-delta nodes.

mod cubic;
pub mod formulas;
mod kfvs;

pub use kfvs::kfvs_half_moments;

use crate::error::{Bound, Error, Result};
use crate::moments::{ClosureKind, MomentVec, PrimState, DEFAULT_P_MIN};

/// Below this the bi-Gaussian shape parameter is treated as zero.
pub const DEFAULT_ALPHA_EPS: f64 = 1e-10;

/// `|q| ≤ q_tol · p·√(p/ρ)` counts as `q = 0` when repairing states.
pub const DEFAULT_Q_TOL: f64 = 1e-8;

/// Lower end of the bi-B-spline shape interval.
pub const BSPLINE_ALPHA_MIN: f64 = 3.0 / 13.0;

/// Relative slack allowed on realizability bounds before an input is rejected.
const BOUND_SLACK: f64 = 1e-12;

/// Numerical thresholds shared by inversion and state repair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    pub p_min: f64,
    pub alpha_eps: f64,
    pub q_tol: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            p_min: DEFAULT_P_MIN,
            alpha_eps: DEFAULT_ALPHA_EPS,
            q_tol: DEFAULT_Q_TOL,
        }
    }
}

/// Which formula branch produced a set of quadrature parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Regular,
    /// Bi-Gaussian with `α` below `alpha_eps`: a single Gaussian.
    Degenerate,
    /// Bi-B-spline with `r` above the admissible range and `α` pinned at 3/13.
    Clamped,
}

/// Two-node quadrature representation of a moment state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadParams {
    pub mu1: f64,
    pub mu2: f64,
    pub w1: f64,
    pub w2: f64,
    pub alpha: f64,
    /// Per-node variance (bi-Gaussian) or squared support scale (bi-B-spline).
    pub sigma: f64,
    pub branch: Branch,
}

impl QuadParams {
    pub fn nodes(&self) -> [(f64, f64); 2] {
        [(self.mu1, self.w1), (self.mu2, self.w2)]
    }
}

/// Second and fourth central moments of a unit-mass kernel with width `sigma`.
fn kernel_central_moments(kind: ClosureKind, sigma: f64) -> (f64, f64) {
    match kind {
        ClosureKind::BiDelta => (0.0, 0.0),
        ClosureKind::BiGaussian => (sigma, 3.0 * sigma * sigma),
        ClosureKind::BiBSpline => (sigma / 24.0, sigma * sigma / 240.0),
    }
}

/// Kurtosis weight of the kernel, see [`formulas::ansatz_m4`].
pub(crate) fn kurtosis_weight(kind: ClosureKind) -> f64 {
    match kind {
        ClosureKind::BiDelta => 0.0,
        ClosureKind::BiGaussian => 3.0,
        ClosureKind::BiBSpline => 2.4,
    }
}

fn check_positive(prim: &PrimState) -> Result<()> {
    if !(prim.rho > 0.0) {
        return Err(Error::NonRealizable(Bound::Density));
    }
    if !(prim.p > 0.0) {
        return Err(Error::NonRealizable(Bound::Pressure));
    }
    Ok(())
}

/// Nodes of a bi-delta distribution with pressure `p_eff` and heat flux `q`.
///
/// Offsets from `u` are formed so that neither root suffers cancellation,
/// and the weights follow from `ω₁d₁ + ω₂d₂ = 0`.
fn two_point_nodes(rho: f64, u: f64, p_eff: f64, q: f64) -> (f64, f64, f64, f64) {
    let a = q / (2.0 * p_eff);
    let b = p_eff / rho;
    let s = (b + a * a).sqrt();
    let (d1, d2) = if a >= 0.0 {
        let d2 = a + s;
        (-b / d2, d2)
    } else {
        let d1 = a - s;
        (d1, -b / d1)
    };
    let gap = d2 - d1;
    let w1 = rho * d2 / gap;
    let w2 = -rho * d1 / gap;
    (u + d1, u + d2, w1, w2)
}

pub fn invert_bidelta(prim: &PrimState) -> Result<QuadParams> {
    check_positive(prim)?;
    let (mu1, mu2, w1, w2) = two_point_nodes(prim.rho, prim.u, prim.p, prim.q);
    Ok(QuadParams {
        mu1,
        mu2,
        w1,
        w2,
        alpha: 1.0,
        sigma: 0.0,
        branch: Branch::Regular,
    })
}

pub fn closure_m4_bidelta(prim: &PrimState) -> Result<f64> {
    check_positive(prim)?;
    Ok(formulas::bidelta_m4(prim.rho, prim.u, prim.p, prim.q))
}

/// Shape parameter of the bi-Gaussian closure.
pub fn solve_alpha_bigauss(prim: &PrimState) -> Result<f64> {
    check_positive(prim)?;
    let PrimState { rho, p, q, r, .. } = *prim;
    let lower = p * p / rho + q * q / p;
    if r < lower * (1.0 - BOUND_SLACK) {
        return Err(Error::NonRealizable(Bound::FourthMomentLow { r, lower }));
    }
    if q == 0.0 {
        let upper = 3.0 * p * p / rho;
        if r > upper * (1.0 + BOUND_SLACK) {
            return Err(Error::NonRealizable(Bound::FourthMomentHigh { r, upper }));
        }
        let x = (3.0 * p * p - rho * r) / (2.0 * p * p);
        return Ok(x.clamp(0.0, 1.0).sqrt());
    }
    let f = |a: f64| {
        let val = formulas::bigauss_cubic(rho, p, q, r, a);
        let der = 6.0 * p * p * p * a * a + (rho * r - 3.0 * p * p) * p;
        let mag = 2.0 * p * p * p * a * a * a + (rho * r + 3.0 * p * p) * p * a + rho * q * q;
        (val, der, mag)
    };
    if f(1.0).0 <= 0.0 {
        return Ok(1.0);
    }
    Ok(cubic::bracketed_root_from(f, 0.0, 1.0, bigauss_upper_seed(rho, p, q, r)))
}

/// A point at or above the bi-Gaussian root. The cubic `Aα³ + Bα − C` is
/// convex for `α > 0`, so Newton from here decreases monotonically onto it.
fn bigauss_upper_seed(rho: f64, p: f64, q: f64, r: f64) -> f64 {
    let a = 2.0 * p * p * p;
    let b = (rho * r - 3.0 * p * p) * p;
    let c = rho * q * q;
    let cube = (c / a).cbrt();
    if b > 0.0 {
        cube.min(c / b)
    } else {
        (-b / a).sqrt() + cube
    }
}

/// Bi-B-spline shape parameter and whether it was clamped at 3/13.
fn bspline_alpha(prim: &PrimState) -> Result<(f64, bool)> {
    check_positive(prim)?;
    let PrimState { rho, p, q, r, .. } = *prim;
    let lower = q * q / p + p * p / rho;
    if r < lower * (1.0 - BOUND_SLACK) {
        return Err(Error::NonRealizable(Bound::FourthMomentLow { r, lower }));
    }
    let upper = 13.0 * q * q / (3.0 * p) + 33.0 * p * p / (13.0 * rho);
    if r >= upper {
        return Ok((BSPLINE_ALPHA_MIN, true));
    }
    let f = |a: f64| {
        let p3 = p * p * p;
        let val = formulas::bspline_cubic(rho, p, q, r, a);
        let der = 39.0 * p3 * a * a - 12.0 * p3 * a + p * (5.0 * r * rho - 12.0 * p * p);
        let mag = 13.0 * p3 * a * a * a + 6.0 * p3 * a * a + a * p * (5.0 * r * rho + 12.0 * p * p) + 5.0 * rho * q * q;
        (val, der, mag)
    };
    if f(1.0).0 <= 0.0 {
        return Ok((1.0, false));
    }
    if f(BSPLINE_ALPHA_MIN).0 >= 0.0 {
        return Ok((BSPLINE_ALPHA_MIN, false));
    }
    Ok((cubic::bracketed_root(f, BSPLINE_ALPHA_MIN, 1.0), false))
}

/// Shape parameter of the bi-B-spline closure, clamped to 3/13 when `r` is
/// above the range the ansatz can represent.
pub fn solve_alpha_bspline(prim: &PrimState) -> Result<f64> {
    bspline_alpha(prim).map(|(a, _)| a)
}

fn bigauss_params(prim: &PrimState, alpha_eps: f64) -> Result<QuadParams> {
    let alpha = solve_alpha_bigauss(prim)?;
    let PrimState { rho, u, p, q, .. } = *prim;
    if alpha < alpha_eps {
        return Ok(QuadParams {
            mu1: u,
            mu2: u,
            w1: 0.5 * rho,
            w2: 0.5 * rho,
            alpha: 0.0,
            sigma: p / rho,
            branch: Branch::Degenerate,
        });
    }
    let (mu1, mu2, w1, w2) = two_point_nodes(rho, u, p * alpha, q);
    Ok(QuadParams {
        mu1,
        mu2,
        w1,
        w2,
        alpha,
        sigma: p * (1.0 - alpha) / rho,
        branch: Branch::Regular,
    })
}

pub fn invert_bigauss(prim: &PrimState) -> Result<QuadParams> {
    bigauss_params(prim, DEFAULT_ALPHA_EPS)
}

pub fn invert_bspline(prim: &PrimState) -> Result<QuadParams> {
    let (alpha, clamped) = bspline_alpha(prim)?;
    let PrimState { rho, u, p, q, .. } = *prim;
    let (mu1, mu2, w1, w2) = two_point_nodes(rho, u, p * alpha, q);
    Ok(QuadParams {
        mu1,
        mu2,
        w1,
        w2,
        alpha,
        sigma: 24.0 * p * (1.0 - alpha) / rho,
        branch: if clamped { Branch::Clamped } else { Branch::Regular },
    })
}

/// Quadrature parameters for any closure.
pub fn invert(prim: &PrimState, kind: ClosureKind, limits: &Limits) -> Result<QuadParams> {
    match kind {
        ClosureKind::BiDelta => invert_bidelta(prim),
        ClosureKind::BiGaussian => bigauss_params(prim, limits.alpha_eps),
        ClosureKind::BiBSpline => invert_bspline(prim),
    }
}

pub fn closure_m5_bigauss(prim: &PrimState) -> Result<f64> {
    let mut alpha = solve_alpha_bigauss(prim)?;
    if alpha < DEFAULT_ALPHA_EPS {
        alpha = 0.0;
    }
    Ok(formulas::bigauss_m5(prim.rho, prim.u, prim.p, prim.q, alpha))
}

pub fn closure_m5_bspline(prim: &PrimState, alpha: f64) -> f64 {
    formulas::bspline_m5(prim.rho, prim.u, prim.p, prim.q, alpha)
}

/// Raw moments `0..=5` of the reconstructed distribution.
pub fn ansatz_moments(params: &QuadParams, kind: ClosureKind) -> [f64; 6] {
    let (c2, c4) = kernel_central_moments(kind, params.sigma);
    let mut out = [0.0; 6];
    for (mu, w) in params.nodes() {
        let m2 = mu * mu;
        let m3 = m2 * mu;
        let m4 = m2 * m2;
        out[0] += w;
        out[1] += w * mu;
        out[2] += w * (m2 + c2);
        out[3] += w * (m3 + 3.0 * mu * c2);
        out[4] += w * (m4 + 6.0 * m2 * c2 + c4);
        out[5] += w * (m4 * mu + 10.0 * m3 * c2 + 5.0 * mu * c4);
    }
    out
}

/// Flux vector `(M₁, …, M_N)` of the reconstructed distribution.
pub fn full_flux(params: &QuadParams, kind: ClosureKind) -> MomentVec {
    let m = ansatz_moments(params, kind);
    let mut f = MomentVec::ZERO;
    for l in 0..kind.moment_count() {
        f[l] = m[l + 1];
    }
    f
}

/// Moves a primitive state into the closure's realizable set.
///
/// `p` is floored at `p_min` and `r` clamped into the admissible interval;
/// `ρ`, `u` and `q` are left alone. Applying it twice changes nothing.
pub fn realizability_project(prim: &PrimState, kind: ClosureKind, limits: &Limits) -> Result<PrimState> {
    if !(prim.rho > 0.0) || !prim.rho.is_finite() {
        return Err(Error::NonRecoverable(prim.rho));
    }
    let mut out = *prim;
    if !(out.p >= limits.p_min) {
        out.p = limits.p_min;
    }
    let PrimState { rho, p, q, .. } = out;
    match kind {
        ClosureKind::BiDelta => {}
        ClosureKind::BiGaussian => {
            let lower = p * p / rho + q * q / p;
            if !(out.r >= lower) {
                out.r = lower;
            }
            let q_scale = p * (p / rho).sqrt();
            if q.abs() <= limits.q_tol * q_scale {
                let upper = 3.0 * p * p / rho;
                if out.r > upper {
                    out.r = upper;
                }
            }
        }
        ClosureKind::BiBSpline => {
            let lower = q * q / p + p * p / rho;
            if !(out.r >= lower) {
                out.r = lower;
            }
        }
    }
    Ok(out)
}
