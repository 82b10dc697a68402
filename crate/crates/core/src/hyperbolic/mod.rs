//! Eigenstructure of the closed moment systems.
//!
//! The flux Jacobian is in companion form: the first rows shift the moment
//! vector and the last row holds the gradient of the closure moment. Its
//! characteristic polynomial is therefore read off that row, and right
//! eigenvectors are Vandermonde vectors `[1, z, z², …]`.
//!
//! The closure row is obtained by forward-mode differentiation of the
//! closed-form closure, including the implicit dependence of `α` on the
//! moments through its cubic.

mod dual;
mod roots;

use num_complex::Complex64;

use crate::closure::formulas;
use crate::closure::{self, Branch, Limits, DEFAULT_ALPHA_EPS};
use crate::error::{Error, Result};
use crate::moments::{cons_to_prim_unchecked, prim_to_cons, ClosureKind, MomentVec, PrimState};
use dual::Dual5;

/// Constants of the near-equilibrium genuine-nonlinearity estimate, by wave.
pub const GNL_CONSTANTS: [f64; 5] = [
    2.0 + 3.1622776601683795,
    2.0 - 3.1622776601683795,
    0.75,
    2.0 - 3.1622776601683795,
    2.0 + 3.1622776601683795,
];

/// Imaginary parts above this fraction of the root scale count as complex.
const IMAG_TOL: f64 = 1e-8;

/// Relative eigenvalue gap below which eigenvalues count as coincident.
const COLLISION_TOL: f64 = 1e-6;

/// Eigenvalues with right and left eigenvectors of a flux Jacobian.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomp {
    /// Eigenvalues in ascending order.
    pub lambda: Vec<f64>,
    /// Right eigenvectors `[1, z, z², …]`, one per independent direction.
    pub right: Vec<Vec<f64>>,
    /// Left eigenvectors normalized so that `left[i]·right[j] = δᵢⱼ`.
    /// Empty when the Jacobian is defective.
    pub left: Vec<Vec<f64>>,
    pub defective: bool,
}

/// Extreme characteristic speeds of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds {
    pub min: f64,
    pub max: f64,
    /// False when the characteristic polynomial had complex roots or the
    /// root finder failed, in which case `min`/`max` are the fallback bound.
    pub hyperbolic: bool,
}

impl WaveSpeeds {
    pub fn max_abs(&self) -> f64 {
        self.min.abs().max(self.max.abs())
    }
}

/// Characteristic polynomial of the closed system, as monic coefficients
/// (constant term first) plus any eigenvalues known in closed form.
enum Characteristic {
    Poly(Vec<f64>),
    /// Clamped bi-B-spline: the closure no longer depends on `M₄`, so the
    /// Jacobian splits into a quartic block and a zero eigenvalue.
    PolyAndZero(Vec<f64>),
}

fn dual_primitives(prim: &PrimState, kind: ClosureKind) -> [Dual5; 5] {
    let m = prim_to_cons(prim, kind);
    let n = kind.moment_count();
    let mut md = [Dual5::constant(0.0); 5];
    for i in 0..n {
        md[i] = Dual5::variable(m[i], i);
    }
    formulas::primitives(&md, n == 5)
}

/// `∂P/∂α` at fixed moments, evaluated with plain floats. For the
/// bi-Gaussian the root identity replaces `ρr − 3p²`, which cancels
/// near equilibrium.
fn cubic_slope(kind: ClosureKind, prim: &PrimState, alpha: f64) -> f64 {
    let PrimState { rho, p, q, r, .. } = *prim;
    let p3 = p * p * p;
    match kind {
        ClosureKind::BiGaussian => 4.0 * p3 * alpha * alpha + rho * q * q / alpha,
        _ => 39.0 * p3 * alpha * alpha - 12.0 * p3 * alpha + p * (5.0 * r * rho - 12.0 * p * p),
    }
}

/// `α` as a dual number: its value solves `P(α; U) = 0`, so its tangent is
/// `−∂P/∂U / P'(α)`.
fn closure_alpha_dual(kind: ClosureKind, prim: &PrimState, alpha: f64, x: &[Dual5; 5]) -> Dual5 {
    let slope = cubic_slope(kind, prim, alpha);
    let a = Dual5::constant(alpha);
    let [rho, _, p, q, r] = *x;
    let at_fixed = match kind {
        ClosureKind::BiGaussian => formulas::bigauss_cubic(rho, p, q, r, a),
        _ => formulas::bspline_cubic(rho, p, q, r, a),
    };
    let mut out = a;
    for i in 0..5 {
        out.d[i] = -at_fixed.d[i] / slope;
    }
    out
}

/// Row of the flux Jacobian holding the gradient of the closure moment:
/// `a_j = ∂M̄_N/∂M_j`, padded with zeros for the four-moment system.
pub fn jacobian_closure_row(prim: &PrimState, kind: ClosureKind) -> Result<[f64; 5]> {
    let x = dual_primitives(prim, kind);
    let [rho, u, p, q, _] = x;
    let row = match kind {
        ClosureKind::BiDelta => formulas::bidelta_m4(rho, u, p, q),
        ClosureKind::BiGaussian => {
            let alpha = closure::solve_alpha_bigauss(prim)?;
            if alpha < DEFAULT_ALPHA_EPS {
                return Err(Error::DegenerateState("shape parameter below the degenerate threshold"));
            }
            let a = closure_alpha_dual(kind, prim, alpha, &x);
            formulas::bigauss_m5(rho, u, p, q, a)
        }
        ClosureKind::BiBSpline => {
            let params = closure::invert_bspline(prim)?;
            let a = if params.branch == Branch::Clamped {
                Dual5::constant(params.alpha)
            } else {
                closure_alpha_dual(kind, prim, params.alpha, &x)
            };
            formulas::bspline_m5(rho, u, p, q, a)
        }
    };
    Ok(row.d)
}

fn characteristic(prim: &PrimState, kind: ClosureKind) -> Result<Characteristic> {
    if kind == ClosureKind::BiBSpline {
        let params = closure::invert_bspline(prim)?;
        if params.branch == Branch::Clamped {
            let [rho, u, p, q, _] = dual_primitives(prim, kind);
            let a = Dual5::constant(params.alpha);
            let row = formulas::ansatz_m4(rho, u, p, q, a, closure::kurtosis_weight(kind)).d;
            return Ok(Characteristic::PolyAndZero(row[..4].iter().map(|x| -x).collect()));
        }
    }
    let n = kind.moment_count();
    let row = jacobian_closure_row(prim, kind)?;
    Ok(Characteristic::Poly(row[..n].iter().map(|x| -x).collect()))
}

/// Characteristic roots relative to the mean velocity. The Jacobian is
/// evaluated at `u = 0`: near equilibrium the implicit `α` tangent divides by
/// `P'(α) ~ α²`, which would amplify roundoff in the velocity terms.
fn complex_roots(prim: &PrimState, kind: ClosureKind) -> Result<(Vec<Complex64>, bool)> {
    let rest = PrimState { u: 0.0, ..*prim };
    Ok(match characteristic(&rest, kind)? {
        Characteristic::Poly(c) => roots::monic_roots(&c),
        Characteristic::PolyAndZero(c) => {
            let (mut z, ok) = roots::monic_roots(&c);
            // the decoupled M₄ equation does not move with the flow
            z.push(Complex64::new(-prim.u, 0.0));
            (z, ok)
        }
    })
}

/// Sorted real eigenvalues, or `None` if any root is complex.
fn real_eigenvalues(z: &[Complex64], scale: f64) -> Option<Vec<f64>> {
    if z.iter().any(|r| r.im.abs() > IMAG_TOL * r.norm().max(scale)) {
        return None;
    }
    let mut re: Vec<f64> = z.iter().map(|r| r.re).collect();
    re.sort_by(f64::total_cmp);
    Some(re)
}

fn vandermonde(z: f64, n: usize) -> Vec<f64> {
    let mut v = vec![1.0; n];
    for i in 1..n {
        v[i] = v[i - 1] * z;
    }
    v
}

/// Left eigenvector `k` of a companion matrix with distinct eigenvalues `z`:
/// the coefficients of `Π_{j≠k}(x − z_j)` divided by `Π_{j≠k}(z_k − z_j)`.
fn left_eigenvector(z: &[f64], k: usize) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    let mut denom = 1.0;
    for (j, &zj) in z.iter().enumerate() {
        if j == k {
            continue;
        }
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= zj * c;
        }
        coeffs = next;
        denom *= z[k] - zj;
    }
    coeffs.iter().map(|c| c / denom).collect()
}

pub fn eigen_bidelta(prim: &PrimState) -> Result<EigenDecomp> {
    let q = closure::invert_bidelta(prim)?;
    Ok(EigenDecomp {
        lambda: vec![q.mu1, q.mu1, q.mu2, q.mu2],
        right: vec![vandermonde(q.mu1, 4), vandermonde(q.mu2, 4)],
        left: Vec::new(),
        defective: true,
    })
}

/// Full eigen-decomposition of a five-moment closure.
///
/// Fails with [`Error::DegenerateState`] when the eigenvalues are complex or
/// two of them coincide.
pub fn eigen_closure(prim: &PrimState, kind: ClosureKind) -> Result<EigenDecomp> {
    if kind == ClosureKind::BiDelta {
        return eigen_bidelta(prim);
    }
    let (z, converged) = complex_roots(prim, kind)?;
    let scale = prim.thermal_speed();
    let lambda = match real_eigenvalues(&z, scale) {
        Some(l) if converged => l.iter().map(|z| z + prim.u).collect::<Vec<_>>(),
        _ => return Err(Error::DegenerateState("characteristic speeds are not real")),
    };
    let gap = lambda.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let span = lambda.iter().fold(scale, |m, x| m.max(x.abs()));
    if gap <= COLLISION_TOL * span {
        return Err(Error::DegenerateState("coincident characteristic speeds"));
    }
    let n = lambda.len();
    Ok(EigenDecomp {
        right: lambda.iter().map(|&z| vandermonde(z, n)).collect(),
        left: (0..n).map(|k| left_eigenvector(&lambda, k)).collect(),
        lambda,
        defective: false,
    })
}

/// Asymptotic characteristic speeds of the bi-Gaussian system close to a
/// single Maxwellian, ascending.
pub fn near_equilibrium_speeds(prim: &PrimState) -> Result<[f64; 5]> {
    let alpha = closure::solve_alpha_bigauss(prim)?;
    let (alpha, qt) = if alpha < DEFAULT_ALPHA_EPS {
        (0.0, 0.0)
    } else {
        (alpha, prim.q / alpha)
    };
    Ok(near_equilibrium_from(prim, alpha, qt))
}

fn near_equilibrium_from(prim: &PrimState, alpha: f64, qt: f64) -> [f64; 5] {
    let s10 = 10f64.sqrt();
    let center = prim.u + 2.0 * qt / (5.0 * prim.p);
    let k = prim.p * (1.0 - alpha) / prim.rho;
    let fast = ((5.0 + s10) * k).sqrt();
    let slow = ((5.0 - s10) * k).sqrt();
    [center - fast, center - slow, center, center + slow, center + fast]
}

fn fallback_bound(prim: &PrimState, mu1: f64, mu2: f64) -> WaveSpeeds {
    let c = prim.thermal_speed();
    WaveSpeeds {
        min: mu1.min(mu2) - 5.0 * c,
        max: mu1.max(mu2) + 5.0 * c,
        hyperbolic: false,
    }
}

/// Smallest and largest characteristic speed, for time-step control.
///
/// Never fails on a realizable state: if the characteristic polynomial has
/// complex roots the conservative bound `[min μ − 5c, max μ + 5c]` with
/// `c = √(p/ρ)` is returned and `hyperbolic` is cleared.
pub fn wave_speeds(prim: &PrimState, kind: ClosureKind, limits: &Limits) -> Result<WaveSpeeds> {
    let params = closure::invert(prim, kind, limits)?;
    match (kind, params.branch) {
        (ClosureKind::BiDelta, _) => Ok(WaveSpeeds {
            min: params.mu1,
            max: params.mu2,
            hyperbolic: true,
        }),
        (ClosureKind::BiGaussian, Branch::Degenerate) => {
            let z = near_equilibrium_from(prim, 0.0, 0.0);
            Ok(WaveSpeeds {
                min: z[0],
                max: z[4],
                hyperbolic: true,
            })
        }
        _ => {
            let (z, converged) = complex_roots(prim, kind)?;
            match real_eigenvalues(&z, prim.thermal_speed()) {
                Some(l) if converged => Ok(WaveSpeeds {
                    min: l[0] + prim.u,
                    max: l[l.len() - 1] + prim.u,
                    hyperbolic: true,
                }),
                _ => Ok(fallback_bound(prim, params.mu1, params.mu2)),
            }
        }
    }
}

fn sorted_eigenvalues(m: &MomentVec, kind: ClosureKind) -> Result<Vec<f64>> {
    let prim = cons_to_prim_unchecked(m, kind)?;
    Ok(eigen_closure(&prim, kind)?.lambda)
}

/// Directional derivative `∇_U λ_k · r_k` of the `k`-th smallest eigenvalue
/// along its own right eigenvector (`k` counts from zero).
///
/// Central differences in conserved variables. Zero for linearly degenerate
/// fields; a sign change across states marks a non-genuinely-nonlinear field.
pub fn gnl_indicator(prim: &PrimState, kind: ClosureKind, k: usize) -> Result<f64> {
    let n = kind.moment_count();
    if k >= n {
        return Err(Error::InvalidConfig(format!("wave index {k} out of range for {n} moments")));
    }
    let decomp = eigen_closure(prim, kind)?;
    let z = decomp.lambda[k];
    let dir = vandermonde(z, n);
    let u = prim_to_cons(prim, kind);
    let u_norm = u.as_slice(n).iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let d_norm = dir.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let h = 1e-5 * u_norm / d_norm;
    let mut plus = u;
    let mut minus = u;
    for i in 0..n {
        plus[i] += h * dir[i];
        minus[i] -= h * dir[i];
    }
    let lp = sorted_eigenvalues(&plus, kind)?;
    let lm = sorted_eigenvalues(&minus, kind)?;
    Ok((lp[k] - lm[k]) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const FIG1_LEFT: PrimState = PrimState {
        rho: 1.5,
        u: -0.5,
        p: 1.5,
        q: 1.0,
        r: 4.5,
    };

    /// Closure moment as a function of conserved variables.
    fn closure_of_cons(m: &MomentVec, kind: ClosureKind) -> f64 {
        let prim = cons_to_prim_unchecked(m, kind).unwrap();
        match kind {
            ClosureKind::BiDelta => closure::closure_m4_bidelta(&prim).unwrap(),
            ClosureKind::BiGaussian => closure::closure_m5_bigauss(&prim).unwrap(),
            ClosureKind::BiBSpline => {
                closure::closure_m5_bspline(&prim, closure::solve_alpha_bspline(&prim).unwrap())
            }
        }
    }

    fn fd_row(prim: &PrimState, kind: ClosureKind) -> Vec<f64> {
        let n = kind.moment_count();
        let m = prim_to_cons(prim, kind);
        (0..n)
            .map(|j| {
                let h = (1e-6 * m[j].abs()).max(1e-8);
                let (mut a, mut b) = (m, m);
                a[j] += h;
                b[j] -= h;
                (closure_of_cons(&a, kind) - closure_of_cons(&b, kind)) / (2.0 * h)
            })
            .collect()
    }

    #[test]
    fn dual_row_matches_finite_differences() {
        for kind in ClosureKind::ALL {
            let row = jacobian_closure_row(&FIG1_LEFT, kind).unwrap();
            let fd = fd_row(&FIG1_LEFT, kind);
            for j in 0..kind.moment_count() {
                assert!((row[j] - fd[j]).abs() < 1e-6 * (1.0 + fd[j].abs()), "{kind} {j}: {} vs {}", row[j], fd[j]);
            }
        }
    }

    #[test]
    fn bidelta_eigenvalues() {
        let e = eigen_bidelta(&PrimState::four(1.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(e.lambda, vec![-1.0, -1.0, 1.0, 1.0]);
        assert!(e.defective);
        let e = eigen_bidelta(&PrimState::four(1.0, 0.8, 2.16, -1.296)).unwrap();
        for (got, want) in e.lambda.iter().zip([-1.0, -1.0, 2.0, 2.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert_eq!(e.right.len(), 2);
    }

    #[test]
    fn fig1_state_is_strictly_hyperbolic() {
        for kind in [ClosureKind::BiGaussian, ClosureKind::BiBSpline] {
            let e = eigen_closure(&FIG1_LEFT, kind).unwrap();
            assert_eq!(e.lambda.len(), 5);
            assert!(e.lambda.windows(2).all(|w| w[1] - w[0] > 1e-3));
        }
    }

    #[test]
    fn left_and_right_eigenvectors_are_biorthogonal() {
        let e = eigen_closure(&FIG1_LEFT, ClosureKind::BiGaussian).unwrap();
        for (i, l) in e.left.iter().enumerate() {
            for (j, r) in e.right.iter().enumerate() {
                let dot: f64 = l.iter().zip(r).map(|(a, b)| a * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn near_equilibrium_reference_values() {
        let z = near_equilibrium_speeds(&PrimState::new(1.0, 0.0, 1.0, 0.0, 3.0)).unwrap();
        let s10 = 10f64.sqrt();
        let want = [-(5.0 + s10).sqrt(), -(5.0 - s10).sqrt(), 0.0, (5.0 - s10).sqrt(), (5.0 + s10).sqrt()];
        assert_eq!(z, want);
        let w = wave_speeds(&PrimState::new(1.0, 0.0, 1.0, 0.0, 3.0), ClosureKind::BiGaussian, &Limits::default()).unwrap();
        assert_eq!((w.min, w.max), (want[0], want[4]));
    }

    #[test]
    fn quintic_roots_approach_near_equilibrium_speeds() {
        // q = 0 with α small but above the degenerate threshold
        let (rho, p) = (1.0, 1.0);
        let alpha: f64 = 1e-7;
        let r = (3.0 * p * p - 2.0 * p * p * alpha * alpha) / rho;
        let prim = PrimState::new(rho, 0.0, p, 0.0, r);
        let g = closure::invert_bigauss(&prim).unwrap();
        assert!(g.mu2 - g.mu1 < 1e-3);
        let e = eigen_closure(&prim, ClosureKind::BiGaussian).unwrap();
        let z = near_equilibrium_speeds(&prim).unwrap();
        for (a, b) in e.lambda.iter().zip(z) {
            assert!((a - b).abs() < 1e-5, "{a} vs {b}");
        }
    }

    #[test]
    fn skewed_moving_states_match_near_equilibrium_speeds() {
        let (rho, u, p): (f64, f64, f64) = (0.7, -1.0, 2.5);
        for alpha in [1e-7f64, 3e-8] {
            for theta in [-0.8, 0.3] {
                let q = theta * (alpha * p).powf(1.5) / rho.sqrt();
                let r = (rho * q * q - 2.0 * p.powi(3) * alpha.powi(3)) / (rho * p * alpha) + 3.0 * p * p / rho;
                let prim = PrimState::new(rho, u, p, q, r);
                let e = eigen_closure(&prim, ClosureKind::BiGaussian).unwrap();
                let z = near_equilibrium_speeds(&prim).unwrap();
                for (a, b) in e.lambda.iter().zip(z) {
                    assert!((a - b).abs() < 1e-6, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn clamped_bspline_has_a_zero_speed() {
        let e = eigen_closure(&PrimState::new(1.0, 0.7, 1.0, 0.0, 3.0), ClosureKind::BiBSpline).unwrap();
        assert!(e.lambda.iter().any(|&x| x == 0.0));
        let w = wave_speeds(&PrimState::new(1.0, 0.7, 1.0, 0.0, 3.0), ClosureKind::BiBSpline, &Limits::default()).unwrap();
        assert!(w.hyperbolic);
        assert_eq!(w.max, *e.lambda.last().unwrap());
    }

    #[test]
    fn galilean_shift() {
        let shifted = PrimState { u: FIG1_LEFT.u + 0.75, ..FIG1_LEFT };
        for kind in ClosureKind::ALL {
            let a = wave_speeds(&FIG1_LEFT, kind, &Limits::default()).unwrap();
            let b = wave_speeds(&shifted, kind, &Limits::default()).unwrap();
            assert_relative_eq!(b.min - a.min, 0.75, epsilon = 1e-8);
            assert_relative_eq!(b.max - a.max, 0.75, epsilon = 1e-8);
        }
    }

    #[test]
    fn bidelta_fields_are_linearly_degenerate() {
        let prim = PrimState::four(1.0, 0.3, 0.8, 0.2);
        for k in 0..4 {
            assert!(gnl_indicator(&prim, ClosureKind::BiDelta, k).unwrap().abs() < 1e-6);
        }
    }

    fn heat_flux_pair(alpha: f64, qt: f64) -> (PrimState, PrimState) {
        let (rho, p) = (1.0, 1.0);
        let q = alpha * qt;
        let r = (rho * q * q + 3.0 * p * p * p * alpha - 2.0 * p * p * p * alpha.powi(3)) / (rho * p * alpha);
        (PrimState::new(rho, 0.0, p, q, r), PrimState::new(rho, 0.0, p, -q, r))
    }

    #[test]
    fn middle_wave_indicator_flips_with_heat_flux() {
        for (alpha, qt) in [(0.1, 0.3), (0.01, 0.05), (1e-3, 0.3)] {
            let (pos, neg) = heat_flux_pair(alpha, qt);
            let a = gnl_indicator(&pos, ClosureKind::BiGaussian, 2).unwrap();
            let b = gnl_indicator(&neg, ClosureKind::BiGaussian, 2).unwrap();
            assert!(a > 0.0 && b < 0.0, "{a} {b}");
        }
    }

    #[test]
    fn indicator_reflection_symmetry() {
        let (pos, neg) = heat_flux_pair(0.1, 0.3);
        for k in 0..5 {
            let a = gnl_indicator(&pos, ClosureKind::BiGaussian, k).unwrap();
            let b = gnl_indicator(&neg, ClosureKind::BiGaussian, 4 - k).unwrap();
            assert!((a + b).abs() < 1e-5 * a.abs().max(1.0), "wave {k}: {a} {b}");
        }
    }

    #[test]
    fn outer_wave_indicator_changes_sign_along_heat_flux() {
        let (weak, _) = heat_flux_pair(0.01, 0.05);
        let (strong, _) = heat_flux_pair(0.01, 0.3);
        let a = gnl_indicator(&weak, ClosureKind::BiGaussian, 0).unwrap();
        let b = gnl_indicator(&strong, ClosureKind::BiGaussian, 0).unwrap();
        assert!(a * b < 0.0);
    }
}
