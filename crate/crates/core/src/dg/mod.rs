//! Discontinuous Galerkin discretization of the closed moment system on a
//! periodic grid.
//!
//! Interface fluxes come from kinetic flux-vector splitting: the right-going
//! half-moments of the left trace plus the left-going half-moments of the
//! right trace. Before any flux evaluation, each pointwise state is pushed
//! into the realizable set; repairs are counted rather than silently
//! absorbed.

pub mod basis;
mod limiter;
mod rk;
mod space;

pub use basis::Basis;
pub use limiter::moment_limit;
pub use rk::{ssp_rk3_step, ssp_rk3_step_with};
pub use space::{project, project_with, DgField, Grid};

use crate::closure::{self, full_flux, kfvs_half_moments, Branch, Limits, QuadParams};
use crate::error::{Error, Result};
use crate::hyperbolic::wave_speeds;
use crate::moments::{cons_to_prim_unchecked, ClosureKind, MomentVec, PrimState};

/// Default CFL number.
pub const DEFAULT_CFL: f64 = 0.9;

/// Relative change beyond which a pointwise repair is counted.
const REPAIR_TOL: f64 = 1e-8;

/// Counters accumulated by the transport operator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TransportStats {
    /// Pointwise states changed by the realizability repair.
    pub repairs: usize,
    /// Pointwise states whose characteristic speeds were not all real.
    pub hyperbolicity_loss: usize,
    /// Coefficients modified by the limiter.
    pub limited: usize,
}

/// Collisionless transport of the closed moment system.
#[derive(Debug, Clone)]
pub struct Transport {
    pub kind: ClosureKind,
    pub limits: Limits,
    pub limiter: bool,
    basis: Basis,
}

fn significantly_changed(before: &PrimState, after: &PrimState) -> bool {
    let moved = |a: f64, b: f64| !((a - b).abs() <= REPAIR_TOL * b.abs());
    moved(before.p, after.p) || moved(before.r, after.r)
}

impl Transport {
    pub fn new(kind: ClosureKind, degree: usize, limits: Limits, limiter: bool) -> Self {
        Transport {
            kind,
            limits,
            limiter,
            basis: Basis::new(degree),
        }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    /// Realizable primitive state and quadrature parameters for a pointwise
    /// moment vector.
    pub fn node_state(&self, m: &[f64], repairs: &mut usize) -> Result<(PrimState, QuadParams)> {
        let n = self.kind.moment_count();
        let mv = MomentVec::from_slice(&m[..n]);
        if !(mv[0] > 0.0) || !mv.is_finite() {
            return Err(Error::NonRecoverable(mv[0]));
        }
        let raw = cons_to_prim_unchecked(&mv, self.kind)?;
        let fixed = closure::realizability_project(&raw, self.kind, &self.limits)?;
        let mut repaired = significantly_changed(&raw, &fixed);
        let params = closure::invert(&fixed, self.kind, &self.limits)?;
        if params.branch == Branch::Degenerate {
            // the single-Gaussian branch cannot carry a heat flux
            let q_scale = fixed.p * (fixed.p / fixed.rho).sqrt();
            repaired |= fixed.q.abs() > self.limits.q_tol * q_scale;
        }
        if repaired {
            *repairs += 1;
        }
        Ok((fixed, params))
    }

    fn check_field(&self, u: &DgField) {
        assert_eq!(u.ncomp, self.kind.moment_count(), "field has the wrong number of moments");
        assert_eq!(u.degree, self.basis.degree, "field degree does not match the transport basis");
    }

    /// Semi-discrete rate `dU/dt`.
    pub fn rhs(&self, u: &DgField, stats: &mut TransportStats) -> Result<DgField> {
        self.check_field(u);
        let grid = u.grid;
        let n = self.kind.moment_count();
        let nb = self.basis.n_basis();
        let dx = grid.dx();
        let mut out = DgField::zeros(grid, u.degree, n);
        let mut right_going = vec![MomentVec::ZERO; grid.elements];
        let mut left_going = vec![MomentVec::ZERO; grid.elements];
        let mut val = [0.0; 5];

        for i in 0..grid.elements {
            let at = |e: Error| e.at_element(i);
            let rate = out.element_mut(i);
            for q in 0..self.basis.n_points() {
                u.eval_with(i, &self.basis.phi[q], &mut val);
                let (_, params) = self.node_state(&val, &mut stats.repairs).map_err(at)?;
                let f = full_flux(&params, self.kind);
                let w = self.basis.weights[q] / dx;
                for l in 0..nb {
                    let s = w * self.basis.dphi[q][l];
                    for c in 0..n {
                        rate[l * n + c] += s * f[c];
                    }
                }
            }
            u.eval_with(i, &self.basis.right, &mut val);
            let (_, params) = self.node_state(&val, &mut stats.repairs).map_err(at)?;
            right_going[i] = kfvs_half_moments(&params, self.kind, n).0;
            u.eval_with(i, &self.basis.left, &mut val);
            let (_, params) = self.node_state(&val, &mut stats.repairs).map_err(at)?;
            left_going[i] = kfvs_half_moments(&params, self.kind, n).1;
        }

        for i in 0..grid.elements {
            let flux_right = right_going[i] + left_going[grid.next(i)];
            let flux_left = right_going[grid.prev(i)] + left_going[i];
            let rate = out.element_mut(i);
            for l in 0..nb {
                let (sr, sl) = (self.basis.right[l] / dx, self.basis.left[l] / dx);
                for c in 0..n {
                    rate[l * n + c] -= sr * flux_right[c] - sl * flux_left[c];
                }
            }
        }
        Ok(out)
    }

    /// One SSP-RK3 step of length `dt`, limiting after each stage if enabled.
    pub fn step(&self, u: &DgField, dt: f64, stats: &mut TransportStats) -> Result<DgField> {
        let mut limited = 0;
        let stage = |v: &DgField| -> Result<DgField> {
            check_positive_averages(v)?;
            self.rhs(v, stats)
        };
        let limiter = self.limiter;
        let out = ssp_rk3_step_with(u, dt, stage, |v| {
            if limiter {
                limited += moment_limit(v);
            }
        })?;
        check_positive_averages(&out)?;
        stats.limited += limited;
        Ok(out)
    }

    /// Largest characteristic speed over all quadrature nodes.
    pub fn max_speed(&self, u: &DgField, stats: &mut TransportStats) -> Result<f64> {
        self.check_field(u);
        let mut val = [0.0; 5];
        let mut s_max = 0.0f64;
        for i in 0..u.grid.elements {
            for q in 0..self.basis.n_points() {
                u.eval_with(i, &self.basis.phi[q], &mut val);
                let (prim, _) = self.node_state(&val, &mut 0).map_err(|e| e.at_element(i))?;
                let w = wave_speeds(&prim, self.kind, &self.limits).map_err(|e| e.at_element(i))?;
                if !w.hyperbolic {
                    stats.hyperbolicity_loss += 1;
                }
                s_max = s_max.max(w.max_abs());
            }
        }
        Ok(s_max)
    }

    /// Stable time step `ν Δx / ((2k+1) s_max)`.
    pub fn cfl_dt(&self, u: &DgField, cfl: f64, stats: &mut TransportStats) -> Result<f64> {
        let s = self.max_speed(u, stats)?.max(f64::MIN_POSITIVE);
        Ok(cfl * u.grid.dx() / ((2 * self.degree() + 1) as f64 * s))
    }
}

fn check_positive_averages(u: &DgField) -> Result<()> {
    for i in 0..u.grid.elements {
        let rho = u.average(i, 0);
        if !(rho > 0.0) {
            return Err(Error::NonRecoverable(rho).at_element(i));
        }
    }
    Ok(())
}

/// Semi-discrete rate of the closed moment system with default limits.
pub fn semi_discrete_rhs(u: &DgField, kind: ClosureKind) -> Result<DgField> {
    Transport::new(kind, u.degree, Limits::default(), false).rhs(u, &mut TransportStats::default())
}

/// CFL time step with default limits.
pub fn cfl_dt(u: &DgField, kind: ClosureKind, cfl: f64) -> Result<f64> {
    Transport::new(kind, u.degree, Limits::default(), false).cfl_dt(u, cfl, &mut TransportStats::default())
}

/// L² projection of a moment profile given in primitive variables.
pub fn project_prim(grid: Grid, degree: usize, kind: ClosureKind, f: impl Fn(f64) -> PrimState) -> DgField {
    let n = kind.moment_count();
    project(grid, degree, n, |x, out| {
        let m = crate::moments::prim_to_cons(&f(x), kind);
        out.copy_from_slice(&m.0[..n]);
    })
}
