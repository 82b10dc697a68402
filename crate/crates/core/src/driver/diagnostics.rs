use crate::closure::{self, Limits};
use crate::dg::basis::basis_values;
use crate::dg::{Basis, DgField};
use crate::error::Result;
use crate::moments::{cons_to_prim_unchecked, ClosureKind, MomentVec, PrimState};

/// One row of the diagnostics time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub step: usize,
    pub t: f64,
    /// `‖M₁ + ρE‖_{L²}`, zero exactly at local equilibrium.
    pub eq_norm: f64,
    pub mass: f64,
    /// Cumulative pointwise realizability repairs.
    pub repairs: usize,
    /// Cumulative pointwise losses of strict hyperbolicity.
    pub hyp_loss: usize,
}

/// `sqrt(∫ (M₁ + ρE)² dx)` evaluated with the element quadrature of `basis`.
pub fn equilibrium_norm(moments: &DgField, efield: &DgField, basis: &Basis) -> f64 {
    let grid = moments.grid;
    let mut m = vec![0.0; moments.ncomp];
    let mut e = [0.0];
    let mut sum = 0.0;
    for (q, &xi) in basis.nodes.iter().enumerate() {
        let phi = &basis.phi[q];
        let phi_e = basis_values(efield.degree, xi);
        for i in 0..grid.elements {
            moments.eval_with(i, phi, &mut m);
            efield.eval_with(i, &phi_e, &mut e);
            let d = m[1] + m[0] * e[0];
            sum += 0.5 * grid.dx() * basis.weights[q] * d * d;
        }
    }
    sum.sqrt()
}

/// Pointwise state reported in snapshots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub x: f64,
    /// Primitive state; `r` is NaN for the four-moment closure.
    pub prim: PrimState,
    pub alpha: f64,
    pub mu: [f64; 2],
    pub w: [f64; 2],
    pub efield: f64,
}

/// Reference coordinates of the snapshot sample points: evenly spaced from
/// the left edge to the right edge of the element (just the center for one).
pub fn sample_offsets(per_element: usize) -> Vec<f64> {
    if per_element == 1 {
        return vec![0.0];
    }
    (0..per_element).map(|j| -1.0 + 2.0 * j as f64 / (per_element - 1) as f64).collect()
}

/// Samples the solution at `per_element` evenly spaced points of every
/// element, edges included, so interface traces from both sides appear.
/// Pointwise states pass through the same realizability repair as the
/// transport step.
pub fn sample(
    moments: &DgField,
    efield: &DgField,
    kind: ClosureKind,
    limits: &Limits,
    per_element: usize,
) -> Result<Vec<SamplePoint>> {
    let grid = moments.grid;
    let n = kind.moment_count();
    let offsets = sample_offsets(per_element);
    let phis: Vec<(Vec<f64>, Vec<f64>)> = offsets
        .iter()
        .map(|&xi| (basis_values(moments.degree, xi), basis_values(efield.degree, xi)))
        .collect();
    let mut out = Vec::with_capacity(grid.elements * per_element);
    let mut m = vec![0.0; n];
    let mut e = [0.0];
    for i in 0..grid.elements {
        for (j, (phi, phi_e)) in phis.iter().enumerate() {
            moments.eval_with(i, phi, &mut m);
            efield.eval_with(i, phi_e, &mut e);
            let raw = cons_to_prim_unchecked(&MomentVec::from_slice(&m), kind).map_err(|err| err.at_element(i))?;
            let mut prim = closure::realizability_project(&raw, kind, limits).map_err(|err| err.at_element(i))?;
            let params = closure::invert(&prim, kind, limits).map_err(|err| err.at_element(i))?;
            let alpha = if kind == ClosureKind::BiDelta {
                prim.r = f64::NAN;
                1.0
            } else {
                params.alpha
            };
            out.push(SamplePoint {
                x: grid.x(i, offsets[j]),
                prim,
                alpha,
                mu: [params.mu1, params.mu2],
                w: [params.w1, params.w2],
                efield: e[0],
            });
        }
    }
    Ok(out)
}
