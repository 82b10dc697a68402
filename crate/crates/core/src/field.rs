//! Periodic field solve `E_x = ρ₀ − ρ`.
//!
//! For piecewise-polynomial charge the field is the exact antiderivative,
//! continuous across elements, one degree higher than the density, with the
//! constant fixed by zero mean.

use crate::dg::DgField;
use crate::error::{Error, Result};

/// Relative tolerance on the net charge `∫(ρ₀ − ρ) dx`.
pub const CHARGE_TOL: f64 = 1e-8;

/// Field from the density (component 0 of `moments`) and the background
/// charge `background` (a scalar field of the same degree).
pub fn solve_efield(moments: &DgField, background: &DgField) -> Result<DgField> {
    let grid = moments.grid;
    let k = moments.degree;
    assert_eq!(background.degree, k, "background charge must share the density degree");
    assert_eq!(background.grid, grid);
    let dx = grid.dx();
    let m = grid.elements;

    let mut net = 0.0;
    let mut scale = 0.0;
    for i in 0..m {
        net += dx * (background.average(i, 0) - moments.average(i, 0));
        scale += dx * (background.average(i, 0).abs() + moments.average(i, 0).abs());
    }
    if net.abs() > CHARGE_TOL * scale {
        return Err(Error::IncompatibleCharge { residual: net, scale });
    }
    // remove the roundoff-level residual so the field closes periodically
    let offset = net / grid.length();

    let mut e = DgField::zeros(grid, k + 1, 1);
    let mut edge = 0.0;
    for i in 0..m {
        let mut anti = vec![0.0; k + 2];
        for n in 0..=k {
            let mut g = background.coeff(i, n, 0) - moments.coeff(i, n, 0);
            if n == 0 {
                g -= offset;
            }
            // charge coefficient with respect to P_n
            let c = g * (2.0 * n as f64 + 1.0).sqrt();
            // ∫_{−1}^{ξ} P_n = (P_{n+1} − P_{n−1}) / (2n+1), and ξ + 1 for n = 0
            if n == 0 {
                anti[0] += c;
                anti[1] += c;
            } else {
                let s = c / (2.0 * n as f64 + 1.0);
                anti[n + 1] += s;
                anti[n - 1] -= s;
            }
        }
        for (l, a) in anti.iter().enumerate() {
            let mut v = 0.5 * dx * a / (2.0 * l as f64 + 1.0).sqrt();
            if l == 0 {
                v += edge;
            }
            *e.coeff_mut(i, l, 0) = v;
        }
        // value at the right edge: A(1) = 2c₀
        edge += dx * (background.coeff(i, 0, 0) - moments.coeff(i, 0, 0) - offset);
    }
    let mean = e.integral(0) / grid.length();
    for i in 0..m {
        *e.coeff_mut(i, 0, 0) -= mean;
    }
    Ok(e)
}
