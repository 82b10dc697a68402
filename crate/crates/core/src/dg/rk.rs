use super::limiter::moment_limit;
use super::space::DgField;
use crate::error::Result;

/// One step of the three-stage strong-stability-preserving Runge–Kutta
/// scheme in Shu–Osher form, with the moment limiter applied after every
/// stage when `limit` is set.
pub fn ssp_rk3_step(
    u: &DgField,
    dt: f64,
    rhs: impl FnMut(&DgField) -> Result<DgField>,
    limit: bool,
) -> Result<DgField> {
    ssp_rk3_step_with(u, dt, rhs, |v| {
        if limit {
            moment_limit(v);
        }
    })
}

/// SSP-RK3 with an arbitrary post-processing hook run after each stage.
pub fn ssp_rk3_step_with(
    u: &DgField,
    dt: f64,
    mut rhs: impl FnMut(&DgField) -> Result<DgField>,
    mut post: impl FnMut(&mut DgField),
) -> Result<DgField> {
    let mut u1 = u.clone();
    u1.axpy(dt, &rhs(u)?);
    post(&mut u1);

    let mut u2 = u1.clone();
    u2.axpy(dt, &rhs(&u1)?);
    let mut u2 = u.lincomb(0.75, &u2, 0.25);
    post(&mut u2);

    let mut u3 = u2.clone();
    u3.axpy(dt, &rhs(&u2)?);
    let mut u3 = u.lincomb(1.0 / 3.0, &u3, 2.0 / 3.0);
    post(&mut u3);
    Ok(u3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::space::{project, Grid};

    #[test]
    fn zero_rate_is_identity() {
        let u = project(Grid::unit(8).unwrap(), 2, 1, |x, out| out[0] = x.sin());
        let v = ssp_rk3_step(&u, 0.1, |w| Ok(DgField::zeros(w.grid, w.degree, w.ncomp)), false).unwrap();
        for (a, b) in u.data.iter().zip(&v.data) {
            assert!((a - b).abs() <= 1e-15 * a.abs().max(1e-3));
        }
    }

    #[test]
    fn linear_ode_matches_stability_polynomial() {
        let lambda = -1.7;
        let dt = 0.3;
        let u = project(Grid::unit(3).unwrap(), 0, 1, |_, out| out[0] = 2.0);
        let v = ssp_rk3_step(
            &u,
            dt,
            |w| {
                let mut r = w.clone();
                r.data.iter_mut().for_each(|x| *x *= lambda);
                Ok(r)
            },
            false,
        )
        .unwrap();
        let z: f64 = lambda * dt;
        let amp = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
        for i in 0..3 {
            assert!((v.average(i, 0) - 2.0 * amp).abs() < 1e-15);
        }
    }
}
