//! Exact solution of the frozen-field Fokker–Planck moment equations
//!
//! `M_ℓ' = (1/ε)[ℓ(ℓ−1)M_{ℓ−2} − ℓE M_{ℓ−1} − ℓM_ℓ]`
//!
//! over a substep of length `τ`. The moments relax toward those of a unit
//! temperature Maxwellian centered at `−E`, each mode decaying as a power of
//! `Z = exp(−τ/ε)`.

use crate::moments::MomentVec;

/// Below this ratio `ε/τ` the decay factor is taken as exactly zero.
const STIFF_RATIO: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionStep {
    pub tau: f64,
    pub epsilon: f64,
    pub efield: f64,
}

impl CollisionStep {
    pub fn new(tau: f64, epsilon: f64, efield: f64) -> Self {
        CollisionStep { tau, epsilon, efield }
    }

    /// Decay factor `Z = exp(−τ/ε)`.
    pub fn decay(&self) -> f64 {
        if self.epsilon.is_infinite() || self.tau == 0.0 {
            1.0
        } else if self.epsilon / self.tau < STIFF_RATIO {
            0.0
        } else {
            (-self.tau / self.epsilon).exp()
        }
    }
}

/// Moments of `ρ·N(−E, 1)`.
pub fn equilibrium_moments(rho: f64, efield: f64) -> MomentVec {
    let e = efield;
    let e2 = e * e;
    MomentVec([rho, -rho * e, rho * (1.0 + e2), -rho * e * (e2 + 3.0), rho * (e2 * e2 + 6.0 * e2 + 3.0)])
}

/// Advances the first `n` moments (`n` = 4 or 5) over one collision substep.
pub fn collide_exact(m: &MomentVec, n: usize, step: &CollisionStep) -> MomentVec {
    let z = step.decay();
    let e = step.efield;
    let e2 = e * e;
    let (z2, z3) = (z * z, z * z * z);
    let [m0, m1, m2, m3, m4] = m.0;

    // deviations from equilibrium in the natural decaying combinations
    let d1 = e * m0 + m1;
    let d2 = (e2 - 1.0) * m0 + 2.0 * e * m1 + m2;
    let d3 = e * (e2 - 3.0) * m0 + 3.0 * (e2 - 1.0) * m1 + 3.0 * e * m2 + m3;

    let mut out = MomentVec::ZERO;
    out[0] = m0;
    out[1] = z * d1 - e * m0;
    out[2] = z2 * d2 - 2.0 * e * z * d1 + (1.0 + e2) * m0;
    out[3] = z3 * d3 - 3.0 * e * z2 * d2 + 3.0 * (e2 + 1.0) * z * d1 - e * (e2 + 3.0) * m0;
    if n == 5 {
        let d4 = (e2 * e2 - 6.0 * e2 + 3.0) * m0 + 4.0 * e * (e2 - 3.0) * m1 + 6.0 * (e2 - 1.0) * m2 + 4.0 * e * m3 + m4;
        out[4] = z2 * z2 * d4 - 4.0 * e * z3 * d3 + 6.0 * (e2 + 1.0) * z2 * d2 - 4.0 * e * (e2 + 3.0) * z * d1
            + (e2 * e2 + 6.0 * e2 + 3.0) * m0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn zero_substep_is_identity() {
        let m = MomentVec([1.2, 0.3, 2.0, -0.4, 7.0]);
        let out = collide_exact(&m, 5, &CollisionStep::new(0.0, 0.1, 0.7));
        for k in 0..5 {
            assert_relative_eq!(out[k], m[k], max_relative = 1e-14);
        }
    }

    #[test]
    fn stiff_limit_projects_to_equilibrium() {
        let m = MomentVec([1.2, 0.3, 2.0, -0.4, 7.0]);
        let out = collide_exact(&m, 5, &CollisionStep::new(1.0, 1e-16, -0.4));
        let eq = equilibrium_moments(1.2, -0.4);
        for k in 0..5 {
            assert_relative_eq!(out[k], eq[k], max_relative = 1e-14);
        }
    }

    #[test]
    fn equilibrium_examples() {
        assert_eq!(equilibrium_moments(1.0, 0.0).0, [1.0, 0.0, 1.0, 0.0, 3.0]);
        assert_eq!(equilibrium_moments(2.0, 1.0).0, [2.0, -2.0, 4.0, -8.0, 20.0]);
    }

    #[test]
    fn reference_substep() {
        // 50-digit evaluation of the matrix exponential of the moment system
        let out = collide_exact(&MomentVec([1.0, 0.0, 1.0, 0.0, 3.0]), 5, &CollisionStep::new(0.1, 0.5, 1.0));
        let want = [1.0, -0.18126924692201814, 1.0328585398796756, -0.5497639835450003, 3.198230922921078];
        for k in 0..5 {
            assert_relative_eq!(out[k], want[k], max_relative = 1e-14);
        }
    }

    #[test]
    fn four_moment_update_ignores_fourth_moment() {
        let m = MomentVec([1.0, 0.2, 1.1, 0.1, 0.0]);
        let out = collide_exact(&m, 4, &CollisionStep::new(0.3, 0.2, 0.5));
        assert_eq!(out[4], 0.0);
        let full = collide_exact(&MomentVec([1.0, 0.2, 1.1, 0.1, 9.0]), 5, &CollisionStep::new(0.3, 0.2, 0.5));
        for k in 0..4 {
            assert_eq!(out[k], full[k]);
        }
    }

    #[test]
    fn infinite_epsilon_disables_collisions() {
        assert_eq!(CollisionStep::new(0.5, f64::INFINITY, 1.0).decay(), 1.0);
    }

    proptest! {
        #[test]
        fn semigroup(
            m0 in 0.1f64..3.0, m1 in -2.0f64..2.0, m2 in 0.5f64..4.0, m3 in -3.0f64..3.0, m4 in 1.0f64..20.0,
            e in -2.0f64..2.0, t1 in 0.0f64..0.5, t2 in 0.0f64..0.5, eps in 0.01f64..2.0,
        ) {
            let m = MomentVec([m0, m1, m2, m3, m4]);
            let a = collide_exact(&collide_exact(&m, 5, &CollisionStep::new(t1, eps, e)), 5, &CollisionStep::new(t2, eps, e));
            let b = collide_exact(&m, 5, &CollisionStep::new(t1 + t2, eps, e));
            let scale = m.0.iter().fold(0.0f64, |s, x| s.max(x.abs())) * (1.0 + e * e).powi(2);
            for k in 0..5 {
                prop_assert!((a[k] - b[k]).abs() <= 1e-11 * scale);
            }
        }

        #[test]
        fn equilibrium_is_fixed(rho in 0.01f64..5.0, e in -3.0f64..3.0, tau in 0.0f64..2.0, eps in 1e-6f64..2.0) {
            let eq = equilibrium_moments(rho, e);
            let out = collide_exact(&eq, 5, &CollisionStep::new(tau, eps, e));
            for k in 0..5 {
                prop_assert!((out[k] - eq[k]).abs() <= 1e-12 * eq[k].abs().max(rho));
            }
        }

        #[test]
        fn momentum_deviation_decays_by_z(m0 in 0.1f64..3.0, m1 in -2.0f64..2.0, e in -2.0f64..2.0, tau in 0.0f64..1.0, eps in 0.01f64..1.0) {
            let m = MomentVec([m0, m1, 1.0, 0.0, 3.0]);
            let s = CollisionStep::new(tau, eps, e);
            let out = collide_exact(&m, 5, &s);
            let before = m1 + e * m0;
            let after = out[1] + e * m0;
            prop_assert!((after - s.decay() * before).abs() <= 1e-14 * (1.0 + before.abs()));
            prop_assert_eq!(out[0], m0);
        }
    }
}
