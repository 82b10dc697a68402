//! Raw velocity moments, primitive variables and the lossless map between them.
//!
//! A state carries either four moments (bi-delta) or five (bi-Gaussian and
//! bi-B-spline). Storage is always a fixed `[f64; 5]`; entries past the
//! closure's moment count are kept at zero.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest number of moments carried by any closure.
pub const MAX_MOMENTS: usize = 5;

/// Absolute pressure floor used to detect loss of realizability.
pub const DEFAULT_P_MIN: f64 = 1e-12;

/// Which two-node ansatz closes the moment hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureKind {
    BiDelta,
    BiGaussian,
    BiBSpline,
}

impl ClosureKind {
    pub const ALL: [ClosureKind; 3] = [
        ClosureKind::BiDelta,
        ClosureKind::BiGaussian,
        ClosureKind::BiBSpline,
    ];

    /// Number of evolved moments: 4 for bi-delta, 5 otherwise.
    pub fn moment_count(self) -> usize {
        match self {
            ClosureKind::BiDelta => 4,
            ClosureKind::BiGaussian | ClosureKind::BiBSpline => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClosureKind::BiDelta => "bidelta",
            ClosureKind::BiGaussian => "bigauss",
            ClosureKind::BiBSpline => "bspline",
        }
    }
}

impl fmt::Display for ClosureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bidelta" | "bi-delta" | "delta" => Ok(ClosureKind::BiDelta),
            "bigauss" | "bigaussian" | "bi-gaussian" | "gauss" => Ok(ClosureKind::BiGaussian),
            "bspline" | "bibspline" | "bi-bspline" => Ok(ClosureKind::BiBSpline),
            other => Err(Error::InvalidConfig(format!(
                "unknown closure '{other}' (expected bidelta, bigauss or bspline)"
            ))),
        }
    }
}

/// Raw moments `M_k = ∫ v^k f dv`, `k = 0..N`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MomentVec(pub [f64; MAX_MOMENTS]);

impl MomentVec {
    pub const ZERO: MomentVec = MomentVec([0.0; MAX_MOMENTS]);

    /// Builds a vector from a slice of at most five entries.
    pub fn from_slice(m: &[f64]) -> Self {
        let mut out = [0.0; MAX_MOMENTS];
        out[..m.len()].copy_from_slice(m);
        MomentVec(out)
    }

    pub fn density(&self) -> f64 {
        self.0[0]
    }

    pub fn as_slice(&self, n: usize) -> &[f64] {
        &self.0[..n]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|m| m.is_finite())
    }

    /// Zeroes the entries past `n`.
    pub fn truncated(mut self, n: usize) -> Self {
        for m in &mut self.0[n..] {
            *m = 0.0;
        }
        self
    }
}

impl Index<usize> for MomentVec {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for MomentVec {
    fn index_mut(&mut self, k: usize) -> &mut f64 {
        &mut self.0[k]
    }
}

impl Add for MomentVec {
    type Output = MomentVec;
    fn add(mut self, rhs: MomentVec) -> MomentVec {
        self += rhs;
        self
    }
}

impl AddAssign for MomentVec {
    fn add_assign(&mut self, rhs: MomentVec) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for MomentVec {
    type Output = MomentVec;
    fn sub(mut self, rhs: MomentVec) -> MomentVec {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        self
    }
}

impl Mul<MomentVec> for f64 {
    type Output = MomentVec;
    fn mul(self, mut m: MomentVec) -> MomentVec {
        for a in &mut m.0 {
            *a *= self;
        }
        m
    }
}

/// Primitive variables `(ρ, u, p, q, r)`.
///
/// `r` is only meaningful for five-moment closures; bi-delta states keep it
/// at zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl PrimState {
    pub fn new(rho: f64, u: f64, p: f64, q: f64, r: f64) -> Self {
        PrimState { rho, u, p, q, r }
    }

    /// Four-moment state; `r` is set to zero.
    pub fn four(rho: f64, u: f64, p: f64, q: f64) -> Self {
        PrimState { rho, u, p, q, r: 0.0 }
    }

    /// Thermal speed `sqrt(p/ρ)`.
    pub fn thermal_speed(&self) -> f64 {
        (self.p / self.rho).sqrt()
    }
}

/// Electric field value at a point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Efield(pub f64);

/// Maps primitive variables to raw moments.
pub fn prim_to_cons(prim: &PrimState, kind: ClosureKind) -> MomentVec {
    let PrimState { rho, u, p, q, r } = *prim;
    let u2 = u * u;
    let mut m = [
        rho,
        rho * u,
        rho * u2 + p,
        rho * u2 * u + 3.0 * p * u + q,
        0.0,
    ];
    if kind.moment_count() == 5 {
        m[4] = rho * u2 * u2 + 6.0 * p * u2 + 4.0 * q * u + r;
    }
    MomentVec(m)
}

/// Recovers primitive variables without checking the sign of `p`.
///
/// Fails only when `M0 <= 0` or an entry is not finite. Node-level repair
/// code uses this and applies its own pressure floor.
pub fn cons_to_prim_unchecked(m: &MomentVec, kind: ClosureKind) -> Result<PrimState> {
    let rho = m[0];
    if !(rho > 0.0) || !m.is_finite() {
        return Err(Error::NonPositiveDensity(rho));
    }
    let u = m[1] / rho;
    let u2 = u * u;
    let p = m[2] - rho * u2;
    let q = m[3] - rho * u2 * u - 3.0 * p * u;
    let r = if kind.moment_count() == 5 {
        m[4] - rho * u2 * u2 - 6.0 * p * u2 - 4.0 * q * u
    } else {
        0.0
    };
    Ok(PrimState { rho, u, p, q, r })
}

/// Exact inverse of [`prim_to_cons`], with the default pressure floor.
pub fn cons_to_prim(m: &MomentVec, kind: ClosureKind) -> Result<PrimState> {
    cons_to_prim_with_floor(m, kind, DEFAULT_P_MIN)
}

/// Like [`cons_to_prim`] but with an explicit pressure floor `p_min`.
pub fn cons_to_prim_with_floor(m: &MomentVec, kind: ClosureKind, p_min: f64) -> Result<PrimState> {
    let prim = cons_to_prim_unchecked(m, kind)?;
    if prim.p <= p_min {
        return Err(Error::NonPositivePressure(prim.p));
    }
    Ok(prim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn maxwellian_collapses() {
        let prim = PrimState::new(1.0, 0.0, 1.0, 0.0, 3.0);
        let m = prim_to_cons(&prim, ClosureKind::BiGaussian);
        assert_eq!(m.0, [1.0, 0.0, 1.0, 0.0, 3.0]);
        assert_eq!(cons_to_prim(&m, ClosureKind::BiGaussian).unwrap(), prim);
    }

    #[test]
    fn shock_tube_left_state() {
        let prim = PrimState::new(1.5, -0.5, 1.5, 1.0, 4.5);
        let m = prim_to_cons(&prim, ClosureKind::BiGaussian);
        let expected = [1.5, -0.75, 1.875, -1.4375, 4.84375];
        for k in 0..5 {
            assert_relative_eq!(m[k], expected[k], max_relative = 1e-15);
        }
        let back = cons_to_prim(&MomentVec(expected), ClosureKind::BiGaussian).unwrap();
        assert_relative_eq!(back.rho, 1.5, max_relative = 1e-14);
        assert_relative_eq!(back.u, -0.5, max_relative = 1e-14);
        assert_relative_eq!(back.p, 1.5, max_relative = 1e-14);
        assert_relative_eq!(back.q, 1.0, max_relative = 1e-14);
        assert_relative_eq!(back.r, 4.5, max_relative = 1e-14);
    }

    #[test]
    fn four_moment_state_matches_two_point_quadrature() {
        // nodes (-1, 2) with weights (0.4, 0.6)
        let m = prim_to_cons(&PrimState::four(1.0, 0.8, 2.16, -1.296), ClosureKind::BiDelta);
        let oracle: Vec<f64> = (0..4)
            .map(|k| 0.4 * (-1.0f64).powi(k) + 0.6 * 2.0f64.powi(k))
            .collect();
        for k in 0..4 {
            assert_relative_eq!(m[k], oracle[k], max_relative = 1e-14);
        }
        assert_eq!(m[4], 0.0);
    }

    #[test]
    fn zero_velocity_pressure() {
        let prim = cons_to_prim(&MomentVec::from_slice(&[1.0, 0.0, 0.5, 0.0, 0.75]), ClosureKind::BiGaussian).unwrap();
        assert_eq!(prim.u, 0.0);
        assert_eq!(prim.p, 0.5);
    }

    #[test]
    fn error_paths() {
        let m = MomentVec::from_slice(&[0.0, 0.0, 1.0, 0.0, 3.0]);
        assert!(matches!(cons_to_prim(&m, ClosureKind::BiGaussian), Err(Error::NonPositiveDensity(_))));
        let m = MomentVec::from_slice(&[1.0, 1.0, 1.0, 0.0]);
        assert!(matches!(cons_to_prim(&m, ClosureKind::BiDelta), Err(Error::NonPositivePressure(_))));
    }

    #[test]
    fn closure_names_round_trip() {
        for kind in ClosureKind::ALL {
            assert_eq!(kind.name().parse::<ClosureKind>().unwrap(), kind);
        }
        assert!("trigauss".parse::<ClosureKind>().is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(
            rho in 0.05f64..20.0,
            u in -3.0f64..3.0,
            p in 0.05f64..20.0,
            q in -5.0f64..5.0,
            r_excess in 0.0f64..10.0,
        ) {
            let r = p * p / rho + q * q / p + r_excess;
            let prim = PrimState::new(rho, u, p, q, r);
            let back = cons_to_prim(&prim_to_cons(&prim, ClosureKind::BiGaussian), ClosureKind::BiGaussian).unwrap();
            // cancellation in the recovery is bounded by the magnitude of the summed terms
            let (au, aq) = (u.abs(), q.abs());
            let s_p = rho * au * au + p;
            let s_q = rho * au.powi(3) + 3.0 * p * au + aq;
            let s_r = rho * au.powi(4) + 6.0 * p * au * au + 4.0 * aq * au + r;
            prop_assert!((back.rho - rho).abs() <= 1e-13 * rho);
            prop_assert!((back.u - u).abs() <= 1e-13 * (au + (p / rho).sqrt()));
            prop_assert!((back.p - p).abs() <= 1e-13 * s_p);
            prop_assert!((back.q - q).abs() <= 1e-13 * s_q);
            prop_assert!((back.r - r).abs() <= 1e-13 * s_r);
        }

        #[test]
        fn linear_in_density(
            rho in 0.1f64..5.0, u in -2.0f64..2.0, t in 0.1f64..3.0,
            qs in -1.0f64..1.0, rs in 3.0f64..6.0, scale in 0.1f64..10.0,
        ) {
            let a = PrimState::new(rho, u, rho * t, rho * qs, rho * rs);
            let b = PrimState::new(scale * rho, u, scale * rho * t, scale * rho * qs, scale * rho * rs);
            let ma = prim_to_cons(&a, ClosureKind::BiGaussian);
            let mb = prim_to_cons(&b, ClosureKind::BiGaussian);
            for k in 0..5 {
                prop_assert!((mb[k] - scale * ma[k]).abs() <= 1e-12 * (1.0 + mb[k].abs()));
            }
        }
    }
}
