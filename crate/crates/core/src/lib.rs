//! Quadrature-based moment closures for 1D plasma fluid models.
//!
//! The crate solves the moment equations of the Vlasov-Poisson-Fokker-Planck
//! system in the high-field scaling with two-node closures (bi-delta,
//! bi-Gaussian, bi-B-spline), a discontinuous Galerkin discretization with
//! kinetic flux-vector splitting, an exact collision update, and a periodic
//! field solve, combined by Strang splitting.

pub mod closure;
pub mod collision;
pub mod driver;
pub mod dg;
pub mod hyperbolic;
pub mod error;
pub mod field;
pub mod moments;

pub use error::{Bound, Error, Result};
pub use moments::{ClosureKind, Efield, MomentVec, PrimState};
