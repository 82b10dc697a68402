//! Strang-split time integration of the Vlasov–Poisson–Fokker–Planck moment
//! system.
//!
//! One step of length `Δt` is: field solve, collisions over `Δt/2`, DG
//! transport over `Δt`, field solve, collisions over `Δt/2`. With
//! `ε = ∞` the collision and field substeps are skipped.

mod diagnostics;
mod scenario;

pub use diagnostics::{equilibrium_norm, sample, sample_offsets, DiagnosticsRecord, SamplePoint};
pub use scenario::{
    build_scenario, moments_of, InitialData, Scenario, ScenarioConfig, BESSEL_I0_OF_ONE, COLLISION_LEFT,
    COLLISION_RIGHT, SHOCKTUBE_LEFT, SHOCKTUBE_RIGHT,
};

use crate::collision::{collide_exact, CollisionStep};
use crate::dg::basis::basis_values;
use crate::dg::{project_with, DgField, Transport, TransportStats};
use crate::error::{Error, Result};
use crate::field::solve_efield;
use crate::moments::MomentVec;

/// Smallest accepted step relative to `t_final`; below it the run is
/// declared broken down rather than left to crawl.
pub const MIN_STEP_RATIO: f64 = 1e-12;

/// Solution written at one output time.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub index: usize,
    pub step: usize,
    pub t: f64,
    pub moments: DgField,
    pub efield: DgField,
}

/// What a completed run reports besides its snapshots.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub steps: usize,
    pub t: f64,
    pub stats: TransportStats,
    pub diagnostics: Vec<DiagnosticsRecord>,
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub config: ScenarioConfig,
    pub transport: Transport,
    pub moments: DgField,
    pub background: DgField,
    pub t: f64,
    pub step: usize,
    pub stats: TransportStats,
    /// Field-space basis values at the transport quadrature nodes.
    efield_phi: Vec<Vec<f64>>,
}

impl Simulation {
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        let init = build_scenario(&config)?;
        let transport = Transport::new(config.closure, config.degree, config.limits, config.limiter);
        let efield_phi = transport.basis().nodes.iter().map(|&xi| basis_values(config.degree + 1, xi)).collect();
        Ok(Simulation {
            config,
            transport,
            moments: init.moments,
            background: init.background,
            t: 0.0,
            step: 0,
            stats: TransportStats::default(),
            efield_phi,
        })
    }

    /// Field of the current density.
    pub fn efield(&self) -> Result<DgField> {
        solve_efield(&self.moments, &self.background)
    }

    /// Exact collision substep at the quadrature nodes followed by L² projection.
    fn collide(&self, efield: &DgField, tau: f64) -> DgField {
        let basis = self.transport.basis();
        let n = self.moments.ncomp;
        let mut m = vec![0.0; n];
        let mut e = [0.0];
        project_with(basis, self.moments.grid, n, |i, q, _, out| {
            self.moments.eval_with(i, &basis.phi[q], &mut m);
            efield.eval_with(i, &self.efield_phi[q], &mut e);
            let step = CollisionStep::new(tau, self.config.epsilon, e[0]);
            let after = collide_exact(&MomentVec::from_slice(&m), n, &step);
            out.copy_from_slice(&after.0[..n]);
        })
    }

    /// One split step of length `dt`, without advancing the clock.
    pub fn strang_step(&mut self, dt: f64) -> Result<()> {
        if self.config.collisionless() {
            self.moments = self.transport.step(&self.moments, dt, &mut self.stats)?;
            return Ok(());
        }
        let e = self.efield()?;
        self.moments = self.collide(&e, 0.5 * dt);
        self.moments = self.transport.step(&self.moments, dt, &mut self.stats)?;
        let e = self.efield()?;
        self.moments = self.collide(&e, 0.5 * dt);
        Ok(())
    }

    pub fn cfl_dt(&mut self) -> Result<f64> {
        self.transport.cfl_dt(&self.moments, self.config.cfl, &mut self.stats)
    }

    pub fn diagnostics(&self) -> Result<DiagnosticsRecord> {
        let e = self.efield()?;
        Ok(DiagnosticsRecord {
            step: self.step,
            t: self.t,
            eq_norm: equilibrium_norm(&self.moments, &e, self.transport.basis()),
            mass: self.moments.integral(0),
            repairs: self.stats.repairs,
            hyp_loss: self.stats.hyperbolicity_loss,
        })
    }

    fn snapshot(&self, index: usize) -> Result<Snapshot> {
        Ok(Snapshot {
            index,
            step: self.step,
            t: self.t,
            moments: self.moments.clone(),
            efield: self.efield()?,
        })
    }

    /// Runs to `t_final`, shortening steps to land exactly on every output
    /// time and handing each snapshot to `on_snapshot`.
    pub fn run_with<E: From<Error>>(
        &mut self,
        mut on_snapshot: impl FnMut(&Snapshot) -> std::result::Result<(), E>,
    ) -> std::result::Result<RunSummary, E> {
        let times = self.config.snapshot_times();
        let t_final = self.config.t_final;
        let stride = self.config.diag_stride;
        let mut diagnostics = vec![self.diagnostics()?];
        on_snapshot(&self.snapshot(0)?)?;
        let mut next = 1;

        while next < times.len() {
            let target = times[next];
            let (step, t) = (self.step, self.t);
            let at = move |e: Error| e.at_step(step + 1, t);
            let mut dt = self.cfl_dt().map_err(at)?;
            if dt < MIN_STEP_RATIO * t_final {
                let speed = self.config.cfl * self.moments.grid.dx() / ((2 * self.config.degree + 1) as f64 * dt);
                return Err(at(Error::StepCollapse { dt, speed }).into());
            }
            let lands = self.t + dt * (1.0 + 1e-9) >= target;
            if lands {
                dt = target - self.t;
            }
            self.strang_step(dt).map_err(at)?;
            self.step += 1;
            self.t = if lands { target } else { self.t + dt };

            let done = lands && next + 1 == times.len();
            if self.step % stride == 0 || done {
                diagnostics.push(self.diagnostics().map_err(at)?);
            }
            if lands {
                on_snapshot(&self.snapshot(next).map_err(at)?)?;
                next += 1;
            }
        }
        debug_assert!(self.t == t_final);
        Ok(RunSummary {
            steps: self.step,
            t: self.t,
            stats: self.stats,
            diagnostics,
        })
    }
}

/// Runs a configuration to completion, collecting every snapshot.
pub fn run(config: ScenarioConfig) -> Result<(RunSummary, Vec<Snapshot>)> {
    let mut sim = Simulation::new(config)?;
    let mut snaps = Vec::new();
    let summary = sim.run_with(|s: &Snapshot| -> Result<()> {
        snaps.push(s.clone());
        Ok(())
    })?;
    Ok((summary, snaps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collision::equilibrium_moments;
    use crate::moments::ClosureKind;

    fn small(scenario: Scenario) -> ScenarioConfig {
        let mut cfg = ScenarioConfig::new(scenario);
        cfg.elements = 16;
        cfg.t_final = 0.02;
        cfg
    }

    #[test]
    fn zero_final_time_gives_only_the_initial_snapshot() {
        let mut cfg = small(Scenario::ShocktubeFig1);
        cfg.t_final = 0.0;
        let (summary, snaps) = run(cfg).unwrap();
        assert_eq!(snaps.len(), 1);
        assert_eq!(summary.steps, 0);
        assert_eq!(summary.diagnostics.len(), 1);
    }

    #[test]
    fn snapshots_land_exactly() {
        let mut cfg = small(Scenario::ShocktubeFig1);
        cfg.snapshots = vec![0.0037, 0.01];
        let (summary, snaps) = run(cfg).unwrap();
        let t: Vec<f64> = snaps.iter().map(|s| s.t).collect();
        assert_eq!(t, vec![0.0, 0.0037, 0.01, 0.02]);
        assert_eq!(summary.t, 0.02);
        assert_eq!(summary.diagnostics.last().unwrap().t, 0.02);
        assert_eq!(summary.diagnostics.len(), summary.steps + 1);
    }

    #[test]
    fn diagnostics_stride_keeps_first_and_last() {
        let mut cfg = small(Scenario::ShocktubeFig1);
        cfg.diag_stride = 1000;
        let (summary, _) = run(cfg).unwrap();
        assert!(summary.steps > 1);
        assert_eq!(summary.diagnostics.len(), 2);
        assert_eq!(summary.diagnostics[0].step, 0);
        assert_eq!(summary.diagnostics[1].step, summary.steps);
    }

    #[test]
    fn runs_are_deterministic() {
        let a = run(small(Scenario::ApNonequilibrium)).unwrap().1;
        let b = run(small(Scenario::ApNonequilibrium)).unwrap().1;
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.moments.data, y.moments.data);
        }
    }

    #[test]
    fn split_step_conserves_mass() {
        for scenario in [Scenario::ApEquilibrium, Scenario::ApNonequilibrium, Scenario::DoubleRiemann] {
            let (summary, _) = run(small(scenario)).unwrap();
            let m0 = summary.diagnostics[0].mass;
            for d in &summary.diagnostics {
                assert!((d.mass - m0).abs() <= 1e-13 * m0, "{scenario}: {:e}", d.mass - m0);
            }
        }
    }

    #[test]
    fn collision_substep_relaxes_toward_equilibrium() {
        let mut cfg = small(Scenario::ApNonequilibrium);
        cfg.epsilon = 1e-12;
        let mut sim = Simulation::new(cfg).unwrap();
        let before = sim.diagnostics().unwrap().eq_norm;
        let e = sim.efield().unwrap();
        sim.moments = sim.collide(&e, 1e-3);
        let after = sim.diagnostics().unwrap().eq_norm;
        // nodes are exactly at equilibrium; what remains is the projection error of ρE
        assert!(before > 0.1 && after < 1e-3 * before, "{before} -> {after}");
        // higher moments match the Maxwellian at every node, up to projection error
        let x = 0.3;
        let m = sim.moments.eval_at(x);
        let eq = equilibrium_moments(m[0], e.eval_at(x)[0]);
        assert!((m[2] - eq[2]).abs() < 1e-3 * eq[2]);
    }

    #[test]
    fn bidelta_runs_collisional_scenarios() {
        let mut cfg = small(Scenario::ApEquilibrium);
        cfg.closure = ClosureKind::BiDelta;
        let (_, snaps) = run(cfg).unwrap();
        assert_eq!(snaps[0].moments.ncomp, 4);
    }

    #[test]
    fn diverging_streams_break_down_with_an_error() {
        // the periodic seam of the colliding-stream tube opens a near-vacuum
        let mut cfg = small(Scenario::ShocktubeFig2);
        cfg.elements = 50;
        let err = run(cfg).unwrap_err();
        let Error::AtStep { source, .. } = err else { panic!("{err:?}") };
        assert!(matches!(*source, Error::StepCollapse { .. } | Error::AtElement { .. }), "{source:?}");
    }

    #[test]
    fn step_errors_carry_step_and_time() {
        let mut sim = Simulation::new(small(Scenario::ShocktubeFig1)).unwrap();
        // move mass between two elements so that one average turns negative
        *sim.moments.coeff_mut(3, 0, 0) -= 2.0;
        *sim.moments.coeff_mut(4, 0, 0) += 2.0;
        let err = sim.run_with(|_: &Snapshot| -> Result<()> { Ok(()) }).unwrap_err();
        assert!(matches!(err, Error::AtStep { step: 1, .. }), "{err:?}");
    }
}
