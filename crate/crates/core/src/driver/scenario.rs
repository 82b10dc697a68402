use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::closure::Limits;
use crate::collision::equilibrium_moments;
use crate::dg::{project, project_prim, project_with, Basis, DgField, Grid, DEFAULT_CFL};
use crate::error::{Error, Result};
use crate::field::solve_efield;
use crate::moments::{prim_to_cons, ClosureKind, PrimState};

/// `∫₀¹ exp(cos 2πx) dx = I₀(1)`.
pub const BESSEL_I0_OF_ONE: f64 = 1.2660658777520083;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    ShocktubeFig1,
    ShocktubeFig2,
    ShocktubeFig3,
    ApEquilibrium,
    ApNonequilibrium,
    DoubleRiemann,
    Custom,
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::ShocktubeFig1,
        Scenario::ShocktubeFig2,
        Scenario::ShocktubeFig3,
        Scenario::ApEquilibrium,
        Scenario::ApNonequilibrium,
        Scenario::DoubleRiemann,
        Scenario::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::ShocktubeFig1 => "shocktube_fig1",
            Scenario::ShocktubeFig2 => "shocktube_fig2",
            Scenario::ShocktubeFig3 => "shocktube_fig3",
            Scenario::ApEquilibrium => "ap_equilibrium",
            Scenario::ApNonequilibrium => "ap_nonequilibrium",
            Scenario::DoubleRiemann => "double_riemann",
            Scenario::Custom => "custom",
        }
    }

    /// Closure a scenario is defined with, if it is not free to choose.
    pub fn fixed_closure(self) -> Option<ClosureKind> {
        match self {
            Scenario::ShocktubeFig1 | Scenario::ShocktubeFig2 => Some(ClosureKind::BiGaussian),
            Scenario::ShocktubeFig3 => Some(ClosureKind::BiBSpline),
            _ => None,
        }
    }

    pub fn default_closure(self) -> ClosureKind {
        match self {
            Scenario::DoubleRiemann => ClosureKind::BiBSpline,
            s => s.fixed_closure().unwrap_or(ClosureKind::BiGaussian),
        }
    }

    pub fn default_epsilon(self) -> f64 {
        match self {
            Scenario::ApEquilibrium | Scenario::ApNonequilibrium => 1e-3,
            Scenario::DoubleRiemann => 1e-6,
            _ => f64::INFINITY,
        }
    }

    pub fn default_elements(self) -> usize {
        match self {
            Scenario::ShocktubeFig1 | Scenario::ShocktubeFig2 | Scenario::ShocktubeFig3 => 200,
            Scenario::ApEquilibrium | Scenario::ApNonequilibrium => 64,
            Scenario::DoubleRiemann | Scenario::Custom => 100,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

/// Left and right states of `shocktube_fig1` and `shocktube_fig3`.
pub const SHOCKTUBE_LEFT: PrimState = PrimState {
    rho: 1.5,
    u: -0.5,
    p: 1.5,
    q: 1.0,
    r: 4.5,
};
pub const SHOCKTUBE_RIGHT: PrimState = PrimState {
    rho: 1.0,
    u: -0.5,
    p: 1.0,
    q: 0.5,
    r: 3.0,
};
/// Colliding-stream states of `shocktube_fig2`.
pub const COLLISION_LEFT: PrimState = PrimState {
    rho: 1.0,
    u: 1.0,
    p: 1.0 / 3.0,
    q: 0.0,
    r: 0.3,
};
pub const COLLISION_RIGHT: PrimState = PrimState {
    rho: 1.0,
    u: -1.0,
    p: 1.0 / 3.0,
    q: 0.0,
    r: 0.3,
};

/// Everything needed to set up and run one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub closure: ClosureKind,
    pub elements: usize,
    pub degree: usize,
    pub cfl: f64,
    /// Scaled collision time; `f64::INFINITY` runs the collisionless system.
    pub epsilon: f64,
    pub t_final: f64,
    /// Extra output times in `(0, t_final)`; `0` and `t_final` are always written.
    pub snapshots: Vec<f64>,
    pub limiter: bool,
    pub limits: Limits,
    /// Record diagnostics every `diag_stride` steps (plus the first and last).
    pub diag_stride: usize,
    /// Left and right states for [`Scenario::Custom`].
    pub custom_states: Option<(PrimState, PrimState)>,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        ScenarioConfig {
            scenario,
            closure: scenario.default_closure(),
            elements: scenario.default_elements(),
            degree: 2,
            cfl: DEFAULT_CFL,
            epsilon: scenario.default_epsilon(),
            t_final: 0.1,
            snapshots: Vec::new(),
            limiter: true,
            limits: Limits::default(),
            diag_stride: 1,
            custom_states: None,
        }
    }

    pub fn collisionless(&self) -> bool {
        self.epsilon.is_infinite()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if let Some(fixed) = self.scenario.fixed_closure() {
            if fixed != self.closure {
                return bad(format!("scenario {} is defined with the {} closure, not {}", self.scenario, fixed, self.closure));
            }
        }
        if self.elements < 2 {
            return bad(format!("elements must be at least 2 (got {})", self.elements));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return bad(format!("cfl must be positive (got {})", self.cfl));
        }
        if !(self.epsilon > 0.0) {
            return bad(format!("epsilon must be positive or inf (got {})", self.epsilon));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return bad(format!("t_final must be a nonnegative number (got {})", self.t_final));
        }
        if let Some(t) = self.snapshots.iter().find(|t| !(**t >= 0.0 && **t <= self.t_final)) {
            return bad(format!("snapshot time {t} is outside [0, {}]", self.t_final));
        }
        if self.diag_stride == 0 {
            return bad("diag_stride must be at least 1".into());
        }
        if self.scenario == Scenario::Custom && self.custom_states.is_none() {
            return bad("the custom scenario needs left and right states".into());
        }
        Ok(())
    }

    /// Sorted distinct output times, always starting at 0 and ending at `t_final`.
    pub fn snapshot_times(&self) -> Vec<f64> {
        let mut t: Vec<f64> = std::iter::once(0.0)
            .chain(self.snapshots.iter().copied())
            .chain(std::iter::once(self.t_final))
            .collect();
        t.sort_by(f64::total_cmp);
        t.dedup();
        t
    }
}

/// Initial moments together with the neutralizing background charge.
#[derive(Debug, Clone)]
pub struct InitialData {
    pub moments: DgField,
    pub background: DgField,
}

fn riemann(grid: Grid, cfg: &ScenarioConfig, left: PrimState, right: PrimState) -> InitialData {
    let moments = project_prim(grid, cfg.degree, cfg.closure, |x| if x < 0.5 { left } else { right });
    let total = moments.integral(0) / grid.length();
    let background = project(grid, cfg.degree, 1, |_, out| out[0] = total);
    InitialData { moments, background }
}

/// Moments built pointwise from the density and the field it generates.
fn from_field(
    grid: Grid,
    cfg: &ScenarioConfig,
    rho: impl Fn(f64) -> f64,
    rho0: impl Fn(f64) -> f64,
    moments_at: impl Fn(f64, f64) -> [f64; 5],
) -> Result<InitialData> {
    let basis = Basis::new(cfg.degree);
    let density = project(grid, cfg.degree, 1, |x, out| out[0] = rho(x));
    let background = project(grid, cfg.degree, 1, |x, out| out[0] = rho0(x));
    let efield = solve_efield(&density, &background)?;
    let n = cfg.closure.moment_count();
    let e_at_nodes: Vec<Vec<f64>> = basis.nodes.iter().map(|&xi| crate::dg::basis::basis_values(cfg.degree + 1, xi)).collect();
    let mut e_val = [0.0];
    let moments = project_with(&basis, grid, n, |i, q, x, out| {
        efield.eval_with(i, &e_at_nodes[q], &mut e_val);
        let m = moments_at(rho(x), e_val[0]);
        out.copy_from_slice(&m[..n]);
    });
    Ok(InitialData { moments, background })
}

pub fn build_scenario(cfg: &ScenarioConfig) -> Result<InitialData> {
    cfg.validate()?;
    let grid = Grid::unit(cfg.elements)?;
    let sqrt_2pi = (2.0 * PI).sqrt();
    let ap_rho = move |x: f64| sqrt_2pi / 2.0 * (2.0 + (2.0 * PI * x).cos());
    let ap_rho0 = move |x: f64| sqrt_2pi / BESSEL_I0_OF_ONE * (2.0 * PI * x).cos().exp();
    match cfg.scenario {
        Scenario::ShocktubeFig1 | Scenario::ShocktubeFig3 => Ok(riemann(grid, cfg, SHOCKTUBE_LEFT, SHOCKTUBE_RIGHT)),
        Scenario::ShocktubeFig2 => Ok(riemann(grid, cfg, COLLISION_LEFT, COLLISION_RIGHT)),
        Scenario::Custom => {
            let (l, r) = cfg.custom_states.ok_or_else(|| Error::InvalidConfig("missing custom states".into()))?;
            for s in [l, r] {
                crate::closure::invert(&s, cfg.closure, &cfg.limits)?;
            }
            Ok(riemann(grid, cfg, l, r))
        }
        Scenario::ApEquilibrium => from_field(grid, cfg, ap_rho, ap_rho0, |rho, e| equilibrium_moments(rho, e).0),
        Scenario::ApNonequilibrium => from_field(grid, cfg, ap_rho, ap_rho0, |rho, _| {
            // ½N(−1.5, 1) + ½N(1.5, 1)
            [rho, 0.0, 3.25 * rho, 0.0, 21.5625 * rho]
        }),
        Scenario::DoubleRiemann => {
            let inner = |x: f64| (0.25..0.75).contains(&x);
            from_field(
                grid,
                cfg,
                move |x| if inner(x) { 0.5 } else { 0.125 },
                move |x| if inner(x) { 0.125 } else { 0.5 },
                |rho, e| equilibrium_moments(rho, e).0,
            )
        }
    }
}

/// Moments of a primitive state, as a convenience for custom setups.
pub fn moments_of(prim: &PrimState, kind: ClosureKind) -> [f64; 5] {
    prim_to_cons(prim, kind).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
        assert_eq!("fig9".parse::<Scenario>(), Err(Error::UnknownScenario("fig9".into())));
    }

    #[test]
    fn fixed_closure_conflicts_are_rejected() {
        let mut cfg = ScenarioConfig::new(Scenario::ShocktubeFig3);
        assert_eq!(cfg.closure, ClosureKind::BiBSpline);
        cfg.closure = ClosureKind::BiGaussian;
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn ap_equilibrium_is_charge_neutral() {
        let init = build_scenario(&ScenarioConfig::new(Scenario::ApEquilibrium)).unwrap();
        let sqrt_2pi = (2.0 * PI).sqrt();
        assert!((init.moments.integral(0) - sqrt_2pi).abs() < 1e-12);
        assert!((init.background.integral(0) - sqrt_2pi).abs() < 1e-12);
    }

    #[test]
    fn double_riemann_masses() {
        let init = build_scenario(&ScenarioConfig::new(Scenario::DoubleRiemann)).unwrap();
        assert!((init.moments.integral(0) - 5.0 / 16.0).abs() < 1e-14);
        assert!((init.background.integral(0) - 5.0 / 16.0).abs() < 1e-14);
    }

    #[test]
    fn shocktube_states_are_exact_away_from_the_interface() {
        let cfg = ScenarioConfig::new(Scenario::ShocktubeFig1);
        let init = build_scenario(&cfg).unwrap();
        let left = prim_to_cons(&SHOCKTUBE_LEFT, ClosureKind::BiGaussian);
        let right = prim_to_cons(&SHOCKTUBE_RIGHT, ClosureKind::BiGaussian);
        for (x, want) in [(0.1, left), (0.49, left), (0.51, right), (0.9, right)] {
            let got = init.moments.eval_at(x);
            for c in 0..5 {
                assert!((got[c] - want[c]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn nonequilibrium_moments_are_a_bimodal_gaussian() {
        // raw moments of ½N(−a,1) + ½N(a,1) with a = 1.5
        let a: f64 = 1.5;
        assert_eq!(1.0 + a * a, 3.25);
        assert_eq!(a.powi(4) + 6.0 * a * a + 3.0, 21.5625);
    }
}
