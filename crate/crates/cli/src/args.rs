//! Command-line flags and the flat `key = value` config file.
//!
//! Both sources fill the same [`Settings`]; flags win over the file, and
//! anything left unset falls back to the scenario defaults.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;
use quadmom::driver::{Scenario, ScenarioConfig};
use quadmom::{ClosureKind, PrimState};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub out: PathBuf,
}

pub const DEFAULT_OUT: &str = "out";

#[derive(Debug, Parser)]
#[command(
    name = "quadmom",
    version,
    about = "1D plasma fluid solver with quadrature-based moment closures",
    allow_negative_numbers = true
)]
struct Cli {
    /// shocktube_fig1 | shocktube_fig2 | shocktube_fig3 | ap_equilibrium | ap_nonequilibrium | double_riemann | custom
    #[arg(long)]
    scenario: Option<Scenario>,
    /// bidelta | bigauss | bspline
    #[arg(long)]
    closure: Option<ClosureKind>,
    #[arg(long)]
    elements: Option<usize>,
    /// Polynomial degree of the DG space
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    /// Collision time scale; "inf" turns collisions and the field solve off
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    tfinal: Option<f64>,
    /// Comma-separated output times (0 and tfinal are always written)
    #[arg(long, value_parser = parse_times)]
    snapshots: Option<Times>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record diagnostics every n-th step
    #[arg(long)]
    diag_stride: Option<usize>,
    /// Moment limiter on or off
    #[arg(long)]
    limiter: Option<bool>,
    /// Left state rho,u,p,q,r for the custom scenario
    #[arg(long, value_parser = parse_prim, allow_hyphen_values = true)]
    left: Option<PrimState>,
    /// Right state rho,u,p,q,r for the custom scenario
    #[arg(long, value_parser = parse_prim, allow_hyphen_values = true)]
    right: Option<PrimState>,
    /// Config file of key = value lines with the same keys as the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

// clap treats a bare `Vec<f64>` field as a repeated flag
#[derive(Debug, Clone, PartialEq)]
struct Times(Vec<f64>);

/// Every setting that can come from a flag or the config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub scenario: Option<Scenario>,
    pub closure: Option<ClosureKind>,
    pub elements: Option<usize>,
    pub degree: Option<usize>,
    pub cfl: Option<f64>,
    pub epsilon: Option<f64>,
    pub tfinal: Option<f64>,
    pub snapshots: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub diag_stride: Option<usize>,
    pub limiter: Option<bool>,
    pub left: Option<PrimState>,
    pub right: Option<PrimState>,
}

impl Settings {
    /// `self` with unset fields taken from `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        Settings {
            scenario: self.scenario.or(fallback.scenario),
            closure: self.closure.or(fallback.closure),
            elements: self.elements.or(fallback.elements),
            degree: self.degree.or(fallback.degree),
            cfl: self.cfl.or(fallback.cfl),
            epsilon: self.epsilon.or(fallback.epsilon),
            tfinal: self.tfinal.or(fallback.tfinal),
            snapshots: self.snapshots.or(fallback.snapshots),
            out: self.out.or(fallback.out),
            diag_stride: self.diag_stride.or(fallback.diag_stride),
            limiter: self.limiter.or(fallback.limiter),
            left: self.left.or(fallback.left),
            right: self.right.or(fallback.right),
        }
    }

    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let scenario = self.scenario.ok_or(CliError::MissingScenario)?;
        let mut cfg = ScenarioConfig::new(scenario);
        if let Some(requested) = self.closure {
            if let Some(fixed) = scenario.fixed_closure() {
                if fixed != requested {
                    return Err(CliError::ClosureConflict { scenario, fixed, requested });
                }
            }
            cfg.closure = requested;
        }
        if let Some(v) = self.elements {
            cfg.elements = v;
        }
        if let Some(v) = self.degree {
            cfg.degree = v;
        }
        if let Some(v) = self.cfl {
            cfg.cfl = v;
        }
        if let Some(v) = self.epsilon {
            cfg.epsilon = v;
        }
        if let Some(v) = self.tfinal {
            cfg.t_final = v;
        }
        if let Some(v) = self.snapshots {
            cfg.snapshots = v;
        }
        if let Some(v) = self.diag_stride {
            cfg.diag_stride = v;
        }
        if let Some(v) = self.limiter {
            cfg.limiter = v;
        }
        match (self.left, self.right) {
            (Some(l), Some(r)) => cfg.custom_states = Some((l, r)),
            (None, None) => {}
            _ => return Err(CliError::InvalidValue("left and right states must be given together".into())),
        }
        if cfg.custom_states.is_some() && scenario != Scenario::Custom {
            return Err(CliError::InvalidValue(format!("left/right states only apply to the custom scenario, not {scenario}")));
        }
        cfg.validate()?;
        Ok(RunConfig {
            scenario: cfg,
            out: self.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        })
    }
}

fn parse_times(s: &str) -> Result<Times, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad time '{t}': {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Times)
}

/// `rho,u,p,q,r`; a four-value state leaves `r = 0` for the bi-delta closure.
pub fn parse_prim(s: &str) -> Result<PrimState, String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number '{t}': {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    match v[..] {
        [rho, u, p, q, r] => Ok(PrimState::new(rho, u, p, q, r)),
        [rho, u, p, q] => Ok(PrimState::four(rho, u, p, q)),
        _ => Err(format!("expected 4 or 5 comma-separated values, got {}", v.len())),
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(format!("expected true/false, got '{s}'")),
    }
}

/// Parses `key = value` lines; `#` starts a comment. Keys are the flag names,
/// with `-` or `_` accepted interchangeably.
pub fn parse_config_text(text: &str, path: &Path) -> Result<Settings, CliError> {
    let mut s = Settings::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CliError::Config {
            path: path.to_path_buf(),
            line: idx + 1,
            message,
        };
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected key = value".into()))?;
        let (key, value) = (key.trim().replace('-', "_"), value.trim());
        let num = |v: &str| v.parse::<f64>().map_err(|e| err(format!("{key}: {e}")));
        let int = |v: &str| v.parse::<usize>().map_err(|e| err(format!("{key}: {e}")));
        match key.as_str() {
            "scenario" => s.scenario = Some(value.parse().map_err(|e: quadmom::Error| err(e.to_string()))?),
            "closure" => s.closure = Some(value.parse().map_err(|e: quadmom::Error| err(e.to_string()))?),
            "elements" => s.elements = Some(int(value)?),
            "degree" => s.degree = Some(int(value)?),
            "cfl" => s.cfl = Some(num(value)?),
            "epsilon" => s.epsilon = Some(num(value)?),
            "tfinal" => s.tfinal = Some(num(value)?),
            "snapshots" => s.snapshots = Some(parse_times(value).map_err(err)?.0),
            "out" => s.out = Some(PathBuf::from(value)),
            "diag_stride" => s.diag_stride = Some(int(value)?),
            "limiter" => s.limiter = Some(parse_bool(value).map_err(err)?),
            "left" => s.left = Some(parse_prim(value).map_err(err)?),
            "right" => s.right = Some(parse_prim(value).map_err(err)?),
            "config" => return Err(err("config files cannot include other config files".into())),
            other => return Err(err(format!("unknown key '{other}'"))),
        }
    }
    Ok(s)
}

pub fn read_config_file(path: &Path) -> Result<Settings, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text, path)
}

/// Parses the full argument vector (program name first).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let file = match &cli.config {
        Some(path) => read_config_file(path)?,
        None => Settings::default(),
    };
    let flags = Settings {
        scenario: cli.scenario,
        closure: cli.closure,
        elements: cli.elements,
        degree: cli.degree,
        cfl: cli.cfl,
        epsilon: cli.epsilon,
        tfinal: cli.tfinal,
        snapshots: cli.snapshots.map(|t| t.0),
        out: cli.out,
        diag_stride: cli.diag_stride,
        limiter: cli.limiter,
        left: cli.left,
        right: cli.right,
    };
    flags.or(file).into_config()
}
