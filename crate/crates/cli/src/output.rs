//! Snapshot and diagnostics CSV files and the run manifest.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use quadmom::closure::Limits;
use quadmom::driver::{sample, DiagnosticsRecord, RunSummary, Snapshot};
use quadmom::ClosureKind;
use serde::Serialize;

use crate::{CliError, RunConfig};

pub const SNAPSHOT_HEADER: &str = "x,rho,u,p,q,r,alpha,mu1,mu2,w1,w2,E";
pub const DIAGNOSTICS_HEADER: &str = "t,eq_norm,mass,repairs,hyp_loss";
pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
/// Element edges and center.
pub const POINTS_PER_ELEMENT: usize = 3;

pub fn snapshot_name(index: usize) -> String {
    format!("snap_t{index}.csv")
}

/// Seventeen significant digits; NaN (an absent value) is left empty.
fn num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.16e}")
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(CliError::io(path))
}

pub fn write_snapshot(path: &Path, snap: &Snapshot, kind: ClosureKind, limits: &Limits) -> Result<(), CliError> {
    let rows = sample(&snap.moments, &snap.efield, kind, limits, POINTS_PER_ELEMENT)?;
    let mut w = create(path)?;
    let io = CliError::io(path);
    (|| -> std::io::Result<()> {
        writeln!(w, "{SNAPSHOT_HEADER}")?;
        for s in &rows {
            let p = &s.prim;
            let cols = [s.x, p.rho, p.u, p.p, p.q, p.r, s.alpha, s.mu[0], s.mu[1], s.w[0], s.w[1], s.efield];
            let line: Vec<String> = cols.iter().map(|&x| num(x)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        w.flush()
    })()
    .map_err(io)
}

pub fn write_diagnostics(path: &Path, series: &[DiagnosticsRecord]) -> Result<(), CliError> {
    let mut w = create(path)?;
    let io = CliError::io(path);
    (|| -> std::io::Result<()> {
        writeln!(w, "{DIAGNOSTICS_HEADER}")?;
        for d in series {
            writeln!(w, "{},{},{},{},{}", num(d.t), num(d.eq_norm), num(d.mass), d.repairs, d.hyp_loss)?;
        }
        w.flush()
    })()
    .map_err(io)
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FileEntry {
    pub name: String,
    pub bytes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

impl FileEntry {
    pub fn new(path: &Path, name: String, t: Option<f64>) -> Result<Self, CliError> {
        let bytes = std::fs::metadata(path).map_err(CliError::io(path))?.len();
        Ok(FileEntry { name, bytes, t })
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ConfigEcho {
    pub scenario: String,
    pub closure: String,
    pub elements: usize,
    pub degree: usize,
    pub cfl: f64,
    /// A number, or the string "inf" for the collisionless system.
    pub epsilon: serde_json::Value,
    pub tfinal: f64,
    pub snapshots: Vec<f64>,
    pub diag_stride: usize,
    pub limiter: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<[f64; 5]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<[f64; 5]>,
    pub out: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunManifest {
    pub config: ConfigEcho,
    pub version: String,
    pub steps: usize,
    pub t_final: f64,
    pub repairs: usize,
    pub hyp_loss: usize,
    /// Wall-clock seconds; the only field that differs between identical runs.
    pub wall_time_s: f64,
    pub files: Vec<FileEntry>,
}

impl RunManifest {
    pub fn new(cfg: &RunConfig, summary: &RunSummary, files: Vec<FileEntry>, wall_time_s: f64) -> Self {
        let s = &cfg.scenario;
        let epsilon = if s.epsilon.is_infinite() {
            serde_json::Value::from("inf")
        } else {
            serde_json::Value::from(s.epsilon)
        };
        let state = |p: &quadmom::PrimState| [p.rho, p.u, p.p, p.q, p.r];
        RunManifest {
            config: ConfigEcho {
                scenario: s.scenario.name().into(),
                closure: s.closure.name().into(),
                elements: s.elements,
                degree: s.degree,
                cfl: s.cfl,
                epsilon,
                tfinal: s.t_final,
                snapshots: s.snapshot_times(),
                diag_stride: s.diag_stride,
                limiter: s.limiter,
                left: s.custom_states.map(|(l, _)| state(&l)),
                right: s.custom_states.map(|(_, r)| state(&r)),
                out: cfg.out.display().to_string(),
            },
            version: env!("CARGO_PKG_VERSION").into(),
            steps: summary.steps,
            t_final: summary.t,
            repairs: summary.stats.repairs,
            hyp_loss: summary.stats.hyperbolicity_loss,
            wall_time_s,
            files,
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w).and_then(|_| w.flush()).map_err(CliError::io(path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, std::f64::consts::PI] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(f64::NAN), "");
    }

    #[test]
    fn snapshot_names() {
        assert_eq!(snapshot_name(0), "snap_t0.csv");
        assert_eq!(snapshot_name(12), "snap_t12.csv");
    }
}
