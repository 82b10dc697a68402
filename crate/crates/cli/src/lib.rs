//! Command-line front end for the `quadmom` solver: argument and config
//! parsing, scenario dispatch, and CSV/JSON output.

pub mod args;
pub mod output;

use std::path::PathBuf;
use std::time::Instant;

use quadmom::driver::{Scenario, Simulation};
use quadmom::ClosureKind;
use thiserror::Error;

pub use args::{parse_args, RunConfig};
pub use output::{write_diagnostics, write_snapshot, RunManifest};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),

    #[error("--scenario is required")]
    MissingScenario,

    #[error("scenario {scenario} is defined with the {fixed} closure; --closure {requested} contradicts it")]
    ClosureConflict {
        scenario: Scenario,
        fixed: ClosureKind,
        requested: ClosureKind,
    },

    #[error("{}:{line}: {message}", path.display())]
    Config { path: PathBuf, line: usize, message: String },

    #[error("{0}")]
    InvalidValue(String),

    #[error(transparent)]
    Run(#[from] quadmom::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("writing manifest: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

/// Runs a parsed configuration, writing snapshots, diagnostics and finally
/// the manifest into `cfg.out`.
pub fn execute(cfg: &RunConfig) -> Result<RunManifest, CliError> {
    let start = Instant::now();
    std::fs::create_dir_all(&cfg.out).map_err(CliError::io(&cfg.out))?;
    let mut sim = Simulation::new(cfg.scenario.clone())?;
    let kind = cfg.scenario.closure;
    let limits = cfg.scenario.limits;
    let mut files = Vec::new();
    let summary = sim.run_with(|snap| -> Result<(), CliError> {
        let name = output::snapshot_name(snap.index);
        let path = cfg.out.join(&name);
        write_snapshot(&path, snap, kind, &limits)?;
        files.push(output::FileEntry::new(&path, name, Some(snap.t))?);
        Ok(())
    })?;
    let diag = cfg.out.join(output::DIAGNOSTICS_FILE);
    write_diagnostics(&diag, &summary.diagnostics)?;
    files.push(output::FileEntry::new(&diag, output::DIAGNOSTICS_FILE.into(), None)?);

    let manifest = RunManifest::new(cfg, &summary, files, start.elapsed().as_secs_f64());
    manifest.write(&cfg.out.join(output::MANIFEST_FILE))?;
    Ok(manifest)
}
