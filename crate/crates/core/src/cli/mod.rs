//! Config-driven commands behind the `abh` binary.
//!
//! A command reads one TOML run file, resolves defaults and command line
//! overrides, runs, and returns a JSON report with a process exit code:
//! 0 ok, 2 configuration, 3 numerical, 4 invalid experiment, 5 analysis.
//! With an output directory it also writes its data files, the report and a
//! [`RunManifest`].

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Value};

pub use config::{ContourSpec, FourierTerm, GaugeSpec, PotentialSpec, RunConfig, ScanSpec, SurfaceSpec};
pub use output::{format_real, OutputFile, RunManifest};

use crate::error::{Error, Result};
use crate::quadrature::Quadrature;
use output::Artifact;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Holonomy of `[potential]` along `[contour]`; `--tolerance` sets the
    /// adaptive quadrature tolerance.
    Holonomy,
    /// Stokes residual over `[surface]`; fails above the tolerance (1e-6).
    Stokes,
    /// Holonomy change under `[gauge]`; fails above the tolerance (1e-9).
    GaugeCheck,
    /// One `[magnetic]` or `[electric]` run; the tolerance (0.05) bounds the
    /// phase error reported as `within_tolerance`.
    Simulate,
    /// `[magnetic]` over `[scan]` fluxes; fails when the slope is further
    /// than the tolerance (0.05) from one.
    FluxScan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Holonomy => "holonomy",
            Command::Stokes => "stokes",
            Command::GaugeCheck => "gauge-check",
            Command::Simulate => "simulate",
            Command::FluxScan => "flux-scan",
        }
    }

    /// Name of the JSON report inside the output directory.
    pub fn report_file(self) -> &'static str {
        match self {
            Command::Holonomy | Command::Stokes | Command::GaugeCheck => "report.json",
            Command::Simulate => "summary.json",
            Command::FluxScan => "fit.json",
        }
    }

    fn default_tolerance(self) -> Option<f64> {
        match self {
            Command::Holonomy => None,
            Command::Stokes => Some(1e-6),
            Command::GaugeCheck => Some(1e-9),
            Command::Simulate | Command::FluxScan => Some(0.05),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
    /// Present when an output directory was given and written.
    pub manifest: Option<RunManifest>,
}

/// Applies defaults and the command line tolerance to `cfg`.
pub fn resolve(command: Command, mut cfg: RunConfig, tolerance: Option<f64>) -> Result<RunConfig> {
    if let Some(t) = tolerance.or(cfg.tolerance) {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Config(format!("tolerance must be positive and finite, got {t}")));
        }
    }
    let mut quad = cfg.quadrature.unwrap_or_default();
    match command {
        Command::Holonomy => {
            if let Some(t) = tolerance.or(cfg.tolerance) {
                match &mut quad {
                    Quadrature::Adaptive { tolerance, .. } => *tolerance = t,
                    Quadrature::Fixed { .. } => {
                        return Err(Error::Config("a tolerance needs adaptive quadrature".into()));
                    }
                }
            }
            cfg.tolerance = None;
        }
        _ => cfg.tolerance = tolerance.or(cfg.tolerance).or(command.default_tolerance()),
    }
    cfg.quadrature = Some(quad);
    Ok(cfg)
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => f(),
        Some(0) => Err(Error::Config("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(f),
    }
}

fn error_report(command: Command, e: &Error) -> Value {
    json!({
        "command": command.name(),
        "status": "error",
        "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() },
    })
}

/// Runs `command` as configured by `opts`.
pub fn run(command: Command, opts: &Options) -> Outcome {
    let started = Instant::now();
    let text = std::fs::read_to_string(&opts.config).map_err(|e| {
        Error::Config(format!("cannot read {}: {e}", opts.config.display()))
    });
    let mut digest = text.as_ref().map(output::digest).unwrap_or_default();
    let result = text
        .and_then(|t| RunConfig::from_toml(&t))
        .and_then(|cfg| resolve(command, cfg, opts.tolerance))
        .and_then(|cfg| {
            digest = output::digest(&cfg);
            with_jobs(opts.jobs, || commands::execute(command, &cfg))
        });
    let (mut exit_code, mut report, mut files) = match result {
        Ok(r) => (r.exit_code, r.report, r.files),
        Err(e) => (e.exit_code(), error_report(command, &e), Vec::new()),
    };
    let mut manifest = None;
    if let Some(dir) = &opts.out {
        files.push(Artifact::json(command.report_file(), &report));
        let mut m = RunManifest {
            command: command.name().to_string(),
            config_digest: digest,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: files
                .iter()
                .map(|a| OutputFile {
                    path: a.name.clone(),
                    rows: a.rows,
                })
                .collect(),
            duration_seconds: 0.0,
        };
        let written = output::write_all(dir, &files).and_then(|()| {
            m.duration_seconds = started.elapsed().as_secs_f64();
            let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
            Ok(std::fs::write(dir.join(RunManifest::FILE_NAME), text + "\n")?)
        });
        match written {
            Ok(()) => manifest = Some(m),
            Err(e) => {
                exit_code = e.exit_code();
                report = error_report(command, &e);
            }
        }
    }
    Outcome {
        exit_code,
        report,
        manifest,
    }
}
