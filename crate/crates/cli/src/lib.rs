//! Orchestration for the laboratory command line: configuration loading,
//! validation, worker-pool setup, manifest and report persistence.
//!
//! Every run writes `manifest.json` (full configuration echo, seed, grid,
//! version, wall clock, abort reason) and `report.json` into the output
//! directory; trajectory experiments add `trajectory.csv`, decay runs add
//! `supnorms.csv`. Reruns of the same manifest reproduce every data
//! artifact byte for byte; only the manifest's wall-clock field differs.

pub mod config;
pub mod csvio;
pub mod experiments;
pub mod manifest;

use anyhow::{anyhow, Context, Result};
use config::{validate_config, ExperimentConfig, ExperimentKind, Severity};
use manifest::RunManifest;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "BBM_LAB_OUT";

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub config_path: PathBuf,
    pub out_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed_override: Option<u64>,
    /// Subcommand the user invoked; must match the config's experiment.
    pub expected_kind: Option<ExperimentKind>,
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

fn resolve_out_dir(opts: &RunOptions) -> Result<PathBuf> {
    if let Some(dir) = &opts.out_dir {
        return Ok(dir.clone());
    }
    if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
        if !dir.is_empty() {
            return Ok(PathBuf::from(dir));
        }
    }
    Ok(PathBuf::from("out"))
}

fn write_error_record(dir: &Path, message: &str) {
    let record = serde_json::json!({ "error": message });
    let _ = std::fs::create_dir_all(dir);
    let _ = std::fs::write(
        dir.join("error.json"),
        serde_json::to_string_pretty(&record).unwrap_or_default(),
    );
}

/// Validate, dispatch, persist. Returns the process exit code: 0 on
/// success, 2 for configuration errors, 1 for runtime failures.
pub fn run_experiment(opts: &RunOptions) -> Result<i32> {
    let out_dir = resolve_out_dir(opts)?;
    let mut cfg = match load_config(&opts.config_path) {
        Ok(c) => c,
        Err(e) => {
            write_error_record(&out_dir, &format!("{e:#}"));
            eprintln!("config invalid: {e:#}");
            return Ok(2);
        }
    };
    if let Some(kind) = opts.expected_kind {
        if cfg.kind() != kind {
            let msg = format!(
                "config declares experiment '{}' but the '{}' subcommand was invoked",
                cfg.kind(),
                kind
            );
            write_error_record(&out_dir, &msg);
            eprintln!("config invalid: {msg}");
            return Ok(2);
        }
    }
    if let Some(seed) = opts.seed_override {
        cfg.set_seed(seed);
    }

    let diagnostics = validate_config(&cfg);
    for d in &diagnostics {
        match d.severity {
            Severity::Warning => eprintln!("warning [{}]: {}", d.field, d.message),
            Severity::Error => eprintln!("error [{}]: {}", d.field, d.message),
        }
    }
    if diagnostics.iter().any(|d| d.severity == Severity::Error) {
        let msg = diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
            .map(|d| format!("[{}] {}", d.field, d.message))
            .collect::<Vec<_>>()
            .join("; ");
        write_error_record(&out_dir, &msg);
        return Ok(2);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()
        .context("building worker pool")?;

    let start = Instant::now();
    let outcome = pool.install(|| experiments::run(&cfg));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            write_error_record(&out_dir, &format!("{e:#}"));
            eprintln!("run failed: {e:#}");
            return Ok(1);
        }
    };

    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    let mut manifest = RunManifest::new(&cfg);
    manifest.wall_clock_seconds = start.elapsed().as_secs_f64();
    manifest.abort = outcome.abort.clone();
    manifest.outputs = std::iter::once("report.json".to_string())
        .chain(outcome.files.iter().map(|f| f.name.clone()))
        .collect();

    std::fs::write(
        out_dir.join("report.json"),
        serde_json::to_string_pretty(&outcome.report_json)?,
    )?;
    for file in &outcome.files {
        std::fs::write(out_dir.join(&file.name), &file.content)?;
    }
    std::fs::write(
        out_dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)?,
    )?;
    println!(
        "{}: wrote {} to {}",
        cfg.kind(),
        manifest.outputs.join(", "),
        out_dir.display()
    );
    Ok(0)
}

/// Validation-only entry point: parse, check, report, no computation.
pub fn validate_only(config_path: &Path) -> Result<i32> {
    let cfg = load_config(config_path).map_err(|e| anyhow!("{e:#}"))?;
    let diagnostics = validate_config(&cfg);
    if diagnostics.is_empty() {
        println!("ok: configuration is valid");
        return Ok(0);
    }
    for d in &diagnostics {
        let tag = match d.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        println!("{tag} [{}]: {}", d.field, d.message);
    }
    if diagnostics.iter().any(|d| d.severity == Severity::Error) {
        Ok(2)
    } else {
        Ok(0)
    }
}
