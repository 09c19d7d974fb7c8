//! Run manifests: a full record of what produced a run directory.

use crate::config::ExperimentConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub experiment: String,
    pub seed: u64,
    pub grid_num_points: usize,
    pub grid_domain_length: f64,
    pub grid_spacing: f64,
    /// Full configuration echo; reruns parse this back and must reproduce
    /// the run byte for byte (wall clock aside).
    pub config: ExperimentConfig,
    pub version: String,
    /// Timing is informational and excluded from determinism comparisons.
    pub wall_clock_seconds: f64,
    pub abort: Option<String>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(cfg: &ExperimentConfig) -> Self {
        let grid = cfg.grid();
        RunManifest {
            experiment: cfg.kind().to_string(),
            seed: cfg.seed(),
            grid_num_points: grid.num_points,
            grid_domain_length: grid.domain_length,
            grid_spacing: grid.domain_length / grid.num_points as f64,
            config: cfg.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_clock_seconds: 0.0,
            abort: None,
            outputs: Vec::new(),
        }
    }

    /// The manifest with timing normalized out, for determinism checks.
    pub fn normalized(&self) -> RunManifest {
        let mut m = self.clone();
        m.wall_clock_seconds = 0.0;
        m
    }
}
