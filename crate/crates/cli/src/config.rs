//! Experiment configuration: one JSON document per run, with static
//! validation that catches inconsistent setups before any computation
//! starts.

use bbm_core::field::{RealField, WaveState};
use bbm_core::grid::Grid;
use bbm_core::norms::pair_norm;
use bbm_core::picard::{existence_time_estimate, BlowupThresholds, SolverConfig};
use bbm_core::rng::{band_spectrum_field, gaussian_spectrum_field, SplitMix64};
use bbm_core::spectral::Dealias;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Simulate,
    Invariants,
    Illposedness,
    Decay,
    BilinearScan,
    ExistenceTime,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Invariants => "invariants",
            ExperimentKind::Illposedness => "illposedness",
            ExperimentKind::Decay => "decay",
            ExperimentKind::BilinearScan => "bilinear-scan",
            ExperimentKind::ExistenceTime => "existence-time",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentConfig {
    Simulate(TrajectoryConfig),
    Invariants(TrajectoryConfig),
    Illposedness(IllposednessConfig),
    Decay(DecayConfig),
    BilinearScan(BilinearScanConfig),
    ExistenceTime(ExistenceTimeConfig),
}

impl ExperimentConfig {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            ExperimentConfig::Simulate(_) => ExperimentKind::Simulate,
            ExperimentConfig::Invariants(_) => ExperimentKind::Invariants,
            ExperimentConfig::Illposedness(_) => ExperimentKind::Illposedness,
            ExperimentConfig::Decay(_) => ExperimentKind::Decay,
            ExperimentConfig::BilinearScan(_) => ExperimentKind::BilinearScan,
            ExperimentConfig::ExistenceTime(_) => ExperimentKind::ExistenceTime,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ExperimentConfig::Simulate(c) | ExperimentConfig::Invariants(c) => c.seed,
            ExperimentConfig::Illposedness(c) => c.seed,
            ExperimentConfig::Decay(c) => c.seed,
            ExperimentConfig::BilinearScan(c) => c.seed,
            ExperimentConfig::ExistenceTime(c) => c.seed,
        }
    }

    pub fn set_seed(&mut self, seed: u64) {
        match self {
            ExperimentConfig::Simulate(c) | ExperimentConfig::Invariants(c) => c.seed = seed,
            ExperimentConfig::Illposedness(c) => c.seed = seed,
            ExperimentConfig::Decay(c) => c.seed = seed,
            ExperimentConfig::BilinearScan(c) => c.seed = seed,
            ExperimentConfig::ExistenceTime(c) => c.seed = seed,
        }
    }

    pub fn grid(&self) -> &GridConfig {
        match self {
            ExperimentConfig::Simulate(c) | ExperimentConfig::Invariants(c) => &c.grid,
            ExperimentConfig::Illposedness(c) => &c.grid,
            ExperimentConfig::Decay(c) => &c.grid,
            ExperimentConfig::BilinearScan(c) => &c.grid,
            ExperimentConfig::ExistenceTime(c) => &c.grid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub num_points: usize,
    pub domain_length: f64,
}

impl GridConfig {
    pub fn build(&self) -> anyhow::Result<Arc<Grid>> {
        Grid::new(self.num_points, self.domain_length).map_err(|e| anyhow::anyhow!("{e}"))
    }
}

/// Initial-data families; all deterministic from the run seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DataConfig {
    Zero,
    /// Gaussian bumps, centered at fractions of the domain.
    Gaussian {
        amp_eta: f64,
        amp_v: f64,
        width: f64,
        #[serde(default = "default_center")]
        center_eta: f64,
        #[serde(default = "default_center")]
        center_v: f64,
    },
    /// Carrier-modulated Gaussian packet (high-frequency localized data).
    Packet {
        carrier: f64,
        width: f64,
        amp_eta: f64,
        amp_v: f64,
    },
    /// Single trigonometric mode `k` (integer wavenumber on the grid).
    Mode { k: i64, amp_eta: f64, amp_v: f64 },
    /// Seeded random pair with a `⟨ξ⟩^{−envelope}` spectrum, rescaled to a
    /// target `X⁰` pair norm.
    Random { envelope: f64, norm: f64 },
    /// Seeded random band pair concentrated near `xi_center`.
    RandomBand {
        xi_center: f64,
        xi_width: f64,
        norm: f64,
    },
}

fn default_center() -> f64 {
    0.5
}

impl DataConfig {
    pub fn build(&self, grid: &Arc<Grid>, seed: u64) -> WaveState {
        let l = grid.domain_length();
        match *self {
            DataConfig::Zero => WaveState::zero(grid),
            DataConfig::Gaussian {
                amp_eta,
                amp_v,
                width,
                center_eta,
                center_v,
            } => WaveState::new(
                RealField::from_fn(grid, |x| {
                    let d = x - center_eta * l;
                    amp_eta * (-d * d / (2.0 * width * width)).exp()
                }),
                RealField::from_fn(grid, |x| {
                    let d = x - center_v * l;
                    amp_v * (-d * d / (2.0 * width * width)).exp()
                }),
            ),
            DataConfig::Packet {
                carrier,
                width,
                amp_eta,
                amp_v,
            } => WaveState::new(
                RealField::from_fn(grid, |x| {
                    let d = x - 0.5 * l;
                    amp_eta * (carrier * d).cos() * (-d * d / (2.0 * width * width)).exp()
                }),
                RealField::from_fn(grid, |x| {
                    let d = x - 0.5 * l;
                    amp_v * (carrier * d).sin() * (-d * d / (2.0 * width * width)).exp()
                }),
            ),
            DataConfig::Mode { k, amp_eta, amp_v } => {
                let xi = 2.0 * std::f64::consts::PI * k as f64 / l;
                WaveState::new(
                    RealField::from_fn(grid, |x| amp_eta * (xi * x).cos()),
                    RealField::from_fn(grid, |x| amp_v * (xi * x).sin()),
                )
            }
            DataConfig::Random { envelope, norm } => {
                let kmax = grid.dealias_max_wavenumber();
                let u = WaveState::new(
                    gaussian_spectrum_field(grid, SplitMix64::derive(seed, 1), envelope, kmax),
                    gaussian_spectrum_field(grid, SplitMix64::derive(seed, 2), envelope, kmax),
                );
                let n = pair_norm(&u, 0.0);
                if n > 0.0 {
                    u.scale(norm / n)
                } else {
                    u
                }
            }
            DataConfig::RandomBand {
                xi_center,
                xi_width,
                norm,
            } => {
                let u = WaveState::new(
                    band_spectrum_field(grid, SplitMix64::derive(seed, 3), xi_center, xi_width),
                    band_spectrum_field(grid, SplitMix64::derive(seed, 4), xi_center, xi_width),
                );
                let n = pair_norm(&u, 0.0);
                if n > 0.0 {
                    u.scale(norm / n)
                } else {
                    u
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub dt: f64,
    pub t_end: f64,
    pub tol: f64,
    pub max_fp_iters: usize,
    pub series_order: usize,
    pub epsilon: f64,
    pub s_track: Vec<f64>,
    pub colloc_nodes: usize,
    pub c_hat: f64,
    pub dealias: DealiasConfig,
    pub save_every: usize,
    pub min_eta_floor: f64,
    pub min_vx_floor: f64,
    pub max_abs_v_ceil: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DealiasConfig {
    TwoThirds,
    Off,
}

impl Default for SolverSection {
    fn default() -> Self {
        let base = SolverConfig::default();
        SolverSection {
            dt: base.dt,
            t_end: base.t_end,
            tol: base.tol,
            max_fp_iters: base.max_fp_iters,
            series_order: base.series_order,
            epsilon: base.epsilon,
            s_track: base.s_track,
            colloc_nodes: base.colloc_nodes,
            c_hat: base.c_hat,
            dealias: DealiasConfig::TwoThirds,
            save_every: base.save_every,
            min_eta_floor: base.thresholds.min_eta,
            min_vx_floor: base.thresholds.min_vx,
            max_abs_v_ceil: base.thresholds.max_abs_v,
        }
    }
}

impl SolverSection {
    pub fn to_solver_config(&self) -> SolverConfig {
        SolverConfig {
            dt: self.dt,
            t_end: self.t_end,
            tol: self.tol,
            max_fp_iters: self.max_fp_iters,
            series_order: self.series_order,
            epsilon: self.epsilon,
            s_track: self.s_track.clone(),
            colloc_nodes: self.colloc_nodes,
            c_hat: self.c_hat,
            dealias: match self.dealias {
                DealiasConfig::TwoThirds => Dealias::TwoThirds,
                DealiasConfig::Off => Dealias::Off,
            },
            save_every: self.save_every,
            thresholds: BlowupThresholds {
                min_vx: self.min_vx_floor,
                min_eta: self.min_eta_floor,
                max_abs_v: self.max_abs_v_ceil,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryConfig {
    pub grid: GridConfig,
    pub data: DataConfig,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IllposednessConfig {
    pub grid: GridConfig,
    pub n_values: Vec<f64>,
    pub s: f64,
    #[serde(default)]
    pub s_prime: f64,
    #[serde(default = "default_t_eval")]
    pub t_eval: f64,
    #[serde(default = "default_t_grid_points")]
    pub t_grid_points: usize,
    #[serde(default = "default_quadrature_order")]
    pub quadrature_order: usize,
    #[serde(default = "default_xi_samples")]
    pub xi_samples: usize,
    #[serde(default)]
    pub dump_spectra: bool,
    #[serde(default)]
    pub seed: u64,
}

fn default_t_eval() -> f64 {
    1.0
}
fn default_t_grid_points() -> usize {
    17
}
fn default_quadrature_order() -> usize {
    16
}
fn default_xi_samples() -> usize {
    1024
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayConfig {
    pub grid: GridConfig,
    pub data: DataConfig,
    pub t_min: f64,
    pub t_max: f64,
    pub time_count: usize,
    #[serde(default = "default_fit_t_max")]
    pub fit_t_max: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_fit_t_max() -> f64 {
    10.0
}

impl DecayConfig {
    pub fn times(&self) -> Vec<f64> {
        let k = self.time_count.max(2);
        (0..k)
            .map(|i| {
                let f = i as f64 / (k - 1) as f64;
                self.t_min * (self.t_max / self.t_min).powf(f)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearScanConfig {
    pub grid: GridConfig,
    pub s: f64,
    pub epsilon: f64,
    pub sample_count: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExistenceTimeConfig {
    pub grid: GridConfig,
    pub data: DataConfig,
    pub s: f64,
    pub epsilons: Vec<f64>,
    /// Empirical bilinear constant; when absent it is measured by a scan on
    /// the configured grid.
    #[serde(default)]
    pub c_hat: Option<f64>,
    #[serde(default = "default_scan_samples")]
    pub scan_samples: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_scan_samples() -> usize {
    100
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    fn error(field: &str, message: String) -> Self {
        Diagnostic {
            severity: Severity::Error,
            field: field.to_string(),
            message,
        }
    }

    fn warning(field: &str, message: String) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            field: field.to_string(),
            message,
        }
    }
}

/// Static checks only; nothing heavy is launched. Errors make the run
/// refuse to start, warnings are reported and the run proceeds.
pub fn validate_config(cfg: &ExperimentConfig) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let grid_cfg = cfg.grid();
    if grid_cfg.num_points < 16 || grid_cfg.num_points % 2 != 0 {
        out.push(Diagnostic::error(
            "grid.num_points",
            format!(
                "must be an even integer >= 16 (got {})",
                grid_cfg.num_points
            ),
        ));
    }
    if !(grid_cfg.domain_length > 0.0) {
        out.push(Diagnostic::error(
            "grid.domain_length",
            "must be positive".to_string(),
        ));
    }
    if !out.is_empty() {
        return out; // nothing below makes sense without a grid
    }
    let grid = match grid_cfg.build() {
        Ok(g) => g,
        Err(e) => {
            out.push(Diagnostic::error("grid", e.to_string()));
            return out;
        }
    };

    match cfg {
        ExperimentConfig::Simulate(c) | ExperimentConfig::Invariants(c) => {
            if !(c.solver.dt > 0.0) {
                out.push(Diagnostic::error("solver.dt", "must be positive".into()));
            }
            if !(c.solver.tol > 0.0) {
                out.push(Diagnostic::error("solver.tol", "must be positive".into()));
            }
            if c.solver.series_order < 1 {
                out.push(Diagnostic::error(
                    "solver.series_order",
                    "must be at least 1".into(),
                ));
            }
            if !(c.solver.epsilon > 0.0) {
                out.push(Diagnostic::error(
                    "solver.epsilon",
                    "must be positive".into(),
                ));
            }
            if out.iter().all(|d| d.severity != Severity::Error) {
                let u0 = c.data.build(&grid, c.seed);
                let window = existence_time_estimate(
                    &u0,
                    c.solver.s_track.first().copied().unwrap_or(0.0),
                    c.solver.epsilon,
                    c.solver.c_hat,
                );
                if c.solver.dt > window {
                    out.push(Diagnostic::warning(
                        "solver.dt",
                        format!(
                            "dt = {} exceeds the contraction-window estimate 1/(4·√ε·Ĉ·‖u₀‖) = {:.6}; the fixed point may fail to contract",
                            c.solver.dt, window
                        ),
                    ));
                }
            }
        }
        ExperimentConfig::Illposedness(c) => {
            if c.n_values.len() < 2 {
                out.push(Diagnostic::error(
                    "n_values",
                    "a sweep needs at least two band centers".into(),
                ));
            }
            if c.s > 0.0 {
                out.push(Diagnostic::error(
                    "s",
                    format!("data index must be <= 0 (got {}); s = 0 is the well-posed control", c.s),
                ));
            }
            if !(c.t_eval > 0.0 && c.t_eval <= 1.0) {
                out.push(Diagnostic::error(
                    "t_eval",
                    "the certified window is 0 < t <= 1".into(),
                ));
            }
            let modes_per_unit = grid.domain_length() / (2.0 * std::f64::consts::PI);
            for &n in &c.n_values {
                if n < 16.0 {
                    out.push(Diagnostic::error(
                        "n_values",
                        format!(
                            "band center N = {n} is below 16; the certified multiplier lower bound needs N >= 16"
                        ),
                    ));
                } else if 2.0 * n + 1.0 > grid.max_frequency() {
                    out.push(Diagnostic::error(
                        "n_values",
                        format!(
                            "quadratic band image 2N+1 = {} exceeds the grid Nyquist frequency {:.1}",
                            2.0 * n + 1.0,
                            grid.max_frequency()
                        ),
                    ));
                } else if modes_per_unit < 8.0 {
                    out.push(Diagnostic::error(
                        "grid.domain_length",
                        format!(
                            "only {modes_per_unit:.1} modes per unit frequency; the band needs at least 8 per half"
                        ),
                    ));
                }
            }
        }
        ExperimentConfig::Decay(c) => {
            if !(c.t_min > 0.0 && c.t_max > c.t_min) {
                out.push(Diagnostic::error(
                    "t_min/t_max",
                    "need 0 < t_min < t_max".into(),
                ));
            }
            let window = grid.domain_length() / 2.0;
            if c.t_max > window {
                out.push(Diagnostic::error(
                    "t_max",
                    format!(
                        "t_max = {} is beyond the wraparound window L/2 = {window}; periodic images would contaminate sup norms",
                        c.t_max
                    ),
                ));
            }
        }
        ExperimentConfig::BilinearScan(c) => {
            if c.sample_count < 1 {
                out.push(Diagnostic::error(
                    "sample_count",
                    "need at least one sample".into(),
                ));
            }
            if !(c.epsilon > 0.0) {
                out.push(Diagnostic::error("epsilon", "must be positive".into()));
            }
        }
        ExperimentConfig::ExistenceTime(c) => {
            if c.epsilons.is_empty() {
                out.push(Diagnostic::error(
                    "epsilons",
                    "need at least one scaling value".into(),
                ));
            }
            if c.epsilons.iter().any(|&e| !(e > 0.0)) {
                out.push(Diagnostic::error(
                    "epsilons",
                    "scaling values must be positive".into(),
                ));
            }
            if let Some(ch) = c.c_hat {
                if !(ch > 0.0) {
                    out.push(Diagnostic::error("c_hat", "must be positive".into()));
                }
            }
        }
    }
    out
}
