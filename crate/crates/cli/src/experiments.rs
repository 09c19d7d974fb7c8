//! The six experiment runners. Each consumes a validated configuration and
//! produces a report value plus output files; any sweep distributes its
//! independent pieces over the worker pool, collecting in index order so
//! output bytes never depend on scheduling.

use crate::config::*;
use crate::csvio::{table_csv, trajectory_csv};
use anyhow::{anyhow, Context, Result};
use bbm_core::decay::{
    assemble_decay_report, decay_data_size, free_evolution_sup, wraparound_window, DecayReport,
};
use bbm_core::diagnostics::{
    energy_identity_residuals, hamiltonian, invariants, trajectory_records,
};
use bbm_core::illposedness::{assemble_probe_report, probe_entry, ProbeConfig, ProbeReport};
use bbm_core::nonlinear::{bilinear_ratio, scan_pair, BilinearScanReport};
use bbm_core::picard::{existence_time_estimate, integrate, Trajectory};
use bbm_core::spectral::analyze;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Files produced by a run: name plus content, written by the orchestrator.
pub struct OutputFile {
    pub name: String,
    pub content: String,
}

pub struct RunOutcome {
    pub report_json: serde_json::Value,
    pub files: Vec<OutputFile>,
    pub abort: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryReport {
    pub final_time: f64,
    pub abort: Option<String>,
    pub hamiltonian_initial: f64,
    pub relative_drift: BTreeMap<String, f64>,
    pub identity_residual_max: BTreeMap<String, f64>,
    /// Residuals recomputed at twice the saving cadence; the ratio shows the
    /// second-order convergence of the centered differences.
    pub identity_residual_max_coarse: BTreeMap<String, f64>,
    pub window_estimate: f64,
}

fn drift(series: impl Iterator<Item = f64>) -> f64 {
    let values: Vec<f64> = series.collect();
    let first = values[0];
    let scale = first.abs().max(1e-12);
    values
        .iter()
        .map(|v| (v - first).abs() / scale)
        .fold(0.0, f64::max)
}

fn trajectory_outcome(cfg: &TrajectoryConfig) -> Result<RunOutcome> {
    let grid = cfg.grid.build()?;
    let u0 = cfg.data.build(&grid, cfg.seed);
    let solver = cfg.solver.to_solver_config();
    let window = existence_time_estimate(
        &u0,
        solver.s_track.first().copied().unwrap_or(0.0),
        solver.epsilon,
        solver.c_hat,
    );
    let traj: Trajectory = integrate(&u0, &solver);
    let records = trajectory_records(&traj.times, &traj.states, &solver.s_track);

    let mut relative_drift = BTreeMap::new();
    relative_drift.insert(
        "hamiltonian".to_string(),
        drift(traj.states.iter().map(hamiltonian)),
    );
    relative_drift.insert(
        "mass_eta".to_string(),
        drift(traj.states.iter().map(|s| invariants(s).0)),
    );
    relative_drift.insert(
        "mass_v".to_string(),
        drift(traj.states.iter().map(|s| invariants(s).1)),
    );
    relative_drift.insert(
        "cross_invariant".to_string(),
        drift(traj.states.iter().map(|s| invariants(s).2)),
    );

    let identity_residual_max =
        energy_identity_residuals(&traj.times, &traj.states, 0..traj.times.len());
    // the same trajectory sampled at every other state: cadence 2h
    let coarse_times: Vec<f64> = traj.times.iter().step_by(2).copied().collect();
    let coarse_states: Vec<_> = traj.states.iter().step_by(2).cloned().collect();
    let identity_residual_max_coarse = if coarse_times.len() >= 3 {
        energy_identity_residuals(&coarse_times, &coarse_states, 0..coarse_times.len())
    } else {
        BTreeMap::new()
    };

    let abort = traj.abort.as_ref().map(|a| format!("{:?}", a));
    let report = TrajectoryReport {
        final_time: *traj.times.last().unwrap(),
        abort: abort.clone(),
        hamiltonian_initial: hamiltonian(&traj.states[0]),
        relative_drift,
        identity_residual_max,
        identity_residual_max_coarse,
        window_estimate: window,
    };
    Ok(RunOutcome {
        report_json: serde_json::to_value(&report)?,
        files: vec![OutputFile {
            name: "trajectory.csv".to_string(),
            content: trajectory_csv(&records),
        }],
        abort,
    })
}

pub fn run_simulate(cfg: &TrajectoryConfig) -> Result<RunOutcome> {
    trajectory_outcome(cfg)
}

pub fn run_invariants(cfg: &TrajectoryConfig) -> Result<RunOutcome> {
    trajectory_outcome(cfg)
}

pub fn run_illposedness(cfg: &IllposednessConfig) -> Result<RunOutcome> {
    let grid = cfg.grid.build()?;
    let probe = ProbeConfig {
        n_values: cfg.n_values.clone(),
        s: cfg.s,
        s_prime: cfg.s_prime,
        t_eval: cfg.t_eval,
        t_grid_points: cfg.t_grid_points,
        quadrature_order: cfg.quadrature_order,
        xi_samples: cfg.xi_samples,
    };
    let entries: Vec<_> = cfg
        .n_values
        .par_iter()
        .map(|&n| probe_entry(&grid, n, &probe).map_err(|e| anyhow!("band N={n}: {e}")))
        .collect::<Result<_>>()?;
    let report: ProbeReport = assemble_probe_report(&probe, entries);

    let mut files = Vec::new();
    if cfg.dump_spectra {
        // the dump goes through the single-shot quadrature path, so plotted
        // spectra are independent of the sweep's collocation evaluation
        let rule = bbm_core::quadrature::QuadratureRule::gauss_legendre(cfg.quadrature_order);
        for &n in &cfg.n_values {
            let data = bbm_core::illposedness::build_data(n, cfg.s, &grid)
                .map_err(|e| anyhow!("{e}"))?;
            let a2_state = bbm_core::illposedness::second_iterate(&data, cfg.t_eval, &rule)
                .map_err(|e| anyhow!("{e}"))?;
            let a2 = analyze(&a2_state);
            let mut rows = Vec::new();
            for (i, &xi) in grid.frequencies().iter().enumerate() {
                if xi.abs() <= 2.0 * n + 2.0 {
                    rows.push(vec![
                        xi,
                        a2.eta.coefficients()[i].norm(),
                        a2.v.coefficients()[i].norm(),
                    ]);
                }
            }
            rows.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
            files.push(OutputFile {
                name: format!("spectrum_N{}.csv", n as i64),
                content: table_csv(&["xi", "abs_a2_eta_hat", "abs_a2_v_hat"], &rows),
            });
        }
    }
    Ok(RunOutcome {
        report_json: serde_json::to_value(&report)?,
        files,
        abort: None,
    })
}

pub fn run_decay(cfg: &DecayConfig) -> Result<RunOutcome> {
    let grid = cfg.grid.build()?;
    let u0 = cfg.data.build(&grid, cfg.seed);
    let times = cfg.times();
    let window = wraparound_window(&grid);
    let t_max = times.iter().cloned().fold(0.0f64, f64::max);
    if t_max > window {
        return Err(anyhow!(
            "time {t_max} exceeds the wraparound window {window}"
        ));
    }
    let sup_norms: Vec<f64> = times.par_iter().map(|&t| free_evolution_sup(&u0, t)).collect();
    let report: DecayReport =
        assemble_decay_report(&times, sup_norms, decay_data_size(&u0), cfg.fit_t_max);
    let rows: Vec<Vec<f64>> = report
        .times
        .iter()
        .zip(report.sup_norms.iter().zip(&report.bound_values))
        .map(|(&t, (&s, &b))| vec![t, s, b])
        .collect();
    Ok(RunOutcome {
        report_json: serde_json::to_value(&report)?,
        files: vec![OutputFile {
            name: "supnorms.csv".to_string(),
            content: table_csv(&["t", "sup_norm", "bound"], &rows),
        }],
        abort: None,
    })
}

pub fn run_bilinear_scan(cfg: &BilinearScanConfig) -> Result<RunOutcome> {
    let grid = cfg.grid.build()?;
    let ratios: Vec<f64> = (0..cfg.sample_count)
        .into_par_iter()
        .map(|i| {
            let (u, v) = scan_pair(&grid, cfg.seed, i, cfg.epsilon);
            bilinear_ratio(&u, &v, cfg.s, cfg.epsilon)
        })
        .collect();
    let max_ratio = ratios.iter().cloned().fold(0.0f64, f64::max);
    let report = BilinearScanReport {
        s: cfg.s,
        epsilon: cfg.epsilon,
        sample_count: cfg.sample_count,
        max_ratio,
        ratios,
    };
    Ok(RunOutcome {
        report_json: serde_json::to_value(&report)?,
        files: Vec::new(),
        abort: None,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExistenceTimeReport {
    pub s: f64,
    pub c_hat_used: f64,
    pub c_hat_source: String,
    pub data_norm: f64,
    pub entries: Vec<ExistenceTimeEntry>,
    /// Log-log slope of the estimate against ε; the scaled theory gives
    /// exactly −1/2.
    pub fitted_slope: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExistenceTimeEntry {
    pub epsilon: f64,
    pub estimate: f64,
}

pub fn run_existence_time(cfg: &ExistenceTimeConfig) -> Result<RunOutcome> {
    let grid = cfg.grid.build()?;
    let u0 = cfg.data.build(&grid, cfg.seed);
    let (c_hat, source) = match cfg.c_hat {
        Some(c) => (c, "config".to_string()),
        None => {
            let rep = bbm_core::nonlinear::bilinear_constant_scan(
                &grid,
                cfg.s,
                1.0,
                cfg.scan_samples,
                cfg.seed,
            );
            (rep.max_ratio, "scan".to_string())
        }
    };
    let data_norm = bbm_core::norms::pair_norm(&u0, cfg.s);
    let entries: Vec<ExistenceTimeEntry> = cfg
        .epsilons
        .iter()
        .map(|&epsilon| ExistenceTimeEntry {
            epsilon,
            estimate: existence_time_estimate(&u0, cfg.s, epsilon, c_hat),
        })
        .collect();
    let fitted_slope = if entries.len() >= 2 && entries.iter().all(|e| e.estimate.is_finite()) {
        let xs: Vec<f64> = entries.iter().map(|e| e.epsilon).collect();
        let ys: Vec<f64> = entries.iter().map(|e| e.estimate).collect();
        bbm_core::fitting::fit_loglog(&xs, &ys).0
    } else {
        f64::NAN
    };
    let report = ExistenceTimeReport {
        s: cfg.s,
        c_hat_used: c_hat,
        c_hat_source: source,
        data_norm,
        entries,
        fitted_slope,
    };
    Ok(RunOutcome {
        report_json: serde_json::to_value(&report)?,
        files: Vec::new(),
        abort: None,
    })
}

pub fn run(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    match cfg {
        ExperimentConfig::Simulate(c) => run_simulate(c).context("simulate"),
        ExperimentConfig::Invariants(c) => run_invariants(c).context("invariants"),
        ExperimentConfig::Illposedness(c) => run_illposedness(c).context("illposedness"),
        ExperimentConfig::Decay(c) => run_decay(c).context("decay"),
        ExperimentConfig::BilinearScan(c) => run_bilinear_scan(c).context("bilinear-scan"),
        ExperimentConfig::ExistenceTime(c) => run_existence_time(c).context("existence-time"),
    }
}
