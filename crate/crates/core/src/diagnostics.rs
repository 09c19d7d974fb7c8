//! Conserved quantities, energy-identity residuals, and blow-up monitors.
//!
//! The flow conserves the Hamiltonian
//!
//! ```text
//! H(u) = ½ ∫ [η² + (1+η) v²] dx
//! ```
//!
//! together with `∫η`, `∫v`, and the cross integral `∫(ηv + η_x v_x)`.
//! Three differential identities hold along smooth solutions and are checked
//! here as residuals (time derivative by centered differences on saved
//! states against the quadrature of the right-hand side):
//!
//! ```text
//! d/dt ∫ (η² + η_x² + v² + v_x²) = −∫ v_x η²
//! d/dt ∫ (v² + v_x²)             = 2 ∫ v_x η
//! d/dt ∫ (η² + η_x²)             = −2 ∫ η v_x + 2 ∫ η η_x v
//! ```
//!
//! Blow-up happens exactly when `inf_x v_x`, `inf_x η` escape to `−∞` or
//! `|v|_∞` to `+∞`; the monitors report the grid extrema of those three
//! quantities.

use crate::field::{RealField, WaveState};
use crate::norms::{pair_norm, sobolev_norm};
use crate::spectral::{derivative, forward_transform, inverse_transform_unchecked};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// Grid extrema of the three blow-up indicators.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Monitors {
    pub min_vx: f64,
    pub min_eta: f64,
    pub max_abs_v: f64,
}

/// One saved diagnostics row.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub hamiltonian: f64,
    pub mass_eta: f64,
    pub mass_v: f64,
    pub cross_invariant: f64,
    /// Hilbertian `X¹` norm; its square is the energy in the first identity.
    pub norm_x1: f64,
    /// Tracked Sobolev indices and the pair norms at them, aligned.
    pub norm_indices: Vec<f64>,
    pub norms: Vec<f64>,
    pub min_vx: f64,
    pub min_eta: f64,
    pub max_abs_v: f64,
    /// Identity residuals, filled for interior rows by
    /// [`energy_identity_residuals`]; empty at the window edges.
    pub identity_residuals: BTreeMap<String, f64>,
}

fn spectral_dx(f: &RealField) -> RealField {
    inverse_transform_unchecked(&derivative(&forward_transform(f)))
}

fn quad(f: &RealField) -> f64 {
    f.grid().spacing() * f.samples().iter().sum::<f64>()
}

/// Hamiltonian `½∫[η² + (1+η)v²] dx` by grid quadrature.
pub fn hamiltonian(u: &WaveState) -> f64 {
    let dx = u.grid().spacing();
    let sum: f64 = u
        .eta
        .samples()
        .iter()
        .zip(u.v.samples())
        .map(|(&e, &w)| e * e + (1.0 + e) * w * w)
        .sum();
    0.5 * dx * sum
}

/// The three conserved integrals `(∫η, ∫v, ∫(ηv + η_x v_x))`.
pub fn invariants(u: &WaveState) -> (f64, f64, f64) {
    let mass_eta = quad(&u.eta);
    let mass_v = quad(&u.v);
    let ex = spectral_dx(&u.eta);
    let vx = spectral_dx(&u.v);
    let cross = quad(&u.eta.mul(&u.v).add(&ex.mul(&vx)));
    (mass_eta, mass_v, cross)
}

/// Grid extrema of `v_x`, `η`, and `|v|`.
pub fn blowup_monitors(u: &WaveState) -> Monitors {
    let vx = spectral_dx(&u.v);
    Monitors {
        min_vx: vx.min(),
        min_eta: u.eta.min(),
        max_abs_v: u.v.max_abs(),
    }
}

/// Squared Hilbertian `X¹` norm, the energy of the first identity.
fn x1_energy(u: &WaveState) -> f64 {
    let e = sobolev_norm(&u.eta, 1.0);
    let v = sobolev_norm(&u.v, 1.0);
    e * e + v * v
}

/// Right-hand sides of the three identities at a state.
fn identity_rhs(u: &WaveState) -> (f64, f64, f64) {
    let vx = spectral_dx(&u.v);
    let ex = spectral_dx(&u.eta);
    let eta2 = u.eta.mul(&u.eta);
    let rhs_x1 = -quad(&vx.mul(&eta2));
    let rhs_v = 2.0 * quad(&vx.mul(&u.eta));
    let rhs_eta = -2.0 * quad(&u.eta.mul(&vx)) + 2.0 * quad(&u.eta.mul(&ex).mul(&u.v));
    (rhs_x1, rhs_v, rhs_eta)
}

fn h1_sq(f: &RealField) -> f64 {
    let n = sobolev_norm(f, 1.0);
    n * n
}

/// Residuals of the three energy identities over `window` (index range into
/// the saved states), using second-order centered differences in time.
/// Returns the maximum absolute residual per identity; needs at least three
/// saved states and a uniform cadence.
pub fn energy_identity_residuals(
    times: &[f64],
    states: &[WaveState],
    window: core::ops::Range<usize>,
) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    let lo = window.start.max(1);
    let hi = window.end.min(times.len().saturating_sub(1));
    let mut worst = [0.0f64; 3];
    for i in lo..hi {
        let h_plus = times[i + 1] - times[i];
        let h_minus = times[i] - times[i - 1];
        if (h_plus - h_minus).abs() > 1e-9 * h_plus.max(h_minus) {
            continue;
        }
        let res = identity_residuals_at(times, states, i);
        for (w, r) in worst.iter_mut().zip(res) {
            *w = w.max(r.abs());
        }
    }
    out.insert(String::from("x1_energy"), worst[0]);
    out.insert(String::from("v_h1"), worst[1]);
    out.insert(String::from("eta_h1"), worst[2]);
    out
}

/// Residuals (LHS − RHS) of the three identities at interior index `i`.
pub fn identity_residuals_at(times: &[f64], states: &[WaveState], i: usize) -> [f64; 3] {
    assert!(i >= 1 && i + 1 < times.len());
    let h_plus = times[i + 1] - times[i];
    let h_minus = times[i] - times[i - 1];
    assert!(
        (h_plus - h_minus).abs() <= 1e-9 * h_plus.max(h_minus),
        "centered differences need a uniform save cadence"
    );
    let two_h = times[i + 1] - times[i - 1];
    let d_x1 = (x1_energy(&states[i + 1]) - x1_energy(&states[i - 1])) / two_h;
    let d_v = (h1_sq(&states[i + 1].v) - h1_sq(&states[i - 1].v)) / two_h;
    let d_eta = (h1_sq(&states[i + 1].eta) - h1_sq(&states[i - 1].eta)) / two_h;
    let (r_x1, r_v, r_eta) = identity_rhs(&states[i]);
    [d_x1 - r_x1, d_v - r_v, d_eta - r_eta]
}

/// Diagnostics row for one saved state.
pub fn record(t: f64, u: &WaveState, s_track: &[f64]) -> DiagnosticsRecord {
    let (mass_eta, mass_v, cross) = invariants(u);
    let monitors = blowup_monitors(u);
    DiagnosticsRecord {
        t,
        hamiltonian: hamiltonian(u),
        mass_eta,
        mass_v,
        cross_invariant: cross,
        norm_x1: libm::sqrt(x1_energy(u)),
        norm_indices: s_track.to_vec(),
        norms: s_track.iter().map(|&s| pair_norm(u, s)).collect(),
        min_vx: monitors.min_vx,
        min_eta: monitors.min_eta,
        max_abs_v: monitors.max_abs_v,
        identity_residuals: BTreeMap::new(),
    }
}

/// Rows for a whole trajectory, identity residuals attached to interior
/// rows where the saved cadence is locally uniform (a shortened final step
/// leaves its neighbors without residuals rather than biasing them).
pub fn trajectory_records(
    times: &[f64],
    states: &[WaveState],
    s_track: &[f64],
) -> Vec<DiagnosticsRecord> {
    let mut rows: Vec<DiagnosticsRecord> = times
        .iter()
        .zip(states)
        .map(|(&t, u)| record(t, u, s_track))
        .collect();
    let names = ["x1_energy", "v_h1", "eta_h1"];
    for i in 1..times.len().saturating_sub(1) {
        let h_plus = times[i + 1] - times[i];
        let h_minus = times[i] - times[i - 1];
        if (h_plus - h_minus).abs() > 1e-9 * h_plus.max(h_minus) {
            continue;
        }
        let res = identity_residuals_at(times, states, i);
        for (name, r) in names.iter().zip(res) {
            rows[i].identity_residuals.insert(String::from(*name), r);
        }
    }
    rows
}
