//! The high-to-low frequency norm-explosion probe.
//!
//! The datum concentrates the velocity spectrum on the band
//! `N−1/2 ≤ |ξ| ≤ N+1/2` with amplitude `N^{−s}` and no surface component:
//!
//! ```text
//! η̂₀ = 0,      v̂₀ = N^{−s} χ_{N−1/2 ≤ |ξ| ≤ N+1/2},
//! ```
//!
//! so its `X^s` norm is independent of `N` while the second Picard iterate
//! `A₂(u₀) = N₂(S(t)u₀, S(t)u₀)` receives a quadratic high-to-low
//! interaction: the product of two band modes of opposite sign lands in
//! `|ξ| ≤ 1`, where the propagator combination
//!
//! ```text
//! L̂₂(ξ,t−t′) L̂₂(ξ₁,t′) L̂₁(ξ−ξ₁,t′) + ½ L̂₁(ξ,t−t′) L̂₁(ξ₁,t′) L̂₁(ξ−ξ₁,t′) ≥ 1/32
//! ```
//!
//! for `N ≥ 16`, `0 ≤ t′ ≤ t ≤ 1`. With both data factors carrying `N^{−s}`
//! and the band overlap of order one, the low-frequency `A₂` norm grows
//! like `N^{−2s}` — at least as fast as the certified `N^{−s}` lower bound
//! — while the data norm stays of size one; for `s < 0` this witnesses the
//! discontinuity of the data-to-`A₂` map and hence ill-posedness below
//! `L² × L²`. Everything here runs at `ε = 1`.

use crate::field::{SpectralField, SpectralState, WaveState};
use crate::fitting::fit_loglog;
use crate::grid::Grid;
use crate::nonlinear::{duhamel_n2, NonlinearError};
use crate::picard::series_terms;
use crate::propagator::apply_semigroup_spectral;
use crate::quadrature::QuadratureRule;
use crate::spectral::{analyze, lambda_symbol, synthesize, Dealias};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

/// Minimum band-mode count per half-band for a trustworthy discretization
/// of the characteristic function.
pub const MIN_BAND_MODES: usize = 8;

/// Certified pointwise lower bound of the propagator combination.
pub const MULTIPLIER_FLOOR: f64 = 1.0 / 32.0;

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeError {
    /// Fewer than [`MIN_BAND_MODES`] grid modes fall in each band half, or
    /// the band (or its quadratic image `2N+1`) is not resolved by the grid.
    BandUnresolved {
        n: f64,
        modes_in_half: usize,
        max_frequency: f64,
    },
    /// A sampled multiplier value fell below the certified `1/32` floor —
    /// an implementation error or sampling outside the hypotheses
    /// `N ≥ 16`, `0 ≤ t′ ≤ t ≤ 1`.
    CertificationFailure { n: f64, min_value: f64 },
    /// Band centers below 16 are outside the certified regime.
    BandCenterTooSmall { n: f64 },
    /// Data index must be ≤ 0 (< 0 probes explosion, 0 is the control).
    BadDataIndex { s: f64 },
    Nonlinear(NonlinearError),
}

impl fmt::Display for ProbeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeError::BandUnresolved {
                n,
                modes_in_half,
                max_frequency,
            } => write!(
                f,
                "band at N={n} unresolved: {modes_in_half} modes per half (need >= {MIN_BAND_MODES}) within max frequency {max_frequency:.2}"
            ),
            ProbeError::CertificationFailure { n, min_value } => write!(
                f,
                "multiplier minimum {min_value:.6} at N={n} fell below the certified floor {MULTIPLIER_FLOOR}"
            ),
            ProbeError::BandCenterTooSmall { n } => {
                write!(f, "band center N={n} is below 16, outside the certified lower-bound regime")
            }
            ProbeError::BadDataIndex { s } => {
                write!(f, "data index s={s} must be <= 0")
            }
            ProbeError::Nonlinear(e) => write!(f, "{e}"),
        }
    }
}

impl From<NonlinearError> for ProbeError {
    fn from(e: NonlinearError) -> Self {
        ProbeError::Nonlinear(e)
    }
}

#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProbeConfig {
    pub n_values: Vec<f64>,
    /// Data index; `< 0` probes the explosion, `0` is the well-posed
    /// control.
    pub s: f64,
    /// Measurement index for the low-frequency norm.
    pub s_prime: f64,
    /// Endpoint of the time window, in `(0, 1]`.
    pub t_eval: f64,
    /// Nodes of the recorded time grid on `[0, t_eval]` (Lobatto points,
    /// endpoint included).
    pub t_grid_points: usize,
    /// Quadrature for the single-shot second-iterate cross-check.
    pub quadrature_order: usize,
    /// Samples per band branch in the multiplier certificate.
    pub xi_samples: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            n_values: alloc::vec![64.0, 128.0, 256.0, 512.0],
            s: -0.5,
            s_prime: 0.0,
            t_eval: 1.0,
            t_grid_points: 17,
            quadrature_order: 16,
            xi_samples: 1024,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProbeEntry {
    pub n: f64,
    pub data_norm_s: f64,
    /// Sup over the time grid of the `|ξ| ≤ 1` restricted `X^{s'}` norm of `A₂`.
    pub low_freq_a2_norm: f64,
    /// Same restriction at `t = t_eval` only.
    pub low_freq_a2_at_t_eval: f64,
    pub full_a2_norm: f64,
    pub multiplier_min: f64,
    /// Largest `A₂` coefficient outside `|ξ| ≤ 1 ∪ [2N−1, 2N+1]`, relative
    /// to the spectral peak.
    pub support_leak: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProbeReport {
    pub s: f64,
    pub s_prime: f64,
    pub t_eval: f64,
    pub entries: Vec<ProbeEntry>,
    pub fitted_slope: f64,
    pub fit_residual: f64,
    /// True when every sampled multiplier minimum stayed at or above 1/32.
    pub certified: bool,
}

fn band_slots(grid: &Grid, n: f64) -> Vec<usize> {
    grid.frequencies()
        .iter()
        .enumerate()
        .filter(|&(i, &xi)| {
            i != grid.nyquist_index() && xi.abs() >= n - 0.5 && xi.abs() <= n + 0.5
        })
        .map(|(i, _)| i)
        .collect()
}

fn check_band(grid: &Grid, n: f64) -> Result<Vec<usize>, ProbeError> {
    if n < 16.0 {
        return Err(ProbeError::BandCenterTooSmall { n });
    }
    let slots = band_slots(grid, n);
    let positive = slots.iter().filter(|&&i| grid.frequency(i) > 0.0).count();
    let negative = slots.len() - positive;
    // the quadratic image reaches 2N+1; demand it resolved so the support
    // pattern is representable
    if positive < MIN_BAND_MODES
        || negative < MIN_BAND_MODES
        || 2.0 * n + 1.0 > grid.max_frequency()
    {
        return Err(ProbeError::BandUnresolved {
            n,
            modes_in_half: positive.min(negative),
            max_frequency: grid.max_frequency(),
        });
    }
    Ok(slots)
}

/// The band datum: `η₀ = 0`, `v̂₀ = N^{−s}` on every grid mode with
/// `|ξ| ∈ [N−1/2, N+1/2]`.
pub fn build_data(n: f64, s: f64, grid: &Arc<Grid>) -> Result<WaveState, ProbeError> {
    let slots = check_band(grid, n)?;
    let amp = libm::pow(n, -s);
    let mut v = SpectralField::zero(grid);
    for i in slots {
        v.coefficients_mut()[i] = Complex64::new(amp, 0.0);
    }
    Ok(synthesize(&SpectralState::new(SpectralField::zero(grid), v)))
}

/// Second Picard iterate `A₂(u₀)(t) = N₂(S(·)u₀, S(·)u₀)(t)` by single-shot
/// quadrature. Products are left undealiased: probe grids resolve the
/// quadratic band image exactly.
pub fn second_iterate(
    u0: &WaveState,
    t: f64,
    rule: &QuadratureRule,
) -> Result<WaveState, ProbeError> {
    let spec = analyze(u0);
    let free = |tau: f64| apply_semigroup_spectral(&spec, tau, 1.0);
    let a2 = duhamel_n2(&free, &free, t, rule, 1.0, Dealias::Off)?;
    Ok(synthesize(&a2))
}

/// The reduced direct evaluation of `Â₂` on the low-frequency slots
/// `|ξ| ≤ 1` for the band datum: a double sum over band modes with the
/// two-term propagator bracket, the `t′` integral done by `rule`. Entirely
/// independent of the transform/semigroup machinery; used as the oracle for
/// the explosion measurements.
pub fn reduced_a2_low_frequency(
    n: f64,
    s: f64,
    grid: &Arc<Grid>,
    t: f64,
    rule: &QuadratureRule,
) -> Result<SpectralState, ProbeError> {
    let slots = check_band(grid, n)?;
    let amp = libm::pow(n, -s);
    let mut out = SpectralState::zero(grid);
    for (k, &xi) in grid.frequencies().iter().enumerate() {
        if xi.abs() > 1.0 || k == grid.nyquist_index() {
            continue;
        }
        let lam = lambda_symbol(xi);
        let mut bracket1 = 0.0; // imaginary part of the first-component bracket
        let mut bracket2 = 0.0; // real second-component bracket
        for &j in &slots {
            let xi1 = grid.frequency(j);
            let xi2 = xi - xi1;
            if xi2.abs() < n - 0.5 || xi2.abs() > n + 0.5 {
                continue;
            }
            let l_b = lambda_symbol(xi1);
            let l_c = lambda_symbol(xi2);
            let i1 = rule.integrate(t, |tp| {
                libm::cos(lam * (t - tp)) * libm::sin(l_b * tp) * libm::cos(l_c * tp)
                    + 0.5 * libm::sin(lam * (t - tp)) * libm::cos(l_b * tp) * libm::cos(l_c * tp)
            });
            let i2 = rule.integrate(t, |tp| {
                -libm::sin(lam * (t - tp)) * libm::sin(l_b * tp) * libm::cos(l_c * tp)
                    + 0.5 * libm::cos(lam * (t - tp)) * libm::cos(l_b * tp) * libm::cos(l_c * tp)
            });
            bracket1 += i1;
            bracket2 += i2;
        }
        // prefactor iλ(ξ) with the convolution sums; the first bracket is
        // itself imaginary, making the η component real
        out.eta.coefficients_mut()[k] = Complex64::new(-lam * bracket1 * amp * amp, 0.0);
        out.v.coefficients_mut()[k] = Complex64::new(0.0, lam * bracket2 * amp * amp);
    }
    Ok(out)
}

/// Sampled minimum of the propagator combination over the hypotheses of the
/// certified bound: `(t, t′)` pairs from `t_grid` with `t′ ≤ t`, and both
/// frequency branches of the band arithmetic. Contract: `≥ 1/32`.
pub fn multiplier_lower_bound_check(
    n: f64,
    t_grid: &[f64],
    xi_samples: usize,
) -> Result<f64, ProbeError> {
    if n < 16.0 {
        return Err(ProbeError::BandCenterTooSmall { n });
    }
    assert!(xi_samples >= 2);
    let side = libm::sqrt(xi_samples as f64) as usize + 1;
    let sample = |i: usize| n - 0.5 + (i as f64 + 0.5) / side as f64;
    let mut min_value = f64::INFINITY;
    for (ti, &t) in t_grid.iter().enumerate() {
        assert!((0.0..=1.0).contains(&t), "hypotheses need t in [0,1]");
        for &tp in t_grid.iter().take(ti + 1) {
            if tp > t {
                continue;
            }
            for i in 0..side {
                let xi1 = sample(i);
                for j in 0..side {
                    // ξ−ξ₁ in the opposite band half (low branch) or the
                    // same half (high branch)
                    for &sign in &[-1.0, 1.0] {
                        let xi2 = sign * sample(j);
                        let xi = xi1 + xi2;
                        let b = combination(xi, xi1, t, tp);
                        if b < min_value {
                            min_value = b;
                        }
                    }
                }
            }
        }
    }
    if min_value < MULTIPLIER_FLOOR {
        return Err(ProbeError::CertificationFailure { n, min_value });
    }
    Ok(min_value)
}

/// The real value of
/// `L̂₂(ξ,t−t′)L̂₂(ξ₁,t′)L̂₁(ξ−ξ₁,t′) + ½L̂₁(ξ,t−t′)L̂₁(ξ₁,t′)L̂₁(ξ−ξ₁,t′)`.
pub fn combination(xi: f64, xi1: f64, t: f64, tp: f64) -> f64 {
    let la = lambda_symbol(xi);
    let lb = lambda_symbol(xi1);
    let lc = lambda_symbol(xi - xi1);
    -libm::sin(la * (t - tp)) * libm::sin(lb * tp) * libm::cos(lc * tp)
        + 0.5 * libm::cos(la * (t - tp)) * libm::cos(lb * tp) * libm::cos(lc * tp)
}

/// `X^{s'}` pair norm restricted to modes with `pred(ξ)`.
pub fn restricted_pair_norm(
    u: &SpectralState,
    s_prime: f64,
    pred: impl Fn(f64) -> bool,
) -> f64 {
    let grid = u.grid();
    let l = grid.domain_length();
    let mut eta = 0.0;
    let mut v = 0.0;
    for (i, &xi) in grid.frequencies().iter().enumerate() {
        if pred(xi) {
            let w = libm::pow(1.0 + xi * xi, s_prime);
            eta += w * u.eta.coefficients()[i].norm_sqr();
            v += w * u.v.coefficients()[i].norm_sqr();
        }
    }
    libm::sqrt(l * eta) + libm::sqrt(l * v)
}

/// Largest coefficient outside `|ξ| ≤ 1 ∪ [2N−1, 2N+1]`, relative to the
/// spectral peak.
pub fn support_leak(a2: &SpectralState, n: f64) -> f64 {
    let grid = a2.grid();
    let peak = a2.eta.max_abs().max(a2.v.max_abs()).max(1e-300);
    let mut leak = 0.0f64;
    for (i, &xi) in grid.frequencies().iter().enumerate() {
        let a = xi.abs();
        let allowed = a <= 1.0 || (a >= 2.0 * n - 1.0 && a <= 2.0 * n + 1.0);
        if !allowed {
            leak = leak
                .max(a2.eta.coefficients()[i].norm())
                .max(a2.v.coefficients()[i].norm());
        }
    }
    leak / peak
}

/// Evaluate one band center: certify the multiplier floor, build the
/// datum, evaluate `A₂` over the time grid, record norms and the support
/// pattern. Pure; sweeps may distribute these calls freely.
pub fn probe_entry(grid: &Arc<Grid>, n: f64, cfg: &ProbeConfig) -> Result<ProbeEntry, ProbeError> {
    assert!(cfg.t_eval > 0.0 && cfg.t_eval <= 1.0);
    let t_check: Vec<f64> = (0..8).map(|i| cfg.t_eval * i as f64 / 7.0).collect();
    let multiplier_min = multiplier_lower_bound_check(n, &t_check, cfg.xi_samples)?;
    let data = build_data(n, cfg.s, grid)?;
    let data_spec = analyze(&data);
    let data_norm_s = crate::norms::pair_norm_spectral(&data_spec, cfg.s);

    let terms = series_terms(
        &data_spec,
        cfg.t_eval,
        2,
        cfg.t_grid_points,
        1.0,
        Dealias::Off,
    );
    let a2_nodes = &terms.terms[1];
    let low =
        |state: &SpectralState| restricted_pair_norm(state, cfg.s_prime, |xi| xi.abs() <= 1.0);
    let low_freq_a2_norm = a2_nodes.iter().map(low).fold(0.0f64, f64::max);
    let endpoint = a2_nodes.last().expect("nonempty lattice");
    let low_freq_a2_at_t_eval = low(endpoint);
    let full_a2_norm = crate::norms::pair_norm_spectral(endpoint, cfg.s_prime);
    Ok(ProbeEntry {
        n,
        data_norm_s,
        low_freq_a2_norm,
        low_freq_a2_at_t_eval,
        full_a2_norm,
        multiplier_min,
        support_leak: support_leak(endpoint, n),
    })
}

/// Fit the explosion slope and assemble the report from per-`N` entries.
pub fn assemble_probe_report(cfg: &ProbeConfig, entries: Vec<ProbeEntry>) -> ProbeReport {
    let certified = entries.iter().all(|e| e.multiplier_min >= MULTIPLIER_FLOOR);
    let ns: Vec<f64> = entries.iter().map(|e| e.n).collect();
    let lows: Vec<f64> = entries.iter().map(|e| e.low_freq_a2_norm).collect();
    let (fitted_slope, fit_residual) = fit_loglog(&ns, &lows);
    ProbeReport {
        s: cfg.s,
        s_prime: cfg.s_prime,
        t_eval: cfg.t_eval,
        entries,
        fitted_slope,
        fit_residual,
        certified,
    }
}

/// Run the full sweep serially; the parallel front end maps [`probe_entry`]
/// over the band centers and assembles the identical report.
pub fn norm_explosion_sweep(
    grid: &Arc<Grid>,
    cfg: &ProbeConfig,
) -> Result<ProbeReport, ProbeError> {
    assert!(cfg.n_values.len() >= 2, "a sweep needs several band centers");
    if cfg.s > 0.0 {
        return Err(ProbeError::BadDataIndex { s: cfg.s });
    }
    let mut entries = Vec::with_capacity(cfg.n_values.len());
    for &n in &cfg.n_values {
        entries.push(probe_entry(grid, n, cfg)?);
    }
    Ok(assemble_probe_report(cfg, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{pair_norm, pair_norm_spectral};
    use crate::picard::series_terms;

    fn probe_grid() -> Arc<Grid> {
        // 8 modes per unit frequency, Nyquist at 256: resolves bands around
        // N = 64 and their quadratic image
        Grid::new(8192, 16.0 * core::f64::consts::PI).unwrap()
    }

    #[test]
    fn datum_matches_the_construction() {
        let g = probe_grid();
        let n = 64.0;
        let s = -0.5;
        let u0 = build_data(n, s, &g).unwrap();
        assert_eq!(u0.eta.max_abs(), 0.0, "no surface component");
        let spec = analyze(&u0);
        let amp = libm::pow(n, -s);
        for (i, &xi) in g.frequencies().iter().enumerate() {
            let c = spec.v.coefficients()[i];
            if xi.abs() >= n - 0.5 && xi.abs() <= n + 0.5 {
                assert!((c - Complex64::new(amp, 0.0)).norm() < 1e-9 * amp);
            } else {
                assert!(c.norm() < 1e-9 * amp, "slot {i} should be empty");
            }
        }
    }

    #[test]
    fn datum_norm_is_n_independent_and_homogeneous() {
        let g = Grid::new(16384, 16.0 * core::f64::consts::PI).unwrap();
        let s = -0.5;
        let mut norms = Vec::new();
        for &n in &[32.0, 64.0, 96.0] {
            let u0 = build_data(n, s, &g).unwrap();
            norms.push(pair_norm(&u0, s));
        }
        let hi = norms.iter().fold(0.0f64, |m, &x| m.max(x));
        let lo = norms.iter().fold(f64::INFINITY, |m, &x| m.min(x));
        assert!(hi / lo < 2.0, "data norms drift: {norms:?}");
        // doubling the coefficients doubles every norm
        let u0 = build_data(64.0, s, &g).unwrap();
        let doubled = u0.scale(2.0);
        assert!((pair_norm(&doubled, s) - 2.0 * pair_norm(&u0, s)).abs() < 1e-9);
    }

    #[test]
    fn unresolved_bands_are_rejected() {
        let g = probe_grid();
        // band whose quadratic image 2N+1 exceeds the grid's Nyquist
        assert!(matches!(
            build_data(300.0, -0.5, &g),
            Err(ProbeError::BandUnresolved { .. })
        ));
        assert!(matches!(
            build_data(8.0, -0.5, &g),
            Err(ProbeError::BandCenterTooSmall { .. })
        ));
        // short domain: too few modes per unit frequency
        let coarse = Grid::new(1024, 8.0).unwrap();
        assert!(matches!(
            build_data(32.0, -0.5, &coarse),
            Err(ProbeError::BandUnresolved { .. })
        ));
    }

    #[test]
    fn second_iterate_agrees_with_series_and_scales_quadratically() {
        let g = probe_grid();
        let u0 = build_data(64.0, -0.25, &g).unwrap();
        let t = 0.9;
        let rule = QuadratureRule::gauss_legendre(16);
        let direct = second_iterate(&u0, t, &rule).unwrap();
        let terms = series_terms(&analyze(&u0), t, 2, 17, 1.0, Dealias::Off);
        let a2 = terms.terms[1].last().unwrap();
        let diff = pair_norm_spectral(&analyze(&direct).sub(a2), 0.0);
        let scale = pair_norm_spectral(a2, 0.0);
        assert!(diff <= 1e-12 * scale, "relative {}", diff / scale);

        // homogeneity: c·u₀ gives c²·A₂
        let half = second_iterate(&u0.scale(0.5), t, &rule).unwrap();
        let expect = direct.scale(0.25);
        let d = pair_norm(&half.sub(&expect), 0.0);
        assert!(d <= 1e-11 * pair_norm(&expect, 0.0).max(1e-300));
    }

    #[test]
    fn second_iterate_matches_reduced_direct_evaluation() {
        let g = probe_grid();
        let n = 64.0;
        let s = -0.5;
        let u0 = build_data(n, s, &g).unwrap();
        let t = 1.0;
        let rule = QuadratureRule::gauss_legendre(16);
        let fftpath = analyze(&second_iterate(&u0, t, &rule).unwrap());
        let reduced = reduced_a2_low_frequency(n, s, &g, t, &rule).unwrap();
        let mut worst = 0.0f64;
        let mut peak = 0.0f64;
        for (i, &xi) in g.frequencies().iter().enumerate() {
            if xi.abs() <= 1.0 && i != g.nyquist_index() {
                let de = (fftpath.eta.coefficients()[i] - reduced.eta.coefficients()[i]).norm();
                let dv = (fftpath.v.coefficients()[i] - reduced.v.coefficients()[i]).norm();
                worst = worst.max(de).max(dv);
                peak = peak
                    .max(reduced.eta.coefficients()[i].norm())
                    .max(reduced.v.coefficients()[i].norm());
            }
        }
        assert!(peak > 0.0, "low-frequency content must be present");
        assert!(worst <= 1e-11 * peak, "relative mismatch {}", worst / peak);
    }

    #[test]
    fn low_frequency_interaction_is_present() {
        let g = probe_grid();
        let u0 = build_data(64.0, -0.5, &g).unwrap();
        let rule = QuadratureRule::gauss_legendre(12);
        let a2 = analyze(&second_iterate(&u0, 1.0, &rule).unwrap());
        let low = restricted_pair_norm(&a2, 0.0, |xi| xi.abs() <= 1.0);
        assert!(low > 1.0, "expected an order-one low-frequency output, got {low}");
        // and the η component specifically is populated at |ξ| ≤ 1
        let eta_low = g
            .frequencies()
            .iter()
            .enumerate()
            .filter(|&(_, &xi)| xi.abs() <= 1.0)
            .map(|(i, _)| a2.eta.coefficients()[i].norm())
            .fold(0.0f64, f64::max);
        assert!(eta_low > 0.0);
    }

    #[test]
    fn surface_band_data_is_suppressed_by_a_factor_n() {
        // with the band mass in η instead of v, every surviving product
        // carries a sine factor of size ≤ 1/(N−1/2) at a band argument, so
        // the low-frequency output loses a full factor of N — the reason
        // the probe datum puts its mass in the velocity
        let g = probe_grid();
        let n = 64.0;
        let rule = QuadratureRule::gauss_legendre(12);
        let v_data = build_data(n, -0.5, &g).unwrap();
        let eta_data = WaveState::new(v_data.v.clone(), v_data.eta.clone());
        let low = |u: &WaveState| {
            let a2 = analyze(&second_iterate(u, 1.0, &rule).unwrap());
            restricted_pair_norm(&a2, 0.0, |xi| xi.abs() <= 1.0)
        };
        let strong = low(&v_data);
        let weak = low(&eta_data);
        assert!(
            strong > (n / 4.0) * weak,
            "velocity data {strong} vs surface data {weak}: expected ~N x suppression"
        );
    }

    #[test]
    fn a2_support_is_the_band_arithmetic() {
        let g = probe_grid();
        let n = 64.0;
        let u0 = build_data(n, -0.5, &g).unwrap();
        let rule = QuadratureRule::gauss_legendre(12);
        let a2 = analyze(&second_iterate(&u0, 1.0, &rule).unwrap());
        assert!(support_leak(&a2, n) <= 1e-12);
        // the high band is genuinely populated too
        let high = restricted_pair_norm(&a2, 0.0, |xi| {
            xi.abs() >= 2.0 * n - 1.0 && xi.abs() <= 2.0 * n + 1.0
        });
        assert!(high > 0.0);
    }

    #[test]
    fn multiplier_certificate_holds_and_brackets_are_tight() {
        let t_grid: Vec<f64> = (0..16).map(|i| i as f64 / 15.0).collect();
        for &n in &[16.0, 64.0, 256.0] {
            let min = multiplier_lower_bound_check(n, &t_grid, 1024).unwrap();
            assert!(min >= MULTIPLIER_FLOOR, "N={n}: {min}");
            // the measured minimum sits near cos(1/2)/2, far above the floor
            assert!(min > 0.4, "N={n}: {min}");
        }
        // t = t' = 0 gives exactly 1/2
        assert!((combination(1.0, 64.0, 0.0, 0.0) - 0.5).abs() < 1e-15);
        // intermediate bounds on the band: |L̂₂(ξ₁,t')| ≤ 1/(N−1/2) and
        // L̂₁(ξ₁,t') ≥ 1/2 for 0 ≤ t' ≤ 1
        let n = 64.0;
        for i in 0..64 {
            let xi1 = n - 0.5 + i as f64 / 63.0;
            for &tp in &[0.0, 0.3, 1.0] {
                let l2 = libm::sin(lambda_symbol(xi1) * tp).abs();
                let l1 = libm::cos(lambda_symbol(xi1) * tp);
                assert!(l2 <= 1.0 / (n - 0.5) + 1e-15);
                assert!(l1 >= 0.5);
            }
        }
        assert!(matches!(
            multiplier_lower_bound_check(8.0, &t_grid, 64),
            Err(ProbeError::BandCenterTooSmall { .. })
        ));
    }

    #[test]
    fn sweep_slopes_match_the_band_model() {
        // modest grid: N ∈ {32, 64} around an 8-mode/unit discretization
        let g = Grid::new(16384, 16.0 * core::f64::consts::PI).unwrap();
        let cfg = ProbeConfig {
            n_values: alloc::vec![32.0, 48.0, 64.0],
            s: -0.5,
            s_prime: 0.0,
            xi_samples: 256,
            ..ProbeConfig::default()
        };
        let report = norm_explosion_sweep(&g, &cfg).unwrap();
        assert!(report.certified);
        // the sharp rate is N^{−2s} = N^{+1}; the certified bound only
        // guarantees at least N^{−s} = N^{+1/2}
        assert!(
            (report.fitted_slope - 1.0).abs() < 0.1,
            "slope {}",
            report.fitted_slope
        );
        assert!(report.fitted_slope >= 0.5 - 0.05);
        // data norms stay put
        let hi = report.entries.iter().map(|e| e.data_norm_s).fold(0.0f64, f64::max);
        let lo = report
            .entries
            .iter()
            .map(|e| e.data_norm_s)
            .fold(f64::INFINITY, f64::min);
        assert!(hi / lo < 2.0);

        // s = 0 control: bounded low-frequency output
        let control = norm_explosion_sweep(
            &g,
            &ProbeConfig {
                s: 0.0,
                ..cfg.clone()
            },
        )
        .unwrap();
        assert!(
            control.fitted_slope.abs() < 0.1,
            "control slope {}",
            control.fitted_slope
        );
        // positive s is rejected
        assert!(matches!(
            norm_explosion_sweep(
                &g,
                &ProbeConfig {
                    s: 0.25,
                    ..cfg.clone()
                }
            ),
            Err(ProbeError::BadDataIndex { .. })
        ));
    }
}
