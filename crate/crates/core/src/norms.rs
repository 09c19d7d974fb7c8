//! Discrete norms: Lebesgue norms by Riemann sum, Sobolev norms by weighted
//! spectral sums, and the product-space norms of the wave pair.
//!
//! Normalization follows the convention in [`crate::spectral`]: the `s = 0`
//! Sobolev norm coincides with `Lp::Two` (Parseval), which is the continuum
//! `L²` norm of the periodized function.

use crate::field::{RealField, SpectralField, SpectralState, WaveState};
use crate::spectral::forward_transform;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lp {
    One,
    Two,
    Inf,
}

pub fn lp_norm(f: &RealField, p: Lp) -> f64 {
    let dx = f.grid().spacing();
    match p {
        Lp::One => dx * f.samples().iter().map(|s| s.abs()).sum::<f64>(),
        Lp::Two => libm::sqrt(dx * f.samples().iter().map(|s| s * s).sum::<f64>()),
        Lp::Inf => f.max_abs(),
    }
}

/// Japanese bracket weight `⟨ξ⟩^{2s} = (1+ξ²)^s`.
fn bracket_pow(xi: f64, s: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else {
        libm::pow(1.0 + xi * xi, s)
    }
}

/// `H^s` norm from spectral coefficients; any real `s`, negative included.
pub fn sobolev_norm_spectral(field: &SpectralField, s: f64) -> f64 {
    let grid = field.grid();
    let sum: f64 = field
        .coefficients()
        .iter()
        .zip(grid.frequencies())
        .map(|(c, &xi)| bracket_pow(xi, s) * c.norm_sqr())
        .sum();
    libm::sqrt(grid.domain_length() * sum)
}

/// `H^s` norm of a physical-space field.
pub fn sobolev_norm(f: &RealField, s: f64) -> f64 {
    sobolev_norm_spectral(&forward_transform(f), s)
}

/// Product-space norm `‖u‖_s = ‖η‖_s + ‖v‖_s` (a sum, not a root sum of
/// squares).
pub fn pair_norm(u: &WaveState, s: f64) -> f64 {
    sobolev_norm(&u.eta, s) + sobolev_norm(&u.v, s)
}

/// Hilbertian product-space norm `(‖η‖_s² + ‖v‖_s²)^{1/2}`.
///
/// This is the norm the linear propagator preserves exactly: its symbol is a
/// per-frequency unitary rotation, so `|η̂(ξ)|² + |v̂(ξ)|²` is conserved
/// weight-by-weight. The sum norm [`pair_norm`] is equivalent to it within a
/// factor `√2` but is not itself invariant.
pub fn pair_norm_l2(u: &WaveState, s: f64) -> f64 {
    let a = sobolev_norm(&u.eta, s);
    let b = sobolev_norm(&u.v, s);
    libm::sqrt(a * a + b * b)
}

pub fn pair_norm_spectral(u: &SpectralState, s: f64) -> f64 {
    sobolev_norm_spectral(&u.eta, s) + sobolev_norm_spectral(&u.v, s)
}

pub fn pair_norm_l2_spectral(u: &SpectralState, s: f64) -> f64 {
    let a = sobolev_norm_spectral(&u.eta, s);
    let b = sobolev_norm_spectral(&u.v, s);
    libm::sqrt(a * a + b * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::testutil::random_real_field;
    use core::f64::consts::PI;

    #[test]
    fn zero_field_has_zero_norms() {
        let g = Grid::new(64, 32.0).unwrap();
        let z = RealField::zero(&g);
        for p in [Lp::One, Lp::Two, Lp::Inf] {
            assert_eq!(lp_norm(&z, p), 0.0);
        }
        for s in [-1.0, 0.0, 2.0] {
            assert_eq!(sobolev_norm(&z, s), 0.0);
        }
        let u = WaveState::zero(&g);
        assert_eq!(pair_norm(&u, 0.5), 0.0);
    }

    #[test]
    fn constant_field_lp_values() {
        let l = 10.0;
        let g = Grid::new(64, l).unwrap();
        let one = RealField::from_fn(&g, |_| 1.0);
        assert!((lp_norm(&one, Lp::One) - l).abs() < 1e-12);
        assert!((lp_norm(&one, Lp::Two) - libm::sqrt(l)).abs() < 1e-12);
        assert_eq!(lp_norm(&one, Lp::Inf), 1.0);
    }

    #[test]
    fn gaussian_l1_matches_sqrt_pi() {
        // ∫ exp(−x²) dx = √π; the domain is wide enough that the periodic
        // tail is below quadrature precision.
        let l = 64.0;
        let g = Grid::new(2048, l).unwrap();
        let f = RealField::from_fn(&g, |x| libm::exp(-(x - l / 2.0) * (x - l / 2.0)));
        assert!((lp_norm(&f, Lp::One) - libm::sqrt(PI)).abs() < 1e-8);
    }

    #[test]
    fn s0_norm_is_scaled_sample_l2() {
        let g = Grid::new(256, 100.0).unwrap();
        let f = random_real_field(&g, 5, 2.0);
        let dx = g.spacing();
        let direct = libm::sqrt(dx * f.samples().iter().map(|s| s * s).sum::<f64>());
        assert!((sobolev_norm(&f, 0.0) - direct).abs() <= 1e-12 * direct.max(1.0));
    }

    #[test]
    fn unit_single_mode_weighs_in_at_bracket_k() {
        // A single mode with unit L² norm has H^s norm ⟨ξ_k⟩^s.
        let l = 2.0 * PI;
        let g = Grid::new(64, l).unwrap();
        for k in [1.0f64, 3.0, 7.0] {
            let amp = libm::sqrt(2.0 / l);
            let f = RealField::from_fn(&g, |x| amp * libm::cos(k * x));
            assert!((lp_norm(&f, Lp::Two) - 1.0).abs() < 1e-12);
            let s1 = sobolev_norm(&f, 1.0);
            assert!((s1 - libm::sqrt(1.0 + k * k)).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn pair_norm_is_componentwise_sum() {
        let g = Grid::new(256, 64.0).unwrap();
        let f = random_real_field(&g, 9, 2.0);
        let u = WaveState::new(f.clone(), f.clone());
        let single = sobolev_norm(&f, 1.0);
        assert!((pair_norm(&u, 1.0) - 2.0 * single).abs() < 1e-12 * single);

        let gsn = random_real_field(&g, 10, 2.0);
        let w = WaveState::new(f.clone(), gsn.clone());
        let sum = sobolev_norm(&f, 0.5) + sobolev_norm(&gsn, 0.5);
        assert!((pair_norm(&w, 0.5) - sum).abs() < 1e-12 * sum);
    }

    #[test]
    fn norm_is_monotone_in_s() {
        let g = Grid::new(512, 128.0).unwrap();
        let f = random_real_field(&g, 77, 2.0);
        let hat = crate::spectral::forward_transform(&f);
        let mut prev = 0.0f64;
        for i in 0..=12 {
            let s = -3.0 + 0.5 * i as f64;
            let v = sobolev_norm_spectral(&hat, s);
            if i > 0 {
                assert!(v >= prev - 1e-13 * prev.abs(), "s={s}");
            }
            prev = v;
        }
    }
}
