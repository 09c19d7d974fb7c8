//! Transforms between physical and frequency space, Fourier multipliers, and
//! the dispersion symbol.
//!
//! # Transform convention
//!
//! This is the one place the convention is fixed; everything else in the
//! crate derives from it. A real field `u` on the periodic grid is expanded
//! as
//!
//! ```text
//! u(x_j) = Σ_k  û(ξ_k) e^{−i ξ_k x_j},      û(ξ_k) = (1/n) Σ_j u(x_j) e^{+i ξ_k x_j},
//! ```
//!
//! so the constant field `1` has `û(0) = 1` and `cos(2πx/L)` has the two
//! coefficients `1/2` at `ξ = ±2π/L`. Under this convention
//!
//! * differentiation `∂x` is the multiplier `−iξ`,
//! * the operator `(1 − ε ∂x²)^{−1} ∂x` is the multiplier `−iξ/(1+εξ²)`,
//! * the linear propagator has the matrix symbol
//!   `[[cos(λ_ε t), i sin(λ_ε t)], [i sin(λ_ε t), cos(λ_ε t)]]` with
//!   `λ_ε(ξ) = ξ/(1+εξ²)`,
//!
//! and discrete Parseval reads `dx Σ_j u_j² = L Σ_k |û_k|²`.

use crate::field::{RealField, SpectralField};
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

/// Tolerance above which a spectral field is rejected as not representing a
/// real function (relative to its largest coefficient).
pub const CONJUGATE_SYMMETRY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum TransformError {
    /// Input coefficients are not conjugate-symmetric; an upstream multiplier
    /// has broken realness.
    ConjugateAsymmetry { relative: f64 },
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::ConjugateAsymmetry { relative } => write!(
                f,
                "coefficients are not conjugate-symmetric (relative asymmetry {relative:.3e}); \
                 the field does not represent a real function"
            ),
        }
    }
}

/// Discrete forward transform of a real field.
pub fn forward_transform(f: &RealField) -> SpectralField {
    let grid = f.grid().clone();
    let n = grid.num_points();
    let mut buf: Vec<Complex64> = f
        .samples()
        .iter()
        .map(|&s| Complex64::new(s, 0.0))
        .collect();
    // backward = kernel e^{+2πi jk/n}; normalize by 1/n.
    grid.plan().backward(&mut buf);
    let scale = 1.0 / n as f64;
    for z in buf.iter_mut() {
        *z *= scale;
    }
    SpectralField::from_coefficients(&grid, buf)
}

/// Discrete inverse transform back to real samples.
///
/// Rejects input whose conjugate asymmetry exceeds
/// [`CONJUGATE_SYMMETRY_TOL`] relative to the largest coefficient.
pub fn inverse_transform(field: &SpectralField) -> Result<RealField, TransformError> {
    let peak = field.max_abs();
    if peak > 0.0 {
        let relative = field.conjugate_asymmetry() / peak;
        if relative > CONJUGATE_SYMMETRY_TOL {
            return Err(TransformError::ConjugateAsymmetry { relative });
        }
    }
    Ok(inverse_transform_unchecked(field))
}

/// Inverse transform without the symmetry check, for internal paths that
/// preserve conjugate symmetry by construction.
pub fn inverse_transform_unchecked(field: &SpectralField) -> RealField {
    let grid = field.grid().clone();
    let mut buf: Vec<Complex64> = field.coefficients().to_vec();
    grid.plan().forward(&mut buf);
    let samples = buf.iter().map(|z| z.re).collect();
    RealField::from_samples(&grid, samples)
}

/// Forward-transform both components of a state.
pub fn analyze(u: &crate::field::WaveState) -> crate::field::SpectralState {
    crate::field::SpectralState::new(forward_transform(&u.eta), forward_transform(&u.v))
}

/// Inverse-transform both components of a symmetric spectral state.
pub fn synthesize(u: &crate::field::SpectralState) -> crate::field::WaveState {
    crate::field::WaveState::new(
        inverse_transform_unchecked(&u.eta),
        inverse_transform_unchecked(&u.v),
    )
}

/// Pointwise application of a frequency multiplier `m(ξ)`.
///
/// If `m(−ξ) = conj(m(ξ))` the result of applying `m` to a conjugate-
/// symmetric field stays conjugate-symmetric, except possibly at the
/// unpaired Nyquist mode, which is zeroed here as a matter of policy (its
/// content is below discretization error for resolved data).
pub fn apply_multiplier(
    field: &SpectralField,
    m: impl Fn(f64) -> Complex64,
) -> SpectralField {
    let grid = field.grid().clone();
    let mut coeffs: Vec<Complex64> = field
        .coefficients()
        .iter()
        .zip(grid.frequencies())
        .map(|(c, &xi)| c * m(xi))
        .collect();
    coeffs[grid.nyquist_index()] = Complex64::new(0.0, 0.0);
    SpectralField::from_coefficients(&grid, coeffs)
}

/// The dispersion phase `λ(ξ) = ξ/(1+ξ²)`: odd, bounded by `1/2`, vanishing
/// at the origin and at infinity.
pub fn lambda_symbol(xi: f64) -> f64 {
    xi / (1.0 + xi * xi)
}

/// Scaled dispersion phase `λ_ε(ξ) = ξ/(1+εξ²)`.
pub fn lambda_symbol_scaled(xi: f64, epsilon: f64) -> f64 {
    xi / (1.0 + epsilon * xi * xi)
}

/// Spectral derivative `∂x`, multiplier `−iξ`.
pub fn derivative(field: &SpectralField) -> SpectralField {
    apply_multiplier(field, |xi| Complex64::new(0.0, -xi))
}

/// Dealiasing policy for pointwise products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Dealias {
    /// Zero the top third of modes before and after products (2/3 rule).
    #[default]
    TwoThirds,
    /// Keep every mode; only safe when the product's support is resolved.
    Off,
}

/// Zero all modes above the 2/3-rule cutoff in place.
pub fn dealias_in_place(field: &mut SpectralField, policy: Dealias) {
    if policy == Dealias::Off {
        return;
    }
    let grid = field.grid().clone();
    let kmax = grid.dealias_max_wavenumber();
    for (i, c) in field.coefficients_mut().iter_mut().enumerate() {
        if grid.wavenumber(i).abs() > kmax {
            *c = Complex64::new(0.0, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::norms::{lp_norm, sobolev_norm_spectral, Lp};
    use crate::testutil::random_real_field;
    use alloc::vec;
    use core::f64::consts::PI;

    #[test]
    fn constant_field_has_unit_mean_coefficient() {
        let g = Grid::new(64, 32.0).unwrap();
        let f = RealField::from_fn(&g, |_| 1.0);
        let hat = forward_transform(&f);
        assert!((hat.coefficients()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        for c in &hat.coefficients()[1..] {
            assert!(c.norm() < 1e-14);
        }
    }

    #[test]
    fn cosine_splits_into_half_coefficients() {
        let l = 32.0;
        let g = Grid::new(64, l).unwrap();
        let f = RealField::from_fn(&g, |x| libm::cos(2.0 * PI * x / l));
        let hat = forward_transform(&f);
        let c = hat.coefficients();
        assert!((c[1] - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        assert!((c[63] - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        let mut others = 0.0f64;
        for (i, z) in c.iter().enumerate() {
            if i != 1 && i != 63 {
                others = others.max(z.norm());
            }
        }
        assert!(others < 1e-13);
        let back = inverse_transform(&hat).unwrap();
        for (a, b) in back.samples().iter().zip(f.samples()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn round_trip_many_sizes() {
        for &n in &[64usize, 96, 256, 1000, 1024, 4096, 16384, 65536] {
            let g = Grid::new(n, 256.0).unwrap();
            let f = random_real_field(&g, 0xBEEF ^ n as u64, 2.0);
            let back = inverse_transform(&forward_transform(&f)).unwrap();
            let scale = lp_norm(&f, Lp::Inf).max(1e-300);
            let mut worst = 0.0f64;
            for (a, b) in back.samples().iter().zip(f.samples()) {
                worst = worst.max((a - b).abs());
            }
            assert!(worst / scale <= 1e-12, "n={n}: relative error {worst:e}");
        }
    }

    #[test]
    fn zero_coefficients_invert_to_zero_field() {
        let g = Grid::new(32, 8.0).unwrap();
        let z = SpectralField::zero(&g);
        let f = inverse_transform(&z).unwrap();
        assert!(f.samples().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let g = Grid::new(32, 8.0).unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 32];
        coeffs[3] = Complex64::new(1.0, 0.5);
        coeffs[29] = Complex64::new(1.0, 0.5); // conj partner should be (1, -0.5)
        let f = SpectralField::from_coefficients(&g, coeffs);
        assert!(matches!(
            inverse_transform(&f),
            Err(TransformError::ConjugateAsymmetry { .. })
        ));
    }

    #[test]
    fn identity_multiplier_is_identity_off_nyquist() {
        let g = Grid::new(64, 32.0).unwrap();
        let f = random_real_field(&g, 7, 2.0);
        let hat = forward_transform(&f);
        let out = apply_multiplier(&hat, |_| Complex64::new(1.0, 0.0));
        for (i, (a, b)) in out
            .coefficients()
            .iter()
            .zip(hat.coefficients())
            .enumerate()
        {
            if i == g.nyquist_index() {
                assert_eq!(a.norm(), 0.0);
            } else {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn smoothing_multiplier_on_single_mode() {
        // m(ξ) = iξ/(1+ξ²) on mode k scales the magnitude by |ξ_k|/(1+ξ_k²)
        // and kills the zero mode.
        let l = 2.0 * PI;
        let g = Grid::new(64, l).unwrap();
        let k = 5.0;
        let f = RealField::from_fn(&g, |x| libm::cos(k * x) + 1.0);
        let hat = forward_transform(&f);
        let out = apply_multiplier(&hat, |xi| Complex64::new(0.0, 1.0) * lambda_symbol(xi));
        let c = out.coefficients();
        assert!(c[0].norm() < 1e-15, "multiplier vanishes at the origin");
        let expect = 0.5 * k / (1.0 + k * k);
        assert!((c[5].norm() - expect).abs() < 1e-13);
        assert!((c[59].norm() - expect).abs() < 1e-13);
    }

    #[test]
    fn multipliers_compose_pointwise() {
        let g = Grid::new(128, 64.0).unwrap();
        let f = random_real_field(&g, 11, 2.0);
        let hat = forward_transform(&f);
        let m1 = |xi: f64| Complex64::new(1.0 / (1.0 + xi * xi), 0.0);
        let m2 = |xi: f64| Complex64::new(0.0, -xi);
        let a = apply_multiplier(&apply_multiplier(&hat, m1), m2);
        let b = apply_multiplier(&hat, |xi| m1(xi) * m2(xi));
        let peak = b.max_abs().max(1e-300);
        let diff = a.sub(&b).max_abs();
        assert!(diff / peak <= 1e-12);
    }

    #[test]
    fn lambda_symbol_values_and_bounds() {
        assert_eq!(lambda_symbol(0.0), 0.0);
        assert!((lambda_symbol(1.0) - 0.5).abs() < 1e-16);
        // odd, globally bounded by 1/2, decaying along grid frequencies
        let g = Grid::new(4096, 256.0).unwrap();
        let mut prev = 0.5;
        for i in 1..2048 {
            let xi = g.frequency(i);
            let v = lambda_symbol(xi);
            assert!((lambda_symbol(-xi) + v).abs() < 1e-16);
            assert!(v.abs() <= 0.5 + 1e-16);
            if xi >= 1.0 {
                assert!(v <= prev + 1e-16, "decay past the maximum at ξ=1");
                prev = v;
            }
        }
        // band values for large N: 1/(2N) ≤ |λ| ≤ 1/(N−1/2) on
        // |ξ| ∈ [N−1/2, N+1/2]; the upper bound is attained at the left
        // band edge, where λ(N−1/2)·N slightly exceeds 1.
        for &nn in &[64.0f64, 128.0, 256.0] {
            for frac in 0..=10 {
                let xi = nn - 0.5 + 0.1 * frac as f64;
                let v = lambda_symbol(xi).abs();
                assert!(
                    v >= 1.0 / (2.0 * nn) && v <= 1.0 / (nn - 0.5),
                    "N={nn}, ξ={xi}"
                );
            }
            let edge = lambda_symbol(nn - 0.5).abs();
            assert!(edge > 1.0 / nn && edge < (1.0 / nn) * (1.0 + 1.0 / nn));
        }
    }

    #[test]
    fn parseval_ties_the_two_norms() {
        let g = Grid::new(512, 100.0).unwrap();
        let f = random_real_field(&g, 23, 2.0);
        let l2 = lp_norm(&f, Lp::Two);
        let s0 = sobolev_norm_spectral(&forward_transform(&f), 0.0);
        assert!((l2 - s0).abs() <= 1e-12 * l2.max(1.0));
    }
}
