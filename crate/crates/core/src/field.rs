//! Field containers: the pair `(η, v)` in physical and frequency
//! representation, plus the elementwise arithmetic the solvers need.

use crate::grid::Grid;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Real-valued samples of a single field on a [`Grid`].
#[derive(Debug, Clone)]
pub struct RealField {
    grid: Arc<Grid>,
    samples: Vec<f64>,
}

/// Frequency-space coefficients of a single field, transform layout.
///
/// When the field represents a real function the coefficients are
/// conjugate-symmetric: `c(−ξ) = conj(c(ξ))`.
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Arc<Grid>,
    coefficients: Vec<Complex64>,
}

/// The wave pair `(η, v)` in physical space: `η` is the surface deviation,
/// `v` the horizontal velocity.
#[derive(Debug, Clone)]
pub struct WaveState {
    pub eta: RealField,
    pub v: RealField,
}

/// The wave pair in frequency space.
#[derive(Debug, Clone)]
pub struct SpectralState {
    pub eta: SpectralField,
    pub v: SpectralField,
}

impl RealField {
    pub fn zero(grid: &Arc<Grid>) -> Self {
        RealField {
            grid: grid.clone(),
            samples: vec![0.0; grid.num_points()],
        }
    }

    pub fn from_samples(grid: &Arc<Grid>, samples: Vec<f64>) -> Self {
        assert_eq!(samples.len(), grid.num_points());
        RealField {
            grid: grid.clone(),
            samples,
        }
    }

    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(f64) -> f64) -> Self {
        let samples = (0..grid.num_points()).map(|j| f(grid.point(j))).collect();
        RealField {
            grid: grid.clone(),
            samples,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn scale(&self, c: f64) -> Self {
        RealField {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|s| c * s).collect(),
        }
    }

    pub fn add(&self, other: &RealField) -> Self {
        assert!(self.grid.compatible(&other.grid));
        RealField {
            grid: self.grid.clone(),
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RealField) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Pointwise product of two fields.
    pub fn mul(&self, other: &RealField) -> Self {
        assert!(self.grid.compatible(&other.grid));
        RealField {
            grid: self.grid.clone(),
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, s| m.max(s.abs()))
    }

    pub fn min(&self) -> f64 {
        self.samples.iter().fold(f64::INFINITY, |m, &s| m.min(s))
    }
}

impl SpectralField {
    pub fn zero(grid: &Arc<Grid>) -> Self {
        SpectralField {
            grid: grid.clone(),
            coefficients: vec![Complex64::new(0.0, 0.0); grid.num_points()],
        }
    }

    pub fn from_coefficients(grid: &Arc<Grid>, coefficients: Vec<Complex64>) -> Self {
        assert_eq!(coefficients.len(), grid.num_points());
        SpectralField {
            grid: grid.clone(),
            coefficients,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex64] {
        &mut self.coefficients
    }

    pub fn scale(&self, c: f64) -> Self {
        SpectralField {
            grid: self.grid.clone(),
            coefficients: self.coefficients.iter().map(|z| c * z).collect(),
        }
    }

    pub fn add(&self, other: &SpectralField) -> Self {
        assert!(self.grid.compatible(&other.grid));
        SpectralField {
            grid: self.grid.clone(),
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SpectralField) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// Largest deviation from conjugate symmetry, including the imaginary
    /// part of the self-paired zero and Nyquist modes.
    pub fn conjugate_asymmetry(&self) -> f64 {
        let n = self.grid.num_points();
        let c = &self.coefficients;
        let mut worst = c[0].im.abs().max(c[n / 2].im.abs());
        for i in 1..n / 2 {
            let d = c[i] - c[n - i].conj();
            worst = worst.max(d.norm());
        }
        worst
    }
}

impl WaveState {
    pub fn zero(grid: &Arc<Grid>) -> Self {
        WaveState {
            eta: RealField::zero(grid),
            v: RealField::zero(grid),
        }
    }

    pub fn new(eta: RealField, v: RealField) -> Self {
        assert!(
            eta.grid().compatible(v.grid()),
            "state components must share one grid"
        );
        WaveState { eta, v }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.eta.grid()
    }

    pub fn scale(&self, c: f64) -> Self {
        WaveState {
            eta: self.eta.scale(c),
            v: self.v.scale(c),
        }
    }

    pub fn add(&self, other: &WaveState) -> Self {
        WaveState {
            eta: self.eta.add(&other.eta),
            v: self.v.add(&other.v),
        }
    }

    pub fn sub(&self, other: &WaveState) -> Self {
        WaveState {
            eta: self.eta.sub(&other.eta),
            v: self.v.sub(&other.v),
        }
    }
}

impl SpectralState {
    pub fn zero(grid: &Arc<Grid>) -> Self {
        SpectralState {
            eta: SpectralField::zero(grid),
            v: SpectralField::zero(grid),
        }
    }

    pub fn new(eta: SpectralField, v: SpectralField) -> Self {
        assert!(
            eta.grid().compatible(v.grid()),
            "state components must share one grid"
        );
        SpectralState { eta, v }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.eta.grid()
    }

    pub fn scale(&self, c: f64) -> Self {
        SpectralState {
            eta: self.eta.scale(c),
            v: self.v.scale(c),
        }
    }

    pub fn add(&self, other: &SpectralState) -> Self {
        SpectralState {
            eta: self.eta.add(&other.eta),
            v: self.v.add(&other.v),
        }
    }

    pub fn sub(&self, other: &SpectralState) -> Self {
        SpectralState {
            eta: self.eta.sub(&other.eta),
            v: self.v.sub(&other.v),
        }
    }

    /// In-place `self += c * other`.
    pub fn axpy(&mut self, c: f64, other: &SpectralState) {
        for (a, b) in self
            .eta
            .coefficients_mut()
            .iter_mut()
            .zip(other.eta.coefficients())
        {
            *a += c * b;
        }
        for (a, b) in self
            .v
            .coefficients_mut()
            .iter_mut()
            .zip(other.v.coefficients())
        {
            *a += c * b;
        }
    }
}
