//! Truncated periodic spatial grid and its discrete frequency set.

use crate::fft::FftPlan;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

/// Uniform periodic grid on `[0, L)` with `n` samples and the discrete
/// frequencies `ξ_k = 2πk/L`.
///
/// Frequencies are stored in transform layout: indices `0..n/2` carry
/// `k = 0, 1, …, n/2 − 1` and indices `n/2..n` carry `k = −n/2, …, −1`, so
/// they come in `±` pairs plus the zero mode and the unpaired mode at
/// `k = −n/2` (the Nyquist mode).
pub struct Grid {
    num_points: usize,
    domain_length: f64,
    spacing: f64,
    frequencies: Vec<f64>,
    plan: FftPlan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridError {
    /// `num_points` must be an even integer at least 16.
    BadPointCount { num_points: usize },
    /// `domain_length` must be a positive finite real.
    BadLength,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::BadPointCount { num_points } => write!(
                f,
                "grid needs an even number of points, at least 16 (got {num_points})"
            ),
            GridError::BadLength => write!(f, "domain length must be positive and finite"),
        }
    }
}

impl Grid {
    pub fn new(num_points: usize, domain_length: f64) -> Result<Arc<Self>, GridError> {
        if num_points < 16 || num_points % 2 != 0 {
            return Err(GridError::BadPointCount { num_points });
        }
        if !(domain_length > 0.0) || !domain_length.is_finite() {
            return Err(GridError::BadLength);
        }
        let n = num_points;
        let base = 2.0 * PI / domain_length;
        let frequencies = (0..n)
            .map(|i| {
                let k = if i < n / 2 {
                    i as i64
                } else {
                    i as i64 - n as i64
                };
                base * k as f64
            })
            .collect();
        Ok(Arc::new(Grid {
            num_points,
            domain_length,
            spacing: domain_length / n as f64,
            frequencies,
            plan: FftPlan::new(n),
        }))
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn domain_length(&self) -> f64 {
        self.domain_length
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Sample locations `x_j = j·dx`.
    pub fn point(&self, j: usize) -> f64 {
        self.spacing * j as f64
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn frequency(&self, i: usize) -> f64 {
        self.frequencies[i]
    }

    /// Signed integer wavenumber of slot `i`.
    pub fn wavenumber(&self, i: usize) -> i64 {
        let n = self.num_points;
        if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    /// Slot index of the unpaired Nyquist mode `k = −n/2`.
    pub fn nyquist_index(&self) -> usize {
        self.num_points / 2
    }

    /// Slot of the conjugate partner `−k` of slot `i` (the Nyquist slot maps
    /// to itself).
    pub fn conjugate_index(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.num_points - i
        }
    }

    /// Largest integer wavenumber kept by the 2/3 dealiasing rule: the top
    /// third of modes is zeroed, so quadratic products of kept modes cannot
    /// alias back into kept slots.
    pub fn dealias_max_wavenumber(&self) -> i64 {
        ((self.num_points - 1) / 3) as i64
    }

    /// Largest resolved frequency magnitude after dealiasing.
    pub fn dealias_max_frequency(&self) -> f64 {
        2.0 * PI / self.domain_length * self.dealias_max_wavenumber() as f64
    }

    /// Nyquist frequency `π/dx`.
    pub fn max_frequency(&self) -> f64 {
        PI / self.spacing
    }

    pub(crate) fn plan(&self) -> &FftPlan {
        &self.plan
    }

    /// Two grids are compatible when they discretize the same domain the
    /// same way; fields may then be combined.
    pub fn compatible(&self, other: &Grid) -> bool {
        self.num_points == other.num_points && self.domain_length == other.domain_length
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("num_points", &self.num_points)
            .field("domain_length", &self.domain_length)
            .field("spacing", &self.spacing)
            .finish()
    }
}
