//! Pseudo-spectral laboratory for the BBM-BBM Boussinesq system
//!
//! ```text
//! η_t − η_txx + v_x + (ηv)_x = 0
//! v_t − v_txx + η_x + v v_x  = 0
//! ```
//!
//! on a truncated periodic domain, together with its `ε`-scaled long-wave
//! variant. The crate provides
//!
//! * exact application of the linear group `S(t)` as a frequency-diagonal
//!   rotation ([`propagator`]),
//! * the smoothing nonlinearity, the bilinear Duhamel operator, and
//!   empirical bilinear-constant scans ([`nonlinear`]),
//! * two cross-checking nonlinear solvers — per-step contraction fixed
//!   point and the truncated Picard series — with existence-time
//!   estimators ([`picard`]),
//! * conserved quantities, energy-identity residuals, and blow-up
//!   monitors ([`diagnostics`]),
//! * the high-to-low frequency norm-explosion probe that witnesses
//!   ill-posedness below `L² × L²` ([`illposedness`]),
//! * oscillatory-integral machinery for the linear `L¹ → L^∞` decay bound
//!   with exponent `1/8` ([`decay`]).
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the command
//! line live in the companion `bbm-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cheb;
pub mod decay;
pub mod diagnostics;
pub mod fft;
pub mod field;
pub mod fitting;
pub mod grid;
pub mod illposedness;
pub mod nonlinear;
pub mod norms;
pub mod picard;
pub mod propagator;
pub mod quadrature;
pub mod rng;
pub mod spectral;

pub use field::{RealField, SpectralField, SpectralState, WaveState};
pub use grid::Grid;
