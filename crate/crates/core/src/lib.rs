//! Gaussian-state toolkit for two-mode dynamical Casimir radiation.
//!
//! A SQUID-terminated superconducting waveguide driven by a fast flux
//! modulation emits correlated microwave photon pairs out of the (quasi-)
//! vacuum. For a pair of narrow modes around half the drive frequency the
//! emitted state is Gaussian, so it is fully described by a 4×4 covariance
//! matrix of the quadrature operators. This crate builds that state from
//! drive and temperature parameters and evaluates three quantumness
//! functionals on it:
//!
//! - logarithmic negativity (entanglement),
//! - Gaussian discord (quantum correlations beyond entanglement),
//! - Gaussian coherence (relative entropy to the nearest thermal product).
//!
//! # Conventions
//!
//! - Mode ordering is `(q1, p1, q2, p2)` with `q = (a + a†)/√2`,
//!   `p = i(a† − a)/√2`.
//! - Stored covariance matrices are vacuum-normalized to `½·I`, so every
//!   bona fide symplectic eigenvalue satisfies `ν ≥ ½`. Formulas that assume
//!   the `vacuum = I` normalization are evaluated at `2ν` (or on the doubled
//!   matrix) inside the measure routines; callers never convert.
//! - All entropic quantities are in nats. Conversion to bits is a display
//!   concern and lives in the CLI.
//!
//! The crate is `no_std`-compatible (`default-features = false,
//! features = ["libm"]`); everything is pure computation on small matrices.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("gaussian-dce requires either the `std` or the `libm` feature");

mod error;
pub(crate) mod math;

pub mod dce;
pub mod measures;
pub mod symplectic;
#[cfg(feature = "test-utils")]
pub mod testing;

pub use error::Error;
pub use symplectic::CovarianceMatrix;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
