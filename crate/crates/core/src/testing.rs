//! Deterministic generators for randomized invariant checks.
//!
//! Only meant for test code; enabled with the `test-utils` feature.

use alloc::vec::Vec;

use rand::Rng;

use crate::symplectic::{CovarianceMatrix, QuadratureMap};
use crate::Result;

/// A random symplectic map built from per-mode rotations, per-mode squeezers
/// and (for two modes) a two-mode squeezer. Squeezing is kept moderate so
/// spectra stay well-conditioned.
pub fn random_symplectic<R: Rng>(rng: &mut R, n_modes: usize) -> Result<QuadratureMap> {
    let mut map = QuadratureMap::identity(n_modes)?;
    for mode in 0..n_modes {
        let rot = QuadratureMap::rotation(n_modes, mode, rng.gen_range(0.0..core::f64::consts::TAU))?;
        let sq = QuadratureMap::squeezer(n_modes, mode, rng.gen_range(-0.6..0.6))?;
        map = map.then(&rot)?.then(&sq)?;
    }
    if n_modes == 2 {
        let tms = QuadratureMap::two_mode_squeezer(rng.gen_range(-0.4..0.4))?;
        map = map.then(&tms)?;
    }
    for mode in 0..n_modes {
        let rot = QuadratureMap::rotation(n_modes, mode, rng.gen_range(0.0..core::f64::consts::TAU))?;
        map = map.then(&rot)?;
    }
    Ok(map)
}

/// A random bona fide covariance matrix `S·D·S^T` with known Williamson
/// spectrum. Returns the matrix and its symplectic eigenvalues, ascending.
pub fn random_bona_fide_cm<R: Rng>(
    rng: &mut R,
    n_modes: usize,
) -> Result<(CovarianceMatrix, Vec<f64>)> {
    let mut nus: Vec<f64> = (0..n_modes)
        .map(|_| (2.0 * rng.gen_range(0.0..2.0_f64) + 1.0) / 2.0)
        .collect();
    let diag = CovarianceMatrix::thermal(
        &nus.iter().map(|nu| nu - 0.5).collect::<Vec<_>>(),
    )?;
    let map = random_symplectic(rng, n_modes)?;
    let cm = map.apply(&diag)?;
    nus.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok((cm, nus))
}
