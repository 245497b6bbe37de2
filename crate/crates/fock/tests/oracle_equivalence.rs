//! Cross-validation of the Gaussian pipeline against number-basis brute
//! force on two-mode squeezed vacua.

use gaussian_dce::measures::{gaussian_coherence, gaussian_discord, log_negativity};
use gaussian_dce::symplectic::{thermal_entropy, von_neumann_entropy, CovarianceMatrix};
use gaussian_dce_fock as fock;
use nalgebra::DMatrix;

const SQUEEZINGS: [f64; 4] = [0.02, 0.05, 0.1, 0.15];
const CUTOFF: usize = 25;

fn marginal_cm(cm: &CovarianceMatrix, mode: usize) -> CovarianceMatrix {
    let k = 2 * mode;
    let mut m = DMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = cm.entry(k + i, k + j);
        }
    }
    CovarianceMatrix::new(m).unwrap()
}

#[test]
fn negativity_matches_fock_trace_norm() {
    for r in SQUEEZINGS {
        let cm = fock::cm_of_tmsv(r).unwrap();
        let gaussian = log_negativity(&cm).unwrap();
        let rho = fock::tmsv_state(r, CUTOFF).unwrap();
        let brute = fock::fock_log_negativity(&rho, 1).unwrap();
        assert!(
            (gaussian - brute).abs() < 1e-5,
            "r = {r}: gaussian {gaussian} vs fock {brute}"
        );
        assert!(
            (gaussian - 2.0 * r).abs() < 1e-5,
            "r = {r}: gaussian {gaussian} vs closed form {}",
            2.0 * r
        );
    }
}

#[test]
fn marginal_entropies_match_fock() {
    for r in SQUEEZINGS {
        let cm = fock::cm_of_tmsv(r).unwrap();
        let rho = fock::tmsv_state(r, CUTOFF).unwrap();
        for mode in 0..2 {
            let gaussian = von_neumann_entropy(&marginal_cm(&cm, mode)).unwrap();
            let brute = fock::marginal_entropy(&rho, mode).unwrap();
            assert!(
                (gaussian - brute).abs() < 1e-5,
                "r = {r}, mode {mode}: gaussian {gaussian} vs fock {brute}"
            );
        }
    }
}

#[test]
fn coherence_matches_fock_relative_entropy() {
    for r in SQUEEZINGS {
        let cm = fock::cm_of_tmsv(r).unwrap();
        let gaussian = gaussian_coherence(&cm).unwrap();
        let rho = fock::tmsv_state(r, CUTOFF).unwrap();
        let nbar = fock::marginal_occupation(&rho, 0).unwrap();
        let reference = fock::thermal_product_state(nbar, nbar, CUTOFF).unwrap();
        let brute = fock::relative_entropy(&rho, &reference).unwrap();
        assert!(
            (gaussian - brute).abs() < 1e-4,
            "r = {r}: gaussian {gaussian} vs fock {brute}"
        );
    }
}

#[test]
fn discord_matches_pure_state_closed_form() {
    for r in SQUEEZINGS {
        let cm = fock::cm_of_tmsv(r).unwrap();
        let gaussian = gaussian_discord(&cm).unwrap();
        let expect = thermal_entropy(r.sinh().powi(2));
        assert!(
            (gaussian - expect).abs() < 1e-6,
            "r = {r}: discord {gaussian} vs g(sinh^2 r) = {expect}"
        );
    }
}
