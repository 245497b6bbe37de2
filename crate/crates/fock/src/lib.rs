//! Brute-force truncated-Fock-space validation of the Gaussian pipeline.
//!
//! Everything here works on explicit two-mode density matrices in the number
//! basis `|n1, n2⟩` (lexicographic, `n1·d + n2`), with no covariance-matrix
//! shortcuts: partial transposes are index shuffles, entropies come from full
//! Hermitian eigendecompositions, and relative entropies from matrix
//! logarithms. The states covered are two-mode squeezed vacua and thermal
//! products, which is enough to cross-check every Gaussian formula used by
//! the driven-line model on exactly representable inputs.

use gaussian_dce::symplectic::CovarianceMatrix;
use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

mod eigen;

/// Photon-number population allowed in the top retained Fock level.
pub const TAIL_TOL: f64 = 1e-8;

/// Eigenvalue floor applied before matrix logarithms.
pub const LOG_FLOOR: f64 = 1e-14;

/// Probability weight tolerated on reference-state eigenvalues at or below
/// [`LOG_FLOOR`]. Chosen two orders above [`TAIL_TOL`]: truncated tails park
/// that much weight on floored directions even for well-matched state pairs,
/// and weight at this level shifts a relative entropy by at most
/// `1e-6·|ln LOG_FLOOR| ≈ 3e-5`, below every tolerance used here.
pub const SUPPORT_TOL: f64 = 1e-6;

/// Hard cap on the per-mode cutoff (matrix dimension `cutoff²`).
pub const MAX_CUTOFF: usize = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("cutoff {cutoff} too small: truncation weight {weight:e} exceeds tolerance")]
    CutoffTooSmall { cutoff: usize, weight: f64 },

    #[error("no cutoff up to {MAX_CUTOFF} meets the tail tolerance for this state")]
    CutoffOutOfRange,

    #[error("squeezing parameter {r} outside supported range [0, 0.3]")]
    SqueezingOutOfRange { r: f64 },

    #[error("occupation number must be non-negative, got {value}")]
    NegativeOccupation { value: f64 },

    #[error("matrix is {rows}x{cols}, expected {dim}x{dim}")]
    BadDimensions { rows: usize, cols: usize, dim: usize },

    #[error("matrix is not Hermitian (max deviation {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    #[error("mode index {mode} out of range for a two-mode state")]
    ModeOutOfRange { mode: usize },

    #[error("state has weight {leaked:e} outside the reference state's support")]
    SupportViolation { leaked: f64 },
}

pub type Result<T> = std::result::Result<T, FockError>;

/// Two-mode density matrix truncated at `cutoff` photons per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    cutoff: usize,
    entries: DMatrix<Complex64>,
}

impl FockDensityMatrix {
    /// Wraps an explicit matrix, checking hermiticity and normalization.
    pub fn new(cutoff: usize, entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = cutoff * cutoff;
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(FockError::BadDimensions {
                rows: entries.nrows(),
                cols: entries.ncols(),
                dim,
            });
        }
        let mut defect = 0.0_f64;
        for i in 0..dim {
            for j in i..dim {
                let diff = entries[(i, j)] - entries[(j, i)].conj();
                defect = defect.max(diff.norm());
            }
        }
        if defect > 1e-12 {
            return Err(FockError::NotHermitian { defect });
        }
        let trace: Complex64 = entries.diagonal().iter().sum();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(FockError::BadTrace { trace: trace.re });
        }
        Ok(Self { cutoff, entries })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Matrix dimension, `cutoff²`.
    pub fn dim(&self) -> usize {
        self.cutoff * self.cutoff
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }

    /// `tr ρ²`; 1 for pure states.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Smallest eigenvalue, from a full eigendecomposition; intended for
    /// positive-semidefiniteness checks in tests.
    pub fn min_eigenvalue(&self) -> f64 {
        let (eigs, _) = hermitian_eigenvalues(&self.entries);
        eigs.iter().fold(f64::INFINITY, |m, &x| m.min(x))
    }

    /// Population of the top retained level of one mode.
    pub fn top_level_population(&self, mode: usize) -> Result<f64> {
        if mode > 1 {
            return Err(FockError::ModeOutOfRange { mode });
        }
        let d = self.cutoff;
        let mut p = 0.0;
        for k in 0..d {
            let idx = if mode == 0 {
                (d - 1) * d + k
            } else {
                k * d + (d - 1)
            };
            p += self.entries[(idx, idx)].re;
        }
        Ok(p)
    }
}

fn index(cutoff: usize, n1: usize, n2: usize) -> usize {
    n1 * cutoff + n2
}

/// Eigenvalues of a Hermitian matrix, routed through the real symmetric
/// solver. Matrices with zero imaginary part (every state built here) are
/// decomposed directly; genuinely complex ones via the real embedding
/// `H = A + iB ↦ [[A, −B], [B, A]]`, whose spectrum is that of `H` doubled.
/// Returns the eigenvalue list and the trace weight per entry (1 or ½).
fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> (Vec<f64>, f64) {
    match real_part(h) {
        Some(a) => (eigen::decompose(&a).eigenvalues, 1.0),
        None => (eigen::decompose(&embed_real(h)).eigenvalues, 0.5),
    }
}

/// Eigenvalues of `sigma` together with the weights `⟨v_j|ρ|v_j⟩` of `rho`
/// in the eigenbasis of `sigma`, with the same real-path routing and trace
/// weight convention as [`hermitian_eigenvalues`].
fn hermitian_eigen_weights(
    sigma: &DMatrix<Complex64>,
    rho: &DMatrix<Complex64>,
) -> (Vec<(f64, f64)>, f64) {
    if let (Some(s), Some(r)) = (real_part(sigma), real_part(rho)) {
        let se = eigen::decompose(&s);
        let w = se.eigenvectors.transpose() * r * &se.eigenvectors;
        let pairs = se
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(j, &mu)| (mu, w[(j, j)]))
            .collect();
        return (pairs, 1.0);
    }
    let se = eigen::decompose(&embed_real(sigma));
    let w = se.eigenvectors.transpose() * embed_real(rho) * &se.eigenvectors;
    let pairs = se
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(j, &mu)| (mu, w[(j, j)]))
        .collect();
    (pairs, 0.5)
}

fn real_part(h: &DMatrix<Complex64>) -> Option<DMatrix<f64>> {
    if h.iter().any(|z| z.im.abs() > 1e-14) {
        return None;
    }
    Some(DMatrix::from_fn(h.nrows(), h.ncols(), |i, j| h[(i, j)].re))
}

fn embed_real(h: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = h.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            m[(i, j)] = z.re;
            m[(n + i, n + j)] = z.re;
            m[(i, n + j)] = -z.im;
            m[(n + i, j)] = z.im;
        }
    }
    m
}

/// Two-mode squeezed vacuum `√(1−t²) Σ t^k |k,k⟩` with `t = tanh r`,
/// renormalized on the truncated space.
pub fn tmsv_state(r: f64, cutoff: usize) -> Result<FockDensityMatrix> {
    if !(0.0..=0.3).contains(&r) {
        return Err(FockError::SqueezingOutOfRange { r });
    }
    let t = r.tanh();
    let weight = t.powi(2 * cutoff as i32);
    if weight >= 1e-12 {
        return Err(FockError::CutoffTooSmall { cutoff, weight });
    }
    let dim = cutoff * cutoff;
    let mut psi = DMatrix::<Complex64>::zeros(dim, 1);
    for k in 0..cutoff {
        psi[(index(cutoff, k, k), 0)] = Complex64::new(t.powi(k as i32), 0.0);
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    psi /= Complex64::new(norm, 0.0);
    let rho = &psi * psi.adjoint();
    FockDensityMatrix::new(cutoff, rho)
}

fn geometric_populations(n: f64, cutoff: usize) -> Result<Vec<f64>> {
    if n < 0.0 {
        return Err(FockError::NegativeOccupation { value: n });
    }
    let p: Vec<f64> = (0..cutoff)
        .map(|k| (n / (n + 1.0)).powi(k as i32) / (n + 1.0))
        .collect();
    if p[cutoff - 1] >= TAIL_TOL {
        return Err(FockError::CutoffTooSmall {
            cutoff,
            weight: p[cutoff - 1],
        });
    }
    Ok(p)
}

/// Product of two thermal states with geometric level populations; the
/// truncated distribution is renormalized so the trace is exactly 1.
pub fn thermal_product_state(n1: f64, n2: f64, cutoff: usize) -> Result<FockDensityMatrix> {
    let p1 = geometric_populations(n1, cutoff)?;
    let p2 = geometric_populations(n2, cutoff)?;
    let total: f64 = p1.iter().sum::<f64>() * p2.iter().sum::<f64>();
    let dim = cutoff * cutoff;
    let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
    for (a, &x) in p1.iter().enumerate() {
        for (b, &y) in p2.iter().enumerate() {
            let i = index(cutoff, a, b);
            rho[(i, i)] = Complex64::new(x * y / total, 0.0);
        }
    }
    FockDensityMatrix::new(cutoff, rho)
}

/// Smallest cutoff meeting the tail tolerance for a squeezed pair state.
pub fn suggested_cutoff_tmsv(r: f64) -> Result<usize> {
    let t = r.tanh();
    for d in 2..=MAX_CUTOFF {
        let pop = t.powi(2 * (d as i32 - 1)) * (1.0 - t * t);
        if pop < TAIL_TOL && t.powi(2 * d as i32) < 1e-12 {
            return Ok(d);
        }
    }
    Err(FockError::CutoffOutOfRange)
}

/// Smallest cutoff meeting the tail tolerance for a thermal state.
pub fn suggested_cutoff_thermal(n: f64) -> Result<usize> {
    if n < 0.0 {
        return Err(FockError::NegativeOccupation { value: n });
    }
    for d in 2..=MAX_CUTOFF {
        let pop = (n / (n + 1.0)).powi(d as i32 - 1) / (n + 1.0);
        if pop < TAIL_TOL {
            return Ok(d);
        }
    }
    Err(FockError::CutoffOutOfRange)
}

/// Partial transpose on the chosen mode (0 or 1) as an index shuffle.
pub fn partial_transpose(rho: &FockDensityMatrix, mode: usize) -> Result<FockDensityMatrix> {
    if mode > 1 {
        return Err(FockError::ModeOutOfRange { mode });
    }
    let d = rho.cutoff;
    let mut out = DMatrix::<Complex64>::zeros(rho.dim(), rho.dim());
    for m in 0..d {
        for n in 0..d {
            for mp in 0..d {
                for np in 0..d {
                    let (src_row, src_col) = if mode == 1 {
                        (index(d, m, np), index(d, mp, n))
                    } else {
                        (index(d, mp, n), index(d, m, np))
                    };
                    out[(index(d, m, n), index(d, mp, np))] = rho.entries[(src_row, src_col)];
                }
            }
        }
    }
    // the partial transpose of a density matrix keeps trace and hermiticity
    FockDensityMatrix::new(d, out)
}

/// Logarithmic negativity as the log trace norm of the partial transpose,
/// `ln ‖ρ^{T_mode}‖₁` (nats), from a full Hermitian eigendecomposition.
pub fn fock_log_negativity(rho: &FockDensityMatrix, mode: usize) -> Result<f64> {
    let pt = partial_transpose(rho, mode)?;
    let (eigs, weight) = hermitian_eigenvalues(&pt.entries);
    let trace_norm: f64 = weight * eigs.iter().map(|x| x.abs()).sum::<f64>();
    Ok(trace_norm.ln())
}

/// Von Neumann entropy `−tr ρ ln ρ` (nats) with eigenvalues floored at
/// [`LOG_FLOOR`].
pub fn von_neumann_entropy(rho: &FockDensityMatrix) -> f64 {
    let (eigs, weight) = hermitian_eigenvalues(&rho.entries);
    weight * entropy_of_eigenvalues(&eigs)
}

fn entropy_of_eigenvalues(eigs: &[f64]) -> f64 {
    -eigs
        .iter()
        .filter(|&&x| x > LOG_FLOOR)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// Relative entropy `S(ρ‖σ) = tr ρ ln ρ − tr ρ ln σ` (nats).
///
/// Eigenvalues of `σ` are floored at [`LOG_FLOOR`] before the logarithm.
/// The weight of `ρ` on eigenvectors of `σ` at or below the floor must stay
/// under [`SUPPORT_TOL`], otherwise `σ` does not (numerically) dominate `ρ`
/// and the divergence is reported instead of a floor-dependent number.
pub fn relative_entropy(rho: &FockDensityMatrix, sigma: &FockDensityMatrix) -> Result<f64> {
    if rho.cutoff != sigma.cutoff {
        return Err(FockError::BadDimensions {
            rows: sigma.dim(),
            cols: sigma.dim(),
            dim: rho.dim(),
        });
    }
    let (rho_eigs, rho_weight) = hermitian_eigenvalues(&rho.entries);
    let tr_rho_ln_rho = -rho_weight * entropy_of_eigenvalues(&rho_eigs);

    let (pairs, weight) = hermitian_eigen_weights(&sigma.entries, &rho.entries);
    let mut tr_rho_ln_sigma = 0.0;
    let mut leaked = 0.0;
    for (mu, w) in pairs {
        tr_rho_ln_sigma += w * mu.max(LOG_FLOOR).ln();
        if mu <= LOG_FLOOR {
            leaked += w.max(0.0);
        }
    }
    if weight * leaked > SUPPORT_TOL {
        return Err(FockError::SupportViolation {
            leaked: weight * leaked,
        });
    }
    Ok(tr_rho_ln_rho - weight * tr_rho_ln_sigma)
}

/// Reduced single-mode density matrix.
pub fn partial_trace(rho: &FockDensityMatrix, keep: usize) -> Result<DMatrix<Complex64>> {
    if keep > 1 {
        return Err(FockError::ModeOutOfRange { mode: keep });
    }
    let d = rho.cutoff;
    let mut out = DMatrix::<Complex64>::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..d {
                let (i, j) = if keep == 0 {
                    (index(d, a, k), index(d, b, k))
                } else {
                    (index(d, k, a), index(d, k, b))
                };
                sum += rho.entries[(i, j)];
            }
            out[(a, b)] = sum;
        }
    }
    Ok(out)
}

/// Entropy of a reduced single-mode state (nats).
pub fn marginal_entropy(rho: &FockDensityMatrix, mode: usize) -> Result<f64> {
    let red = partial_trace(rho, mode)?;
    let (eigs, weight) = hermitian_eigenvalues(&red);
    Ok(weight * entropy_of_eigenvalues(&eigs))
}

/// Mean photon number of one mode.
pub fn marginal_occupation(rho: &FockDensityMatrix, mode: usize) -> Result<f64> {
    let red = partial_trace(rho, mode)?;
    Ok(red
        .diagonal()
        .iter()
        .enumerate()
        .map(|(k, z)| k as f64 * z.re)
        .sum())
}

/// Covariance matrix of the two-mode squeezed vacuum in the Gaussian
/// pipeline's conventions: diagonal blocks `cosh(2r)/2·I`, correlations
/// `+sinh(2r)/2` in `q⊗q` and `−sinh(2r)/2` in `p⊗p`.
///
/// A local phase rotation of the second mode by −π/2 maps this onto the
/// anti-diagonal correlation pattern of the driven-line output; the two
/// forms share every measure evaluated here.
pub fn cm_of_tmsv(r: f64) -> gaussian_dce::Result<CovarianceMatrix> {
    let a = (2.0 * r).cosh() / 2.0;
    let c = (2.0 * r).sinh() / 2.0;
    let mut m = DMatrix::<f64>::from_diagonal_element(4, 4, a);
    m[(0, 2)] = c;
    m[(2, 0)] = c;
    m[(1, 3)] = -c;
    m[(3, 1)] = -c;
    CovarianceMatrix::new(m)
}

/// Symmetrized quadrature second moments `½⟨x_i x_j + x_j x_i⟩` computed
/// from ladder-operator matrix elements on the truncated space.
pub fn quadrature_moments(rho: &FockDensityMatrix) -> DMatrix<f64> {
    let d = rho.cutoff;
    let mut lower = DMatrix::<Complex64>::zeros(d, d);
    for k in 1..d {
        lower[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    let raise = lower.adjoint();
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let q = (&lower + &raise) * inv_sqrt2;
    let p = (&raise - &lower) * Complex64::new(0.0, 1.0) * inv_sqrt2;
    let eye = DMatrix::<Complex64>::identity(d, d);

    let ops = [
        q.kronecker(&eye),
        p.kronecker(&eye),
        eye.kronecker(&q),
        eye.kronecker(&p),
    ];
    let mut cm = DMatrix::<f64>::zeros(4, 4);
    for i in 0..4 {
        for j in i..4 {
            let sym = (&ops[i] * &ops[j] + &ops[j] * &ops[i]) * Complex64::new(0.5, 0.0);
            let val: Complex64 = (&rho.entries * sym).diagonal().iter().sum();
            cm[(i, j)] = val.re;
            cm[(j, i)] = val.re;
        }
    }
    cm
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use gaussian_dce::measures::gaussian_coherence;
    use gaussian_dce::symplectic::{symplectic_eigenvalues, thermal_entropy};

    #[test]
    fn tmsv_zero_squeezing_is_vacuum_projector() {
        let rho = tmsv_state(0.0, 5).unwrap();
        assert_relative_eq!(rho.entries()[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(rho.purity(), 1.0, epsilon = 1e-12);
        assert_eq!(rho.entries()[(1, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn tmsv_is_pure_and_has_thermal_marginal() {
        let rho = tmsv_state(0.1, 20).unwrap();
        assert_relative_eq!(rho.purity(), 1.0, epsilon = 1e-10);
        assert_relative_eq!(rho.trace(), 1.0, epsilon = 1e-12);
        assert!(rho.min_eigenvalue() > -1e-10);
        // marginal is thermal with n̄ = sinh²(0.1)
        let nbar = 0.1_f64.sinh().powi(2);
        assert_relative_eq!(
            marginal_occupation(&rho, 0).unwrap(),
            nbar,
            max_relative = 1e-10
        );
        let red = partial_trace(&rho, 1).unwrap();
        for k in 0..5usize {
            let expect = (nbar / (nbar + 1.0)).powi(k as i32) / (nbar + 1.0);
            assert_relative_eq!(red[(k, k)].re, expect, max_relative = 1e-9);
        }
    }

    #[test]
    fn tmsv_rejects_bad_inputs() {
        assert!(matches!(
            tmsv_state(0.3, 3),
            Err(FockError::CutoffTooSmall { .. })
        ));
        assert!(matches!(
            tmsv_state(0.5, 20),
            Err(FockError::SqueezingOutOfRange { .. })
        ));
    }

    #[test]
    fn thermal_populations_follow_geometric_law() {
        let rho = thermal_product_state(1.0, 1.0, 40).unwrap();
        for k in 0..6usize {
            let i = index(40, k, 0);
            let expect = 0.5_f64.powi(k as i32 + 1) * 0.5;
            assert_relative_eq!(rho.entries()[(i, i)].re, expect, max_relative = 1e-10);
        }
        assert_relative_eq!(rho.trace(), 1.0, epsilon = 1e-14);
        assert!(rho.top_level_population(0).unwrap() < TAIL_TOL);
    }

    #[test]
    fn thermal_entropy_matches_closed_form() {
        // cutoff 40 rather than the minimal policy cutoff: entropy picks up
        // truncation error of order tail·|ln tail|, so the 1e-8 agreement
        // needs deeper tails than ordinary expectation values do.
        for n in [0.1, 0.5, 1.0] {
            let rho = thermal_product_state(n, n, 40).unwrap();
            assert_relative_eq!(
                von_neumann_entropy(&rho),
                2.0 * thermal_entropy(n),
                epsilon = 1e-8
            );
        }
        // one warm and one empty mode: S = g(1) = 2 ln 2
        let rho = thermal_product_state(1.0, 0.0, 40).unwrap();
        assert_relative_eq!(
            von_neumann_entropy(&rho),
            2.0 * std::f64::consts::LN_2,
            epsilon = 1e-8
        );
    }

    #[test]
    fn thermal_rejects_bad_inputs() {
        assert!(matches!(
            thermal_product_state(-0.5, 0.0, 10),
            Err(FockError::NegativeOccupation { .. })
        ));
        assert!(matches!(
            thermal_product_state(5.0, 0.0, 10),
            Err(FockError::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn log_negativity_of_product_state_vanishes() {
        let rho = thermal_product_state(0.5, 0.2, 30).unwrap();
        assert!(fock_log_negativity(&rho, 1).unwrap().abs() < 1e-9);
    }

    #[test]
    fn log_negativity_of_tmsv_is_twice_squeezing() {
        for (r, expect) in [(0.05, 0.1), (0.1, 0.2)] {
            let rho = tmsv_state(r, 20).unwrap();
            for mode in 0..2 {
                assert_relative_eq!(
                    fock_log_negativity(&rho, mode).unwrap(),
                    expect,
                    epsilon = 1e-6
                );
            }
        }
    }

    #[test]
    fn partial_transpose_preserves_trace_and_involutes() {
        let rho = tmsv_state(0.12, 16).unwrap();
        let pt = partial_transpose(&rho, 1).unwrap();
        assert_relative_eq!(pt.trace(), 1.0, epsilon = 1e-12);
        let back = partial_transpose(&pt, 1).unwrap();
        assert_eq!(back.entries(), rho.entries());
    }

    #[test]
    fn relative_entropy_of_state_with_itself_is_zero() {
        let rho = thermal_product_state(0.3, 0.7, 30).unwrap();
        let s = relative_entropy(&rho, &rho).unwrap();
        assert!(s.abs() < 1e-10, "S(rho||rho) = {s}");
        let pure = tmsv_state(0.1, 20).unwrap();
        let s = relative_entropy(&pure, &pure).unwrap();
        assert!(s.abs() < 1e-9, "S(psi||psi) = {s}");
    }

    #[test]
    fn relative_entropy_nonnegative_and_detects_difference() {
        // Grid kept within the floored-log validity domain: the warmest
        // state's weight beyond the coldest state's floored support must
        // stay below SUPPORT_TOL.
        let d = 30;
        let grid = [0.1, 0.2, 0.4];
        for &na in &grid {
            for &nb in &grid {
                let rho = thermal_product_state(na, na, d).unwrap();
                let sig = thermal_product_state(nb, nb, d).unwrap();
                let s = relative_entropy(&rho, &sig).unwrap();
                assert!(s >= -1e-10);
                if (na - nb).abs() > 1e-12 {
                    assert!(s > 1e-4, "S = {s} for na={na}, nb={nb}");
                }
            }
        }
    }

    #[test]
    fn relative_entropy_support_violation() {
        // a vacuum-supported reference cannot dominate a thermal state
        let rho = thermal_product_state(1.0, 1.0, 40).unwrap();
        let sigma = thermal_product_state(0.0, 0.0, 40).unwrap();
        assert!(matches!(
            relative_entropy(&rho, &sigma),
            Err(FockError::SupportViolation { .. })
        ));
    }

    #[test]
    fn tmsv_relative_entropy_to_thermal_marginals_is_gaussian_coherence() {
        let r = 0.1;
        let d = 20;
        let rho = tmsv_state(r, d).unwrap();
        let nbar = r.sinh().powi(2);
        let sigma = thermal_product_state(nbar, nbar, d).unwrap();
        let s = relative_entropy(&rho, &sigma).unwrap();
        assert_relative_eq!(s, 0.1125110470893365, epsilon = 1e-4);
        let c = gaussian_coherence(&cm_of_tmsv(r).unwrap()).unwrap();
        assert_relative_eq!(s, c, epsilon = 1e-4);
    }

    #[test]
    fn thermal_reference_is_locally_minimal() {
        // The relative entropy to thermal products should be smallest at the
        // marginals' own occupations; probed on a ±10% grid around them.
        let r = 0.1;
        let d = 20;
        let rho = tmsv_state(r, d).unwrap();
        let nbar = r.sinh().powi(2);
        let baseline =
            relative_entropy(&rho, &thermal_product_state(nbar, nbar, d).unwrap()).unwrap();
        for fa in [0.9, 1.0, 1.1] {
            for fb in [0.9, 1.0, 1.1] {
                if fa == 1.0 && fb == 1.0 {
                    continue;
                }
                let sigma = thermal_product_state(nbar * fa, nbar * fb, d).unwrap();
                let s = relative_entropy(&rho, &sigma).unwrap();
                assert!(
                    s >= baseline - 1e-10,
                    "reference not minimal: {s} < {baseline} at ({fa}, {fb})"
                );
            }
        }
    }

    #[test]
    fn cm_of_tmsv_examples() {
        let vac = cm_of_tmsv(0.0).unwrap();
        assert_eq!(vac.matrix(), CovarianceMatrix::vacuum(2).unwrap().matrix());
        let cm = cm_of_tmsv(0.1).unwrap();
        let sp = symplectic_eigenvalues(&cm).unwrap();
        assert_relative_eq!(sp.eigenvalues()[0], 0.5, epsilon = 1e-12);
        assert_relative_eq!(sp.eigenvalues()[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn cm_of_tmsv_matches_fock_moments() {
        let r = 0.1;
        let rho = tmsv_state(r, 20).unwrap();
        let moments = quadrature_moments(&rho);
        let cm = cm_of_tmsv(r).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (moments[(i, j)] - cm.entry(i, j)).abs() < 1e-8,
                    "moment ({i},{j}): {} vs {}",
                    moments[(i, j)],
                    cm.entry(i, j)
                );
            }
        }
    }

    #[test]
    fn suggested_cutoffs_respect_policy() {
        let d = suggested_cutoff_tmsv(0.15).unwrap();
        assert!(d <= 25);
        assert!(tmsv_state(0.15, d).is_ok());
        let d = suggested_cutoff_thermal(1.0).unwrap();
        assert!(d <= 40);
        assert!(thermal_product_state(1.0, 1.0, d).is_ok());
        assert!(matches!(
            suggested_cutoff_thermal(50.0),
            Err(FockError::CutoffOutOfRange)
        ));
    }
}
