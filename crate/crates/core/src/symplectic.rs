//! Covariance-matrix representation of Gaussian states and the symplectic
//! linear algebra the quantumness measures are built on.
//!
//! The symplectic form on N modes is the direct sum of N copies of
//! `ω = [[0, 1], [-1, 0]]`. The symplectic eigenvalues of a covariance
//! matrix `σ` are the absolute values of the (purely imaginary, paired)
//! eigenvalues of `iΩσ`; in the `vacuum = ½·I` normalization used here a
//! state is bona fide iff every `2ν ≥ 1`.

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::math;
use crate::{Error, Result};

/// Maximum allowed asymmetry of a covariance matrix before rejection.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Band below the vacuum value within which a symplectic spectrum still
/// counts as bona fide (pure numerical round-off).
pub const BONA_FIDE_TOL: f64 = 1e-9;

/// `h` arguments in `[1 - ENTROPY_CLAMP_TOL, 1]` are treated as exactly 1
/// (entropy term 0). Anything lower is an unphysical input and is clamped
/// loudly; see [`entropy_h`].
pub const ENTROPY_CLAMP_TOL: f64 = 1e-6;

/// Agreement required between the generic eigensolver and the two-mode
/// closed form for symplectic eigenvalues.
pub const CROSS_CHECK_TOL: f64 = 1e-9;

const MAX_SCHUR_ITERATIONS: usize = 100_000;

/// Symmetric second-moment matrix of the quadratures `(q1, p1, ..., qN, pN)`,
/// vacuum-normalized to `½·I`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Builds a covariance matrix from a square `2N×2N` matrix.
    ///
    /// The input must be symmetric within [`SYMMETRY_TOL`]; it is then
    /// symmetrized exactly so downstream code can rely on `σ = σ^T`.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::BadDimensions { rows, cols });
        }
        let mut defect = 0.0_f64;
        for i in 0..rows {
            for j in (i + 1)..rows {
                defect = defect.max(math::abs(entries[(i, j)] - entries[(j, i)]));
            }
        }
        if defect > SYMMETRY_TOL {
            return Err(Error::NotSymmetric { defect });
        }
        let sym = (&entries + entries.transpose()) * 0.5;
        Ok(Self {
            n_modes: rows / 2,
            entries: sym,
        })
    }

    /// The vacuum state: `½·I`.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::ZeroModes);
        }
        Ok(Self {
            n_modes,
            entries: DMatrix::from_diagonal_element(2 * n_modes, 2 * n_modes, 0.5),
        })
    }

    /// Product of single-mode thermal states with the given occupations.
    pub fn thermal(occupations: &[f64]) -> Result<Self> {
        if occupations.is_empty() {
            return Err(Error::ZeroModes);
        }
        if let Some(&bad) = occupations.iter().find(|&&n| n < 0.0) {
            return Err(Error::NegativeOccupation { value: bad });
        }
        let dim = 2 * occupations.len();
        let mut m = DMatrix::zeros(dim, dim);
        for (k, &n) in occupations.iter().enumerate() {
            let v = (2.0 * n + 1.0) / 2.0;
            m[(2 * k, 2 * k)] = v;
            m[(2 * k + 1, 2 * k + 1)] = v;
        }
        Ok(Self {
            n_modes: occupations.len(),
            entries: m,
        })
    }

    /// Direct sum `σ_a ⊕ σ_b` (uncorrelated composition of two states).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (da, db) = (2 * self.n_modes, 2 * other.n_modes);
        let mut m = DMatrix::zeros(da + db, da + db);
        m.view_mut((0, 0), (da, da)).copy_from(&self.entries);
        m.view_mut((da, da), (db, db)).copy_from(&other.entries);
        Self {
            n_modes: self.n_modes + other.n_modes,
            entries: m,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Side length of the matrix, `2N`.
    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Determinant of the 2×2 diagonal block of mode `k`.
    pub fn mode_block_det(&self, k: usize) -> Result<f64> {
        if k >= self.n_modes {
            return Err(Error::ModeOutOfRange {
                mode: k,
                n_modes: self.n_modes,
            });
        }
        let (i, j) = (2 * k, 2 * k + 1);
        Ok(self.entries[(i, i)] * self.entries[(j, j)] - self.entries[(i, j)] * self.entries[(j, i)])
    }

    /// Determinant of the 2×2 correlation block between modes `a` and `b`.
    pub fn correlation_block_det(&self, a: usize, b: usize) -> Result<f64> {
        if a >= self.n_modes || b >= self.n_modes {
            return Err(Error::ModeOutOfRange {
                mode: a.max(b),
                n_modes: self.n_modes,
            });
        }
        let (r, c) = (2 * a, 2 * b);
        Ok(self.entries[(r, c)] * self.entries[(r + 1, c + 1)]
            - self.entries[(r, c + 1)] * self.entries[(r + 1, c)])
    }

    /// Largest |entry| outside the 2×2 diagonal blocks plus largest
    /// |off-diagonal| inside them; zero exactly for diagonal matrices.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j {
                    m = m.max(math::abs(self.entries[(i, j)]));
                }
            }
        }
        m
    }

    pub fn determinant(&self) -> f64 {
        self.entries.determinant()
    }
}

/// Symplectic spectrum of a covariance matrix, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    eigenvalues: Vec<f64>,
    bona_fide: bool,
    min_violation: f64,
}

impl SymplecticSpectrum {
    /// The N eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// True iff `min(2ν) ≥ 1 − BONA_FIDE_TOL`.
    pub fn bona_fide(&self) -> bool {
        self.bona_fide
    }

    /// How far the smallest `2ν` falls below 1; zero if it does not.
    pub fn min_violation(&self) -> f64 {
        self.min_violation
    }
}

/// Linear map acting on the quadrature vector, `σ ↦ M σ M^T`.
///
/// Symplecticity is *not* required: the driven-waveguide input-output map is
/// only symplectic to leading order, and its defect is physically meaningful.
#[derive(Debug, Clone)]
pub struct QuadratureMap {
    matrix: DMatrix<f64>,
    description: String,
}

impl QuadratureMap {
    pub fn new(matrix: DMatrix<f64>, description: impl Into<String>) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::BadDimensions { rows, cols });
        }
        Ok(Self {
            matrix,
            description: description.into(),
        })
    }

    pub fn identity(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::ZeroModes);
        }
        Self::new(
            DMatrix::identity(2 * n_modes, 2 * n_modes),
            "identity",
        )
    }

    /// Phase rotation by `theta` on one mode, identity elsewhere.
    pub fn rotation(n_modes: usize, mode: usize, theta: f64) -> Result<Self> {
        if mode >= n_modes {
            return Err(Error::ModeOutOfRange { mode, n_modes });
        }
        let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
        let (c, s) = (math::cos(theta), math::sin(theta));
        let k = 2 * mode;
        m[(k, k)] = c;
        m[(k, k + 1)] = s;
        m[(k + 1, k)] = -s;
        m[(k + 1, k + 1)] = c;
        Self::new(m, "local phase rotation")
    }

    /// Single-mode squeezer `diag(e^r, e^{-r})` on one mode.
    pub fn squeezer(n_modes: usize, mode: usize, r: f64) -> Result<Self> {
        if mode >= n_modes {
            return Err(Error::ModeOutOfRange { mode, n_modes });
        }
        let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
        let k = 2 * mode;
        m[(k, k)] = math::exp(r);
        m[(k + 1, k + 1)] = math::exp(-r);
        Self::new(m, "single-mode squeezer")
    }

    /// Two-mode squeezer with parameter `r` (modes 0 and 1).
    pub fn two_mode_squeezer(r: f64) -> Result<Self> {
        let (ch, sh) = ((math::exp(r) + math::exp(-r)) / 2.0, (math::exp(r) - math::exp(-r)) / 2.0);
        let mut m = DMatrix::identity(4, 4);
        m[(0, 0)] = ch;
        m[(1, 1)] = ch;
        m[(2, 2)] = ch;
        m[(3, 3)] = ch;
        m[(0, 2)] = sh;
        m[(2, 0)] = sh;
        m[(1, 3)] = -sh;
        m[(3, 1)] = -sh;
        Self::new(m, "two-mode squeezer")
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Applies this map first, then `other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.matrix.nrows() != other.matrix.nrows() {
            return Err(Error::BadDimensions {
                rows: other.matrix.nrows(),
                cols: self.matrix.nrows(),
            });
        }
        Self::new(&other.matrix * &self.matrix, "composite")
    }

    /// Congruence `M σ M^T`.
    pub fn apply(&self, cm: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        if self.matrix.nrows() != cm.dim() {
            return Err(Error::BadDimensions {
                rows: self.matrix.nrows(),
                cols: cm.dim(),
            });
        }
        CovarianceMatrix::new(&self.matrix * cm.matrix() * self.matrix.transpose())
    }

    /// `‖MΩM^T − Ω‖_max`; zero for exactly symplectic maps.
    pub fn symplecticity_defect(&self) -> f64 {
        let n = self.matrix.nrows() / 2;
        let omega = symplectic_form(n).expect("map has at least one mode");
        let residual = &self.matrix * &omega * self.matrix.transpose() - omega;
        residual.iter().fold(0.0_f64, |m, &x| m.max(math::abs(x)))
    }
}

/// The symplectic form `Ω = ⊕_k [[0, 1], [-1, 0]]`.
pub fn symplectic_form(n_modes: usize) -> Result<DMatrix<f64>> {
    if n_modes == 0 {
        return Err(Error::ZeroModes);
    }
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    Ok(omega)
}

/// Symplectic eigenvalues of a covariance matrix.
///
/// Computed as the moduli of the eigenvalues of `iΩσ` via a real Schur
/// decomposition of `Ωσ`; the eigenvalues come in `±iν` pairs and are
/// deduplicated by pairing. For one and two modes the result is cross-checked
/// against the closed form in the global invariants `det σ` and the Seralian
/// (`ν_∓² = (Δ ∓ √(Δ² − 4 det σ))/2`).
pub fn symplectic_eigenvalues(cm: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let n = cm.n_modes();
    let omega = symplectic_form(n)?;
    let prod = omega * cm.matrix();
    let scale = prod.iter().fold(1.0_f64, |m, &x| m.max(math::abs(x)));

    let schur = prod
        .clone()
        .try_schur(f64::EPSILON, MAX_SCHUR_ITERATIONS)
        .ok_or(Error::NumericalFailure {
            residual: f64::INFINITY,
        })?;
    let eigs = schur.complex_eigenvalues();

    // For symmetric positive-definite σ the spectrum of Ωσ is purely
    // imaginary; a significant real part means there is no Williamson form.
    let max_re = eigs.iter().fold(0.0_f64, |m, z| m.max(math::abs(z.re)));
    if max_re > CROSS_CHECK_TOL * scale {
        return Err(Error::NumericalFailure { residual: max_re });
    }

    let mut moduli: Vec<f64> = eigs
        .iter()
        .map(|z| math::sqrt(z.re * z.re + z.im * z.im))
        .collect();
    moduli.sort_by(|a, b| a.partial_cmp(b).expect("moduli are finite"));

    let mut eigenvalues = Vec::with_capacity(n);
    for k in 0..n {
        let (lo, hi) = (moduli[2 * k], moduli[2 * k + 1]);
        if hi - lo > CROSS_CHECK_TOL * scale {
            return Err(Error::NumericalFailure { residual: hi - lo });
        }
        eigenvalues.push(0.5 * (lo + hi));
    }

    if n <= 2 {
        cross_check_closed_form(cm, &eigenvalues)?;
    }

    let min_2nu = 2.0 * eigenvalues[0];
    Ok(SymplecticSpectrum {
        bona_fide: min_2nu >= 1.0 - BONA_FIDE_TOL,
        min_violation: (1.0 - min_2nu).max(0.0),
        eigenvalues,
    })
}

/// Checks the generic spectrum against the closed form implied by the
/// invariants `det σ` and (for two modes) the Seralian:
/// `ν∓² = (Δ ∓ √(Δ² − 4 det σ))/2`.
///
/// Near a degenerate pair neither route can resolve the *split* beyond
/// `√ε`, but the pair sum and product are stable on both sides, so the
/// comparison is done on the elementary symmetric functions of the spectrum
/// rather than eigenvalue by eigenvalue.
fn cross_check_closed_form(cm: &CovarianceMatrix, generic: &[f64]) -> Result<()> {
    let closed: Vec<f64> = match cm.n_modes() {
        1 => {
            let det = cm.determinant();
            if det < 0.0 {
                return Err(Error::NumericalFailure { residual: det });
            }
            alloc::vec![math::sqrt(det)]
        }
        2 => {
            let delta = seralian(cm)?;
            let det = cm.determinant();
            let disc = delta * delta - 4.0 * det;
            if disc < -CROSS_CHECK_TOL {
                return Err(Error::NumericalFailure { residual: disc });
            }
            let root = math::sqrt(disc.max(0.0));
            let lo = (delta - root) / 2.0;
            let hi = (delta + root) / 2.0;
            if lo < -CROSS_CHECK_TOL {
                return Err(Error::NumericalFailure { residual: lo });
            }
            alloc::vec![math::sqrt(lo.max(0.0)), math::sqrt(hi)]
        }
        _ => return Ok(()),
    };
    let sum_g: f64 = generic.iter().sum();
    let sum_c: f64 = closed.iter().sum();
    let prod_g: f64 = generic.iter().product();
    let prod_c: f64 = closed.iter().product();
    for (a, b) in [(sum_g, sum_c), (prod_g, prod_c)] {
        let tol = CROSS_CHECK_TOL * a.abs().max(1.0);
        if math::abs(a - b) > tol {
            return Err(Error::NumericalFailure {
                residual: math::abs(a - b),
            });
        }
    }
    Ok(())
}

/// The Seralian `Δ(σ) = det σ1 + det σ2 + 2 det ε12` of a two-mode state; a
/// symplectic invariant equal to `ν1² + ν2²`.
pub fn seralian(cm: &CovarianceMatrix) -> Result<f64> {
    if cm.n_modes() != 2 {
        return Err(Error::WrongModeCount {
            expected: 2,
            got: cm.n_modes(),
        });
    }
    Ok(cm.mode_block_det(0)? + cm.mode_block_det(1)? + 2.0 * cm.correlation_block_det(0, 1)?)
}

/// Partial transpose of a two-mode state: mirror reflection of one mode's
/// momentum, `p_k ↦ −p_k`. Involutive; flips the sign of `det ε12`.
pub fn partial_transpose(cm: &CovarianceMatrix, which_mode: usize) -> Result<CovarianceMatrix> {
    if cm.n_modes() != 2 {
        return Err(Error::WrongModeCount {
            expected: 2,
            got: cm.n_modes(),
        });
    }
    if which_mode >= 2 {
        return Err(Error::ModeOutOfRange {
            mode: which_mode,
            n_modes: 2,
        });
    }
    let p = 2 * which_mode + 1;
    let mut m = cm.matrix().clone();
    for i in 0..cm.dim() {
        m[(p, i)] = -m[(p, i)];
    }
    for i in 0..cm.dim() {
        m[(i, p)] = -m[(i, p)];
    }
    CovarianceMatrix::new(m)
}

/// The entropic function `h(x) = ((x+1)/2)·ln((x+1)/2) − ((x−1)/2)·ln((x−1)/2)`.
///
/// `h` expects arguments normalized so the vacuum sits at 1 (i.e. `2ν` for
/// spectra of matrices stored here). Arguments in `[1 − 1e-6, 1]` return 0;
/// arguments below that band come from unphysical (perturbatively truncated)
/// matrices and also return 0 — callers that care use
/// [`entropy_arg_is_unphysical`] to surface a diagnostic instead of silently
/// proceeding.
pub fn entropy_h(x: f64) -> f64 {
    if x <= 1.0 {
        return 0.0;
    }
    let p = (x + 1.0) / 2.0;
    let m = (x - 1.0) / 2.0;
    p * math::ln(p) - m * math::ln(m)
}

/// True when an `h` argument is below the tolerated round-off band and the
/// clamp hides a genuinely unphysical matrix.
pub fn entropy_arg_is_unphysical(x: f64) -> bool {
    x < 1.0 - ENTROPY_CLAMP_TOL
}

/// Entropy of a single-mode thermal state with mean occupation `n`:
/// `g(n) = (n+1)·ln(n+1) − n·ln(n)` (nats); `g(0) = 0`.
pub fn thermal_entropy(n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    (n + 1.0) * math::ln(n + 1.0) - n * math::ln(n)
}

/// Von Neumann entropy `S = Σ_k h(2ν_k)` in nats.
pub fn von_neumann_entropy(cm: &CovarianceMatrix) -> Result<f64> {
    let spectrum = symplectic_eigenvalues(cm)?;
    Ok(spectrum
        .eigenvalues()
        .iter()
        .map(|&nu| entropy_h(2.0 * nu))
        .sum())
}

/// Mean occupation of mode `k`: `n̄_k = ½(σ¹¹_k + σ²²_k − 1)` (displacements
/// are zero throughout).
pub fn mean_occupation(cm: &CovarianceMatrix, mode: usize) -> Result<f64> {
    if mode >= cm.n_modes() {
        return Err(Error::ModeOutOfRange {
            mode,
            n_modes: cm.n_modes(),
        });
    }
    let k = 2 * mode;
    Ok(0.5 * (cm.entry(k, k) + cm.entry(k + 1, k + 1) - 1.0))
}
