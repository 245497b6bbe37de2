//! Two-mode output state of a flux-driven SQUID-terminated waveguide.
//!
//! A sinusoidal modulation of the Josephson energy at drive frequency `ω_d`
//! modulates the effective electrical length of the line, which pumps photon
//! pairs into modes `ω_± = ω_d/2 ± δω`. For small detuning the input-output
//! relation reduces to `b_± = −a_± − i f a†_∓` with the single small
//! parameter
//!
//! ```text
//! f = ε · L_eff0 · ω_d / (2 v) = v_eff / (2 v).
//! ```
//!
//! Applying the corresponding quadrature map to a thermal two-mode input of
//! equal occupations `n_th` gives the output covariance matrix
//!
//! ```text
//! σ_± = ½ ((2n+1) f² + 2n + 1) · I,    ε_∓± anti-diagonal f (2n + 1),
//! ```
//!
//! which this module constructs and evaluates, both through the exact
//! covariance-matrix pipeline and through the leading-order closed forms for
//! the three quantumness measures.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::math;
use crate::measures::{self, Diagnostic};
use crate::symplectic::{CovarianceMatrix, QuadratureMap};
use crate::{Error, Result};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Above this value of `f` the leading-order treatment is no longer trusted
/// and a [`Diagnostic::NonPerturbative`] warning is attached.
pub const PERTURBATIVE_F_LIMIT: f64 = 0.08;

/// Tolerance for the congruence-vs-closed-form consistency check inside
/// [`output_state`].
pub const OUTPUT_CM_TOL: f64 = 1e-12;

/// Drive and line parameters of the modulated waveguide.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveConfig {
    /// Normalized modulation amplitude of the Josephson energy, `0 ≤ ε < 1`.
    pub epsilon: f64,
    /// Drive angular frequency, rad/s.
    pub omega_d: f64,
    /// Static effective length of the SQUID termination, m.
    pub l_eff0: f64,
    /// Speed of light in the line, m/s.
    pub v: f64,
    /// Mode detuning `δω`, rad/s. Kept for provenance; the two-mode reduction
    /// here is evaluated at `δω = 0` (equal occupations).
    pub delta_omega: f64,
}

impl DriveConfig {
    pub fn new(epsilon: f64, omega_d: f64, l_eff0: f64, v: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: epsilon,
            });
        }
        if omega_d <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega_d",
                value: omega_d,
            });
        }
        if l_eff0 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "l_eff0",
                value: l_eff0,
            });
        }
        if v <= 0.0 {
            return Err(Error::InvalidParameter { name: "v", value: v });
        }
        Ok(Self {
            epsilon,
            omega_d,
            l_eff0,
            v,
            delta_omega: 0.0,
        })
    }

    pub fn small_parameter(&self) -> f64 {
        small_parameter_f(self)
    }

    pub fn is_perturbative(&self) -> bool {
        self.small_parameter() < PERTURBATIVE_F_LIMIT
    }
}

/// `f = ε · L_eff0 · ω_d / (2v)`.
pub fn small_parameter_f(drive: &DriveConfig) -> f64 {
    drive.epsilon * drive.l_eff0 * drive.omega_d / (2.0 * drive.v)
}

/// Inverse of [`small_parameter_f`]: the drive amplitude producing a given `f`
/// on a line with the given constants.
pub fn epsilon_from_f(f: f64, omega_d: f64, l_eff0: f64, v: f64) -> f64 {
    2.0 * v * f / (l_eff0 * omega_d)
}

/// How a temperature is turned into a mean photon number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OccupationConvention {
    /// Twice the Bose-Einstein occupation. Reproduces the published
    /// calibration for this setup (n_th = 6.71e-4 / 1.67e-2 / 6.71e-2 at
    /// 30 / 50 / 70 mK and ω = 2π·5 GHz); the factor 2 is adopted as-is and
    /// documented as a calibration, not derived.
    Calibrated,
    /// Plain Bose-Einstein `1/(exp(ħω/k_B T) − 1)`.
    BoseEinstein,
}

/// Temperature of the input quasi-vacuum plus the occupation convention.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalEnvironment {
    /// Temperature, K.
    pub temperature: f64,
    pub convention: OccupationConvention,
}

impl ThermalEnvironment {
    pub fn new(temperature: f64, convention: OccupationConvention) -> Result<Self> {
        if temperature <= 0.0 {
            return Err(Error::NonPositiveTemperature {
                kelvin: temperature,
            });
        }
        Ok(Self {
            temperature,
            convention,
        })
    }
}

/// Mean thermal photon number at angular frequency `omega` (rad/s).
pub fn thermal_occupation(env: &ThermalEnvironment, omega: f64) -> f64 {
    if omega <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega / (BOLTZMANN * env.temperature);
    if x > 700.0 {
        return 0.0;
    }
    let bose = 1.0 / (math::exp(x) - 1.0);
    match env.convention {
        OccupationConvention::Calibrated => 2.0 * bose,
        OccupationConvention::BoseEinstein => bose,
    }
}

/// Thermal two-mode input `diag((2n₋+1)/2, (2n₋+1)/2, (2n₊+1)/2, (2n₊+1)/2)`.
pub fn input_cm(n_minus: f64, n_plus: f64) -> Result<CovarianceMatrix> {
    CovarianceMatrix::thermal(&[n_minus, n_plus])
}

/// Quadrature form of the two-mode input-output relation:
/// `q_± = −(q_±ⁱⁿ + f·p_∓ⁱⁿ)`, `p_± = −(p_±ⁱⁿ + f·q_∓ⁱⁿ)`.
///
/// The map is symplectic only to leading order; its defect
/// `‖MΩM^T − Ω‖_max = f²` is reported by the returned map, never suppressed.
pub fn bogoliubov_quadrature_map(f: f64) -> Result<QuadratureMap> {
    if !(0.0..1.0).contains(&f) {
        return Err(Error::InvalidParameter { name: "f", value: f });
    }
    let mut m = DMatrix::identity(4, 4);
    m[(0, 3)] = f;
    m[(1, 2)] = f;
    m[(2, 1)] = f;
    m[(3, 0)] = f;
    QuadratureMap::new(-m, "driven-line input-output map")
}

/// Output covariance matrix for given `(f, n_th)`, equal occupations:
/// diagonals `((2n+1)f² + 2n + 1)/2`, anti-diagonal correlations `f(2n+1)`.
pub fn dce_covariance(f: f64, n_th: f64) -> Result<CovarianceMatrix> {
    if !(0.0..1.0).contains(&f) {
        return Err(Error::InvalidParameter { name: "f", value: f });
    }
    if n_th < 0.0 {
        return Err(Error::NegativeOccupation { value: n_th });
    }
    let a = ((2.0 * n_th + 1.0) * f * f + 2.0 * n_th + 1.0) / 2.0;
    let c = f * (2.0 * n_th + 1.0);
    let mut m = DMatrix::from_diagonal_element(4, 4, a);
    m[(0, 3)] = c;
    m[(3, 0)] = c;
    m[(1, 2)] = c;
    m[(2, 1)] = c;
    CovarianceMatrix::new(m)
}

/// The two-mode output state together with the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct DceState {
    cm: CovarianceMatrix,
    f: f64,
    n_th: f64,
    drive: DriveConfig,
    env: ThermalEnvironment,
}

impl DceState {
    pub fn cm(&self) -> &CovarianceMatrix {
        &self.cm
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn n_th(&self) -> f64 {
        self.n_th
    }

    pub fn drive(&self) -> &DriveConfig {
        &self.drive
    }

    pub fn environment(&self) -> &ThermalEnvironment {
        &self.env
    }

    /// Construction-time warnings (currently: drive outside the
    /// perturbative range).
    pub fn warnings(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.f >= PERTURBATIVE_F_LIMIT {
            out.push(Diagnostic::NonPerturbative { f: self.f });
        }
        out
    }
}

/// Builds the output state for a drive and environment.
///
/// The occupation is evaluated at `ω = ω_d/2` and used for both modes.
/// The covariance matrix is built twice — by congruence with the quadrature
/// map and from the closed-form entries — and the two must agree to
/// [`OUTPUT_CM_TOL`].
pub fn output_state(drive: &DriveConfig, env: &ThermalEnvironment) -> Result<DceState> {
    let f = drive.small_parameter();
    if f >= 1.0 {
        return Err(Error::InvalidParameter { name: "f", value: f });
    }
    let n_th = thermal_occupation(env, drive.omega_d / 2.0);
    let by_congruence = bogoliubov_quadrature_map(f)?.apply(&input_cm(n_th, n_th)?)?;
    let closed_form = dce_covariance(f, n_th)?;
    let residual = (by_congruence.matrix() - closed_form.matrix())
        .iter()
        .fold(0.0_f64, |m, &x| m.max(math::abs(x)));
    if residual > OUTPUT_CM_TOL {
        return Err(Error::NumericalFailure { residual });
    }
    Ok(DceState {
        cm: closed_form,
        f,
        n_th,
        drive: drive.clone(),
        env: env.clone(),
    })
}

/// Leading-order logarithmic negativity `max[0, 2(f − n_th)]` (nats).
pub fn perturbative_negativity(f: f64, n_th: f64) -> f64 {
    (2.0 * (f - n_th)).max(0.0)
}

/// Leading-order Gaussian discord `max[0, f² − n_th²/2]` (nats).
pub fn perturbative_discord(f: f64, n_th: f64) -> f64 {
    (f * f - n_th * n_th / 2.0).max(0.0)
}

/// Leading-order Gaussian coherence
/// `max[0, −2f²(−n_th + (2n_th + 1)·ln n_th)]` (nats).
///
/// The form diverges logarithmically as `n_th → 0`; at `n_th ≤ 0` the value
/// of the exact covariance-matrix pipeline is returned instead (use
/// [`perturbative_measures`] to see the fallback flagged).
pub fn perturbative_coherence(f: f64, n_th: f64) -> f64 {
    if n_th <= 0.0 {
        return dce_covariance(f, 0.0)
            .and_then(|cm| measures::gaussian_coherence(&cm))
            .unwrap_or(0.0);
    }
    (-2.0 * f * f * (-n_th + (2.0 * n_th + 1.0) * math::ln(n_th))).max(0.0)
}

/// The three leading-order measures plus diagnostics in one call.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbativeMeasures {
    pub negativity: f64,
    pub discord: f64,
    pub coherence: f64,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn perturbative_measures(f: f64, n_th: f64) -> PerturbativeMeasures {
    let mut diagnostics = Vec::new();
    if f >= PERTURBATIVE_F_LIMIT {
        diagnostics.push(Diagnostic::NonPerturbative { f });
    }
    if n_th <= 0.0 {
        diagnostics.push(Diagnostic::CoherenceExactFallback);
    }
    PerturbativeMeasures {
        negativity: perturbative_negativity(f, n_th),
        discord: perturbative_discord(f, n_th),
        coherence: perturbative_coherence(f, n_th),
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;

    fn fig_drive(epsilon: f64) -> DriveConfig {
        // ω_d = 20π GHz, L_eff0 = 0.5 mm, v = 1.2e8 m/s
        DriveConfig::new(epsilon, 20.0 * PI * 1e9, 0.5e-3, 1.2e8).unwrap()
    }

    #[test]
    fn small_parameter_reference_point() {
        assert_relative_eq!(
            fig_drive(0.1).small_parameter(),
            0.013089969389957472,
            max_relative = 1e-14
        );
        assert_eq!(fig_drive(0.0).small_parameter(), 0.0);
    }

    #[test]
    fn small_parameter_round_trips_through_epsilon() {
        let d = fig_drive(0.37);
        let f = d.small_parameter();
        let eps = epsilon_from_f(f, d.omega_d, d.l_eff0, d.v);
        assert_relative_eq!(eps, 0.37, max_relative = 1e-14);
        // the perturbative boundary f = 0.08 corresponds to ε ≈ 0.6112
        assert_relative_eq!(
            epsilon_from_f(0.08, d.omega_d, d.l_eff0, d.v),
            0.6111549814728781,
            max_relative = 1e-12
        );
    }

    #[test]
    fn drive_invariants() {
        assert!(DriveConfig::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(DriveConfig::new(-0.1, 1.0, 1.0, 1.0).is_err());
        assert!(DriveConfig::new(0.1, 0.0, 1.0, 1.0).is_err());
        assert!(fig_drive(0.1).is_perturbative());
        assert!(!fig_drive(0.62).is_perturbative());
    }

    #[test]
    fn calibrated_occupation_reproduces_published_values() {
        let omega = 2.0 * PI * 5e9;
        let cases = [
            (0.030, 6.71e-4),
            (0.050, 1.67e-2),
            (0.070, 6.71e-2),
        ];
        for (t, expected) in cases {
            let env = ThermalEnvironment::new(t, OccupationConvention::Calibrated).unwrap();
            let n = thermal_occupation(&env, omega);
            assert!(
                (n - expected).abs() / expected < 0.01,
                "T = {t} K: {n} vs {expected}"
            );
        }
        // tighter pins against the directly computed values
        let env30 = ThermalEnvironment::new(0.030, OccupationConvention::Calibrated).unwrap();
        assert_relative_eq!(
            thermal_occupation(&env30, omega),
            6.719979099566805e-4,
            max_relative = 1e-10
        );
    }

    #[test]
    fn bose_einstein_occupation() {
        let env = ThermalEnvironment::new(0.050, OccupationConvention::BoseEinstein).unwrap();
        assert_relative_eq!(
            thermal_occupation(&env, 2.0 * PI * 5e9),
            8.304373388861986e-3,
            max_relative = 1e-10
        );
        assert_eq!(thermal_occupation(&env, 0.0), 0.0);
    }

    #[test]
    fn environment_rejects_non_positive_temperature() {
        assert!(ThermalEnvironment::new(0.0, OccupationConvention::Calibrated).is_err());
        assert!(ThermalEnvironment::new(-1.0, OccupationConvention::BoseEinstein).is_err());
    }

    #[test]
    fn input_cm_examples() {
        let vac = input_cm(0.0, 0.0).unwrap();
        assert_eq!(vac.matrix(), CovarianceMatrix::vacuum(2).unwrap().matrix());
        let warm = input_cm(1.0, 1.0).unwrap();
        assert_relative_eq!(warm.entry(0, 0), 1.5, max_relative = 1e-15);
        let caption = input_cm(6.71e-4, 6.71e-4).unwrap();
        assert_relative_eq!(caption.entry(2, 2), 0.5006710, max_relative = 1e-12);
        assert!(input_cm(-0.1, 0.0).is_err());
    }

    #[test]
    fn quadrature_map_at_zero_drive_is_minus_identity() {
        let map = bogoliubov_quadrature_map(0.0).unwrap();
        let expected = -DMatrix::<f64>::identity(4, 4);
        assert_eq!(map.matrix(), &expected);
        // a global sign leaves any covariance matrix invariant
        let cm = CovarianceMatrix::thermal(&[0.2, 0.4]).unwrap();
        assert_eq!(map.apply(&cm).unwrap().matrix(), cm.matrix());
    }

    #[test]
    fn quadrature_map_defect_is_f_squared() {
        let map = bogoliubov_quadrature_map(0.1).unwrap();
        assert_relative_eq!(map.symplecticity_defect(), 0.01, max_relative = 1e-12);
    }

    #[test]
    fn congruence_on_vacuum_reproduces_closed_form() {
        let f = 0.05;
        let out = bogoliubov_quadrature_map(f)
            .unwrap()
            .apply(&CovarianceMatrix::vacuum(2).unwrap())
            .unwrap();
        let closed = dce_covariance(f, 0.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_relative_eq!(out.entry(i, j), closed.entry(i, j), epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn output_state_at_zero_drive_equals_input() {
        let drive = fig_drive(0.0);
        for t in [0.010, 0.050, 0.120] {
            let env = ThermalEnvironment::new(t, OccupationConvention::Calibrated).unwrap();
            let state = output_state(&drive, &env).unwrap();
            let n = thermal_occupation(&env, drive.omega_d / 2.0);
            assert_eq!(state.cm().matrix(), input_cm(n, n).unwrap().matrix());
        }
    }

    #[test]
    fn output_state_entries() {
        // f = 0.1, n_th = 0: diagonals 0.505, correlations 0.1
        let cm = dce_covariance(0.1, 0.0).unwrap();
        assert_relative_eq!(cm.entry(0, 0), 0.505, max_relative = 1e-15);
        assert_relative_eq!(cm.entry(0, 3), 0.1, max_relative = 1e-15);
        assert_relative_eq!(cm.entry(1, 2), 0.1, max_relative = 1e-15);
        assert_eq!(cm.entry(0, 1), 0.0);
        assert_eq!(cm.entry(0, 2), 0.0);
    }

    #[test]
    fn output_state_from_experimental_parameters() {
        let drive = fig_drive(0.1);
        let env = ThermalEnvironment::new(0.050, OccupationConvention::Calibrated).unwrap();
        let state = output_state(&drive, &env).unwrap();
        assert_relative_eq!(state.f(), 0.013089969389957472, max_relative = 1e-14);
        assert_relative_eq!(state.n_th(), 0.016608746777723972, max_relative = 1e-12);
        assert!(state.warnings().is_empty());
    }

    #[test]
    fn output_state_warns_past_perturbative_range() {
        let drive = fig_drive(0.62);
        let env = ThermalEnvironment::new(0.050, OccupationConvention::Calibrated).unwrap();
        let state = output_state(&drive, &env).unwrap();
        assert!(matches!(
            state.warnings()[..],
            [Diagnostic::NonPerturbative { .. }]
        ));
    }

    #[test]
    fn reconstruction_invariant() {
        // A state rebuilt from its own (f, n_th) reproduces the stored matrix.
        let drive = fig_drive(0.3);
        let env = ThermalEnvironment::new(0.040, OccupationConvention::Calibrated).unwrap();
        let state = output_state(&drive, &env).unwrap();
        let rebuilt = dce_covariance(state.f(), state.n_th()).unwrap();
        let max_diff = (state.cm().matrix() - rebuilt.matrix())
            .iter()
            .fold(0.0_f64, |m, &x| m.max(x.abs()));
        assert!(max_diff <= 1e-15, "reconstruction residual {max_diff}");
    }

    #[test]
    fn perturbative_negativity_values() {
        assert_eq!(perturbative_negativity(0.02, 0.02), 0.0);
        assert_relative_eq!(
            perturbative_negativity(0.01309, 6.71e-4),
            0.024838,
            max_relative = 1e-12
        );
        // entangled region closed at 50 mK for ε = 0.1
        assert_eq!(perturbative_negativity(0.01309, 0.016607), 0.0);
    }

    #[test]
    fn perturbative_discord_values() {
        let f = 0.013_f64;
        assert_eq!(perturbative_discord(f, 2.0_f64.sqrt() * f), 0.0);
        assert_relative_eq!(
            perturbative_discord(0.05, 0.0167),
            0.002360555,
            max_relative = 1e-12
        );
        assert_relative_eq!(perturbative_discord(0.05, 0.0), 0.0025, max_relative = 1e-15);
    }

    #[test]
    fn perturbative_coherence_values() {
        assert_eq!(perturbative_coherence(0.0, 0.1), 0.0);
        assert_relative_eq!(
            perturbative_coherence(0.05, 0.0167),
            0.021228654673243563,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            perturbative_coherence(0.01309, 6.71e-4),
            0.0025075828264679384,
            max_relative = 1e-12
        );
    }

    #[test]
    fn perturbative_coherence_ordering_at_experimental_point() {
        // √C > E > √D at ε = 0.1, T = 30 mK
        let (f, n) = (0.01309, 6.71e-4);
        let sqrt_c = perturbative_coherence(f, n).sqrt();
        let e = perturbative_negativity(f, n);
        let sqrt_d = perturbative_discord(f, n).sqrt();
        assert_relative_eq!(sqrt_c, 0.05007577, max_relative = 1e-6);
        assert!(sqrt_c > e && e > sqrt_d);
    }

    #[test]
    fn perturbative_coherence_zero_temperature_fallback() {
        let direct = perturbative_coherence(0.05, 0.0);
        assert_relative_eq!(direct, 0.019213091168534748, max_relative = 1e-9);
        let bundle = perturbative_measures(0.05, 0.0);
        assert_eq!(bundle.coherence, direct);
        assert!(bundle
            .diagnostics
            .iter()
            .any(|d| matches!(d, Diagnostic::CoherenceExactFallback)));
    }

    #[test]
    fn perturbative_threshold_zero_sets() {
        for f in [0.01, 0.04, 0.08] {
            assert_eq!(perturbative_negativity(f, f), 0.0);
            assert!(perturbative_negativity(f, f - 1e-9) > 0.0);
            let nd = 2.0_f64.sqrt() * f;
            assert_eq!(perturbative_discord(f, nd), 0.0);
            assert!(perturbative_discord(f, nd - 1e-9) > 0.0);
        }
    }
}
