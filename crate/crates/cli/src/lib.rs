//! Sweeps, threshold searches and reports for driven-waveguide pair
//! radiation, built on the `gaussian-dce` core.
//!
//! The CLI binary (`dce-sweep`) is a thin argument layer over this library;
//! everything here is callable in-process and fully deterministic, so the
//! emitted CSV for a fixed configuration is byte-identical across runs.

use gaussian_dce::dce::{DriveConfig, OccupationConvention, ThermalEnvironment};
use thiserror::Error;

pub mod config_file;
pub mod report;
pub mod sweep;
pub mod threshold;

pub use report::emit_report;
pub use sweep::{fig1_spec, fig2_spec, run_sweep, MeasureSelection, SweepSpec, SweepTable};
pub use threshold::{
    discord_threshold_ledger, find_threshold, ThresholdMeasure, ThresholdPipeline,
    ThresholdResult, ThresholdVariable,
};

/// Which evaluation route fills the measure columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    /// Full covariance-matrix evaluation.
    Exact,
    /// Leading-order closed forms.
    Perturbative,
    /// Exact values in the columns, leading-order values in the diagnostics
    /// column as `pert_*` tokens.
    Both,
}

impl Pipeline {
    pub fn label(self) -> &'static str {
        match self {
            Pipeline::Exact => "exact",
            Pipeline::Perturbative => "perturbative",
            Pipeline::Both => "both",
        }
    }
}

/// Output unit for entropic quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    pub fn label(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }

    /// Converts a value in nats to this unit.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

/// Fixed line parameters shared by every evaluation: drive frequency,
/// effective length, line speed of light, occupation convention.
#[derive(Debug, Clone, PartialEq)]
pub struct LineParams {
    /// Drive angular frequency ω_d, rad/s.
    pub omega_d: f64,
    /// Static effective length, m.
    pub l_eff0: f64,
    /// Line speed of light, m/s.
    pub v: f64,
    pub convention: OccupationConvention,
}

impl LineParams {
    /// The published experimental parameters: ω_d = 20π GHz (10 GHz drive),
    /// L_eff0 = 0.5 mm, v = 1.2e8 m/s, calibrated occupations.
    pub fn published() -> Self {
        Self {
            omega_d: 20.0 * std::f64::consts::PI * 1e9,
            l_eff0: 0.5e-3,
            v: 1.2e8,
            convention: OccupationConvention::Calibrated,
        }
    }

    pub fn drive(&self, epsilon: f64) -> Result<DriveConfig, CliError> {
        DriveConfig::new(epsilon, self.omega_d, self.l_eff0, self.v)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn environment(&self, temperature_mk: f64) -> Result<ThermalEnvironment, CliError> {
        ThermalEnvironment::new(temperature_mk * 1e-3, self.convention)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    /// Small parameter for a drive amplitude on this line.
    pub fn f_of_epsilon(&self, epsilon: f64) -> f64 {
        epsilon * self.l_eff0 * self.omega_d / (2.0 * self.v)
    }

    /// Mean thermal occupation at ω_d/2 for a temperature in mK.
    pub fn occupation_at_half_drive(&self, temperature_mk: f64) -> Result<f64, CliError> {
        let env = self.environment(temperature_mk)?;
        Ok(gaussian_dce::dce::thermal_occupation(
            &env,
            self.omega_d / 2.0,
        ))
    }

    pub fn convention_token(&self) -> &'static str {
        match self.convention {
            OccupationConvention::Calibrated => "paper",
            OccupationConvention::BoseEinstein => "be",
        }
    }
}

/// Errors split by exit code: configuration problems exit 2, numerical
/// failures exit 3.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(#[from] gaussian_dce::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 2,
        }
    }
}

/// Fixed-width scientific formatting used everywhere numbers are emitted:
/// nine significant digits, round-trippable through `f64` parsing.
pub fn format_value(x: f64) -> String {
    format!("{x:.8e}")
}

/// Build identifier baked in at compile time.
pub fn build_id() -> &'static str {
    env!("BUILD_GIT_DESCRIBE")
}
