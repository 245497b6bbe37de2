use thiserror::Error;

/// Errors for Gaussian-state construction and spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a Gaussian state needs at least one mode")]
    ZeroModes,

    #[error("matrix is {rows}x{cols}, expected square with even dimension")]
    BadDimensions { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max |A - A^T| = {defect:e})")]
    NotSymmetric { defect: f64 },

    #[error("operation requires {expected} modes, state has {got}")]
    WrongModeCount { expected: usize, got: usize },

    #[error("mode index {mode} out of range for {n_modes}-mode state")]
    ModeOutOfRange { mode: usize, n_modes: usize },

    #[error("occupation number must be non-negative, got {value}")]
    NegativeOccupation { value: f64 },

    #[error("parameter `{name}` out of range: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("temperature must be positive, got {kelvin} K")]
    NonPositiveTemperature { kelvin: f64 },

    #[error("eigenvalue routine failed (residual {residual:e})")]
    NumericalFailure { residual: f64 },
}
