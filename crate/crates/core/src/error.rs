use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument is outside the domain of the operation.
    #[error("invalid {name}: {detail}")]
    InvalidArgument { name: &'static str, detail: String },

    #[error("{name} is not a unit vector (|v| = {norm})")]
    NotUnitVector { name: &'static str, norm: f64 },

    #[error("{operation} requires the classical regime (hbar*omega/T = {ratio:.4} >= {limit}); use the full quadrature form instead")]
    QuantumRegime {
        operation: &'static str,
        ratio: f64,
        limit: f64,
    },

    #[error("Coulomb logarithm is not positive (C1*x_min = {c1_xmin:.4e} >= 1)")]
    CoulombLogarithm { c1_xmin: f64 },

    #[error("distortion parameter beta = {beta:.4} is outside the perturbative range (< 1)")]
    DistortionTooLarge { beta: f64 },

    #[error("quadrature did not converge: value {value:.6e}, error estimate {error:.3e}, {intervals} intervals, {evaluations} evaluations")]
    QuadratureNonConvergence {
        value: f64,
        error: f64,
        intervals: usize,
        evaluations: usize,
    },

    #[error("oracle did not reach relative error {target:.1e} within its node budget (estimate {estimate:.3e} at {nodes} nodes)")]
    OracleNonConvergence {
        target: f64,
        estimate: f64,
        nodes: usize,
    },

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn arg(name: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            detail: detail.into(),
        }
    }

    /// Short machine-readable tag, used by the CLI error report.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument { .. } => "invalid-argument",
            Error::NotUnitVector { .. } => "not-unit-vector",
            Error::QuantumRegime { .. } => "quantum-regime",
            Error::CoulombLogarithm { .. } => "coulomb-logarithm",
            Error::DistortionTooLarge { .. } => "distortion-too-large",
            Error::QuadratureNonConvergence { .. } => "quadrature-non-convergence",
            Error::OracleNonConvergence { .. } => "oracle-non-convergence",
            Error::Config { .. } => "config",
            Error::Io { .. } => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}

/// Rejects non-finite or non-positive values.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::arg(name, format!("must be finite and > 0, got {value}")))
    }
}
