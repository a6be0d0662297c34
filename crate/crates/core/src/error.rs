use num_complex::Complex64;
use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point lies on the branch circle (|complex distance| = {0:e})")]
    Singular(f64),
    #[error("imaginary time part must dominate the source radius: |u| = {u}, a = {a}")]
    NotTimelike { u: f64, a: f64 },
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("quadrature did not converge: estimate {value}, error bound {error:e}")]
    QuadratureNotConverged { value: Complex64, error: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("scenario: {0}")]
    Scenario(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
