use thiserror::Error;

/// Errors raised by the zonal analysis library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("quadrature failed ({reason}); best estimate {best_estimate:e} with error {error_estimate:e}")]
    Quadrature {
        reason: QuadratureFailure,
        best_estimate: f64,
        error_estimate: f64,
    },

    #[error("spectral sum did not converge within {terms} terms (tail bound {tail_bound:e})")]
    Truncation { terms: usize, tail_bound: f64 },

    #[error("singular time: |sin(lambda t)| = {sin_abs:e} at lambda t = {lambda_t}")]
    SingularTime { lambda_t: f64, sin_abs: f64 },

    #[error("inconsistent quantum numbers: {0}")]
    QuantumNumbers(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureFailure {
    PanelBudget,
    NonFinite,
}

impl std::fmt::Display for QuadratureFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuadratureFailure::PanelBudget => write!(f, "panel budget exhausted"),
            QuadratureFailure::NonFinite => write!(f, "integrand returned a non-finite value"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
