use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature failed after {subdivisions} subdivisions (best estimate {estimate}, error estimate {abs_error})")]
    QuadratureFailed {
        estimate: f64,
        abs_error: f64,
        subdivisions: usize,
    },

    #[error("function returned NaN at x = {x}")]
    NanValue { x: f64 },

    #[error("bracket invalid on [{lo}, {hi}]: {reason}")]
    BracketInvalid { lo: f64, hi: f64, reason: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{0}")]
    Constraint(String),

    #[error("non-differentiable point x = {x}")]
    NonDifferentiable { x: f64 },

    #[error("density vanishes at x = {x}")]
    ZeroDensity { x: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// Short machine-readable tag used in JSON error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::QuadratureFailed { .. } => "quadrature_failed",
            Error::NanValue { .. } => "nan",
            Error::BracketInvalid { .. } => "bracket_invalid",
            Error::Parse { .. } => "parse",
            Error::Constraint(_) => "constraint",
            Error::NonDifferentiable { .. } => "non_differentiable",
            Error::ZeroDensity { .. } => "zero_density",
            Error::Precondition(_) => "precondition",
        }
    }
}
