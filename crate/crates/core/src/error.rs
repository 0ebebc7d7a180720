use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the evaluators in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series or expansion did not converge: {0}")]
    NonConvergent(String),
    #[error("argument {0} is a pole (nonpositive integer)")]
    PoleArgument(Complex64),
    #[error("evaluation point {0} lies on a singularity")]
    SingularPoint(Complex64),
    #[error("invalid shear flow: {0}")]
    InvalidShear(String),
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error("quadrature exceeded maximum depth (estimate {estimate}, error {error:e})")]
    MaxDepthExceeded { estimate: Complex64, error: f64 },
    #[error("boundary system is numerically rank zero")]
    DegenerateSystem,
    #[error("argument {0} lies outside the asymptotic sector")]
    SectorViolation(Complex64),
    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),
    #[error("no asymptotic form for mu = {0}; use the exact evaluator")]
    UnsupportedMu(Complex64),
    #[error("non-finite result: {0}")]
    NonFinite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(value: Complex64, what: &str) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
