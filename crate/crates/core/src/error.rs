use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {point} lies outside the domain: {reason}")]
    Domain { point: Complex64, reason: String },

    #[error("function vanishes near {point} (|f(z)/z| = {value:e})")]
    ZeroOfFunction { point: Complex64, value: f64 },

    #[error("derivative vanishes near {point} (|f'| = {value:e})")]
    ZeroOfDerivative { point: Complex64, value: f64 },

    #[error("power base vanishes along the chain path at z = {point}, t = {t}")]
    BraceVanishes { point: Complex64, t: f64 },

    #[error("transition function has a pole (P = 1) at z = {point}, t = {t}")]
    Pole { point: Complex64, t: f64 },

    #[error("non-finite value encountered at {point}")]
    NonFinite { point: Complex64 },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("normalization error: {0}")]
    Normalization(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("criterion not satisfied: {0}")]
    CriterionFailed(String),

    #[error("no solution: {0}")]
    NoSolution(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
