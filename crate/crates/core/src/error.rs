use thiserror::Error;

use crate::model::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field order {p}^{s} exceeds the configured maximum {max}")]
    OrderTooLarge { p: u64, s: u32, max: u64 },

    #[error("element code {code} is out of range for a field of order {q}")]
    BadElement { code: u64, q: u64 },

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("division by the zero polynomial")]
    ZeroPolynomial,

    #[error("operation needs a polynomial of degree at least 1")]
    ConstantPolynomial,

    #[error("{what}: {needed} evaluations needed, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    #[error("instance violates hypotheses: {0:?}")]
    Hypothesis(Vec<Violation>),

    #[error("malformed instance: {0}")]
    Malformed(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("extension probes need integer (prime subfield) coefficients")]
    MissingIntegerCoefficients,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid sweep spec: {0}")]
    Spec(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
