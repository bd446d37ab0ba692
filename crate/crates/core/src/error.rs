use std::path::PathBuf;

use thiserror::Error;

use crate::order::Order;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("gamma function has a pole at {0}")]
    GammaPole(f64),

    #[error("power exponent {0} is not above -1")]
    NonIntegrableExponent(Order),

    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("exponent {0} is not in the kernel basis")]
    OutsideKernelBasis(Order),

    #[error("interval end must be positive, got {0}")]
    NonPositiveInterval(f64),

    #[error("grid needs at least 2 intervals, got {0}")]
    GridTooSmall(usize),

    #[error("right-hand side still has singular terms; minimum exponent {0}")]
    SingularRhs(Order),

    #[error("sampled data: {0}")]
    SampledData(String),

    #[error("right-hand side refers to {0:?}, which has not been loaded")]
    UnloadedRhs(PathBuf),

    #[error("discretization diagonal {0:e} is numerically singular")]
    IllConditioned(f64),

    #[error("Mittag-Leffler series did not converge within {0} terms")]
    SeriesDivergence(usize),

    #[error("Mittag-Leffler evaluation lost all precision at z = {0}")]
    PrecisionLoss(f64),

    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::IllConditioned(_)
                | Error::SeriesDivergence(_)
                | Error::PrecisionLoss(_)
                | Error::GammaPole(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
