//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by the library.
///
/// Semidecision outcomes (`BudgetExceeded`, `CapExceeded`, `NotCertified`)
/// are deliberately distinct from genuine domain failures (`NotFree`,
/// `TorsionNotInvertible`, `IdentityFailed`): the former mean "undecided at
/// the configured bound", the latter are definite verdicts.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("negative valuation: {0} is not in V")]
    NegativeValuation(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    #[error("sharp quotient is not free: {0}")]
    NotFree(String),

    #[error("no eta-etaleness certificate found at n_max={n_max}, degree_cap={degree_cap}")]
    NotCertified { n_max: u32, degree_cap: u64 },

    #[error("no unit-content generator: {0}")]
    NoUnitContentGenerator(String),

    #[error("retries exhausted: {0}")]
    RetryExhausted(String),

    #[error("torsion order {order} is not invertible in residue characteristic {p}")]
    TorsionNotInvertible { order: String, p: String },

    #[error("identity failed ({which}): residual {residual}")]
    IdentityFailed { which: String, residual: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Machine-readable error code used in CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::NegativeValuation(_) => "negative_valuation",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::NotFree(_) => "not_free",
            Error::NotCertified { .. } => "not_certified",
            Error::NoUnitContentGenerator(_) => "no_unit_content_generator",
            Error::RetryExhausted(_) => "retry_exhausted",
            Error::TorsionNotInvertible { .. } => "torsion_not_invertible",
            Error::IdentityFailed { .. } => "identity_failed",
            Error::Parse(_) => "parse_error",
            Error::Precondition(_) => "precondition_violated",
        }
    }

    /// Process exit code for the CLI: 2 parse, 3 budget/cap, 1 everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::BudgetExceeded(_) | Error::CapExceeded(_) | Error::RetryExhausted(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
