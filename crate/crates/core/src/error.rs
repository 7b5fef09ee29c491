use thiserror::Error;

use crate::sigexpr::{ParseError, ParseErrorKind};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// A parameter outside the domain its signal is defined on (e.g. `sinc(0)`).
    #[error("parameter domain: {0}")]
    Domain(String),
    #[error("not differentiable: {0}")]
    NotDifferentiable(String),
    #[error("not evaluable: {0}")]
    NotEvaluable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function is not strictly proper")]
    NotStrictlyProper,
    #[error("operator order must be at least 1")]
    OperatorOrder,
    #[error("root iteration did not converge (degree {degree}, {iterations} iterations)")]
    RootNonConvergence { degree: usize, iterations: u32 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Numerical failures, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::RootNonConvergence { .. })
    }

    /// Short stable tag used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(e) if matches!(e.kind, ParseErrorKind::Domain(_)) => "domain",
            Error::Parse(_) => "parse",
            Error::Domain(_) => "domain",
            Error::NotDifferentiable(_) => "not_differentiable",
            Error::NotEvaluable(_) => "not_evaluable",
            Error::Unsupported(_) => "unsupported",
            Error::DivisionByZero => "division_by_zero",
            Error::NotStrictlyProper => "not_strictly_proper",
            Error::OperatorOrder => "operator_order",
            Error::RootNonConvergence { .. } => "root_non_convergence",
            Error::Invalid(_) => "invalid",
            Error::Io(_) => "io",
        }
    }
}
