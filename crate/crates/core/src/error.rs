use thiserror::Error;

/// Errors raised by the solvers and classifiers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integration failed: step size underflow at t = {t}")]
    StepUnderflow { t: f64 },

    #[error("integration failed: step budget exhausted at t = {t}")]
    StepBudget { t: f64 },

    #[error("quadrature did not converge (achieved error estimate {achieved:e})")]
    Quadrature { achieved: f64 },

    #[error("root search failed: {0}")]
    RootSearch(String),

    #[error("eigenvalue methods disagree: finite differences {fd}, Pruefer {prufer}")]
    MethodDisagreement { fd: f64, prufer: f64 },

    #[error("stability criterion inapplicable: lambda + alpha_1 = {margin} <= 0")]
    Inapplicable { margin: f64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of the numerical machinery (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Domain(_) | Error::Inapplicable { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
