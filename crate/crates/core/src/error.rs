use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter tuple failed validation; the payload names the inequality.
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("pair-counting work {work} exceeds the cap of {cap} counter increments")]
    ResourceExceeded { work: u128, cap: u64 },

    #[error("coupling mismatch: {0}")]
    CouplingMismatch(String),

    /// The kappa_v <= kappa_e <= delta chain failed. Always an algorithm bug.
    #[error("connectivity order violated: kappa_v={kappa_v}, kappa_e={kappa_e}, delta={delta}")]
    InternalOrderViolation { kappa_v: usize, kappa_e: usize, delta: usize },

    #[error("graph too large for brute force: n={n} exceeds {max}")]
    TooLarge { n: usize, max: usize },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("coupling lower bound K- = {k_minus} is not positive")]
    NegativeLowerBound { k_minus: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by the caller's parameters rather than by I/O or bugs.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::ConstraintViolated(_)
                | Error::Infeasible(_)
                | Error::DomainError(_)
                | Error::NegativeLowerBound { .. }
                | Error::CouplingMismatch(_)
                | Error::ResourceExceeded { .. }
        )
    }
}
