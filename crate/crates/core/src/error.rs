use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("discriminant is zero: polynomial is not squarefree")]
    ZeroDiscriminant,

    #[error("{what} {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: String,
        cap: String,
    },

    #[error("bound too large: {0}")]
    BoundTooLarge(String),

    #[error("sieve bound {bound} is below D*N = {required}")]
    BoundBelowZone { bound: u64, required: u64 },

    #[error("ledger mismatch at p = {prime}: analytic {analytic}, sieved {sieved}")]
    LedgerMismatch {
        prime: u64,
        analytic: String,
        sieved: String,
    },

    #[error("factorization of {0} exhausted the rho iteration budget")]
    FactorTimeout(BigUint),

    #[error("divided difference is not an integer: {0}")]
    NonIntegral(String),

    #[error("evaluation routes disagree: defining sum {direct}, symmetric expansion {expanded}")]
    RouteMismatch { direct: String, expanded: String },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("oracle self-check failed: {0}")]
    OracleInconsistent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
