use thiserror::Error;

/// Errors raised by the polynomial, field, curve and locus kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}: zero polynomial not allowed")]
    ZeroPolynomial(&'static str),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("both polynomials vanish modulo {0}")]
    BothVanishModP(u64),

    #[error("polynomial vanishes identically modulo {0}")]
    VanishesModP(u64),

    #[error("parse error in {input:?}: {message}")]
    Parse { input: String, message: String },

    #[error("elements belong to different field contexts")]
    ContextMismatch,

    #[error("zero element where a unit is required")]
    ZeroElement,

    #[error("field of order {0} exceeds the 2^32 limit")]
    FieldTooLarge(u128),

    #[error("no irreducible polynomial found (p = {p}, d = {d})")]
    NoIrreducible { p: u64, d: u32 },

    #[error("bad reduction modulo {p}: {reason}")]
    BadReduction { p: u64, reason: String },

    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("{what}: budget exceeded ({needed} > {budget})")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("relation polynomial vanishes identically: the functions are multiplicatively dependent")]
    MultiplicativelyDependent,

    #[error("theta vanishes identically: the points are generically linearly dependent")]
    GenericallyDependent,

    #[error("zero resultant for k = {k:?}, l = {l:?}: candidate W is missing a common factor")]
    ZeroResultant { k: Vec<i64>, l: Vec<i64> },

    #[error("integer {0} is too large to factor (limit 2^128)")]
    FactorizationTooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        message: message.into(),
    }
}
