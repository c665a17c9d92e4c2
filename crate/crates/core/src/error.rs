use thiserror::Error;

use crate::report::literal::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is not supported, p must be at least 3")]
    PrimeTooSmall(u64),
    #[error("precision {0} is below the minimum of 4 digits")]
    PrecisionTooSmall(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision underflow: value is only known to be O(p^{known})")]
    PrecisionUnderflow { known: i64 },
    #[error("requested precision {requested} exceeds the known precision {available}")]
    PrecisionExceeded { requested: i64, available: i64 },
    #[error("{value} has no square root in Q_p; adjoin a root of {suggested_modulus}")]
    NonResidue {
        value: String,
        suggested_modulus: String,
    },
    #[error("cannot certify irreducibility of {0}")]
    CannotCertify(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("Newton precondition unmet: v(g(x0)) = {residual} is not greater than 2 v(g'(x0)) = 2 * {derivative}")]
    LiftPrecondition { residual: String, derivative: String },
    #[error("Newton lifting did not reach precision {target} within {iterations} iterations")]
    PrecisionCeiling { target: i64, iterations: u32 },
    #[error("the {m}-th roots of unity need an unramified extension of degree {suggested_degree}")]
    RootsOfUnityNotInField { m: u64, suggested_degree: u32 },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
