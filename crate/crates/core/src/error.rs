use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
///
/// Arithmetic between values of *different* field contexts is a programming
/// error and panics; the variants here cover contract violations that a
/// caller can meaningfully hit with well-typed input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero input is not allowed for {op}")]
    ZeroInput { op: &'static str },

    #[error("the archimedean place carries no discrete valuation")]
    ArchimedeanValuation,

    #[error("q = {q} is not supported: the constant field cardinality must be a prime other than 2 and 3")]
    UnsupportedCardinality { q: u64 },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("polynomial is not monic irreducible: {0}")]
    NotIrreducible(String),

    #[error("place does not belong to this field context")]
    PlaceMismatch,

    #[error("mismatched field contexts")]
    MixedContexts,

    #[error("division by zero {what}")]
    DivisionByZero { what: &'static str },

    #[error("all three coordinates are zero")]
    ZeroTriple,

    #[error("coordinates must be integral for {op}")]
    NonIntegral { op: &'static str },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("point does not lie on the curve")]
    OffCurve,

    #[error("torsion cap must be at least 1")]
    InvalidCap,

    #[error("curve is singular (discriminant is zero)")]
    SingularCurve,

    #[error("height bound unsupported: {0}")]
    BoundRange(String),

    #[error("predicate is not scaling invariant: value differs on {triple} under lambda = {lambda}")]
    PredicateNotInvariant { triple: String, lambda: String },

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("torsion order {order} has no column in the census schema (orders 2-10 and 12)")]
    OrderOutsideSchema { order: u32 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
