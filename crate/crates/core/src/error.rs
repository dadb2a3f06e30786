use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different fields or algebras")]
    FieldMismatch,

    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,

    #[error("ground fields differ: F_{0} vs F_{1}")]
    PrimeMismatch(u64, u64),

    /// The classic monogenicity obstruction: a degree class asks for more
    /// distinct irreducible factors than exist.
    #[error(
        "infeasible: degree-{degree} class needs {needed} distinct irreducibles \
         but only phi = {available} monic irreducibles of degree {degree} exist over F_{p}"
    )]
    Infeasible {
        p: u64,
        degree: usize,
        needed: usize,
        available: num_bigint::BigUint,
    },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: String,
        cap: u64,
    },

    #[error("algebra forms differ")]
    FormMismatch,

    #[error("slot {slot} out of range (algebra has {slots} slots)")]
    SlotOutOfRange { slot: usize, slots: usize },

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid canonical form: {0}")]
    InvalidForm(String),

    #[error("invalid automorphism: {0}")]
    InvalidAut(String),

    #[error("json: {0}")]
    Json(String),

    #[error("rank check failed: rank {rank} < dimension {dim}")]
    RankDeficient { rank: usize, dim: usize },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
