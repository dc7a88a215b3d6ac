use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("field degree {0} out of range 1..=32")]
    FieldDegree(u32),

    #[error("modulus {modulus} is reducible (factor {factor})")]
    ReducibleModulus { modulus: String, factor: String },

    #[error("modulus {modulus} has degree {got}, expected {expected}")]
    ModulusDegree { modulus: String, expected: u32, got: i64 },

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("constant polynomial {0} has no irreducibility status")]
    ConstantPolynomial(String),

    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),

    #[error("zero function has no valuation or divisor")]
    ZeroFunction,

    #[error("residue field of degree {0} exceeds the supported 32 bits")]
    ResidueFieldTooLarge(u32),

    #[error("point {0} is not on the curve")]
    NotOnCurve(String),

    #[error("invalid base curve: {0}")]
    InvalidCurve(String),

    #[error("unrepresentable place: {0}")]
    UnrepresentablePlace(String),

    #[error("invalid tower: character {mask:#b} is everywhere unramified")]
    DependentCharacter { mask: u64 },

    #[error("function is unramified everywhere; its cover is not geometrically irreducible")]
    UnramifiedCover,

    #[error("extension degree n = {0} out of range")]
    DegreeOutOfRange(u32),

    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("subspace is not proper")]
    SubspaceNotProper,

    #[error("tower algebra coefficient left the base field at T^{0}")]
    NotInBaseField(usize),

    #[error("coefficient at T^{0} is not invariant under y -> y+1")]
    NotInvariant(usize),

    #[error("unknown verification target {0:?}")]
    UnknownTarget(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
