use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands belong to different base fields")]
    FieldMismatch,

    #[error("defining polynomial must be monic")]
    NotMonic,

    #[error("defining polynomial is reducible: {0}")]
    Reducible(String),

    #[error("defining polynomial degree {0} exceeds the supported bound {1}")]
    DegreeTooLarge(usize, usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    #[error("symbol registry is frozen; no symbols or relations may be added")]
    RegistryFrozen,

    #[error("symbol registry must be frozen before solving")]
    RegistryNotFrozen,

    #[error("symbol not registered: {0}")]
    MissingSymbol(String),

    #[error("symbol already registered: {0}")]
    DuplicateSymbol(String),

    #[error("invalid rewrite relation: {0}")]
    BadRelation(String),

    #[error("scalar has a non-trivial denominator")]
    NonTrivialDenominator,

    #[error("operation does not support torsion: {0}")]
    TorsionPresent(String),

    #[error("triples live on different sides of the period equivalence")]
    SideMismatch,

    #[error("comparison map is not invertible: {0}")]
    NotIsomorphism(String),

    #[error("multiplicative generator not declared over this number field: {0}")]
    UndeclaredUnit(String),

    #[error("point does not lie on the curve: {0}")]
    NotOnCurve(String),

    #[error("elliptic curve is singular (discriminant is zero)")]
    SingularCurve,

    #[error("punctures must be pairwise distinct: {0}")]
    DuplicatePuncture(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
