use thiserror::Error;

use crate::paths::Position;

/// Crate-wide error type.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus rejected: {0}")]
    ReducibleModulus(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("field too large: q = {0} exceeds 2^16")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("code too large: {0}")]
    CodeTooLarge(String),
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("inconsistent assignment: {0}")]
    InconsistentAssignment(String),
    #[error("map is not injective")]
    NotInjective,
    #[error("not a closed simple path: {0}")]
    NotClosedSimple(String),
    #[error("no rank-drop value exists (corrupted input)")]
    NoDropValue,
    #[error("support is not irreducible")]
    NotIrreducible,
    #[error("scalars must be nonzero")]
    ZeroScalar,
    #[error("position {0} is not in the support")]
    NotInSupport(Position),
    #[error("position {0} does not lie on any closed simple path")]
    NotOnClosedSimplePath(Position),
    #[error("assignment is not an isometry: position {position} requires scalar {expected} but the diagonal pair gives {actual}")]
    NotAnIsometry {
        position: Position,
        expected: u32,
        actual: u32,
    },
    #[error("operation requires GF(2), got GF({0})")]
    WrongField(u32),
    #[error("code is not generated by rank-one elements")]
    NotRankOneGenerated,
    #[error("witness fails verification: {0}")]
    WitnessInvalid(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("unsupported fixture parameters: {0}")]
    UnsupportedParams(String),
    #[error("primitive polynomial search exhausted (bug)")]
    SearchExhausted,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable error kind for JSON reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ReducibleModulus(_) => "ReducibleModulus",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::FieldMismatch => "FieldMismatch",
            Error::AmbientMismatch(_, _) => "AmbientMismatch",
            Error::SearchSpaceTooLarge(_) => "SearchSpaceTooLarge",
            Error::CodeTooLarge(_) => "CodeTooLarge",
            Error::ZeroCode => "ZeroCode",
            Error::InconsistentAssignment(_) => "InconsistentAssignment",
            Error::NotInjective => "NotInjective",
            Error::NotClosedSimple(_) => "NotClosedSimple",
            Error::NoDropValue => "NoDropValue",
            Error::NotIrreducible => "NotIrreducible",
            Error::ZeroScalar => "ZeroScalar",
            Error::NotInSupport(_) => "NotInSupport",
            Error::NotOnClosedSimplePath(_) => "NotOnClosedSimplePath",
            Error::NotAnIsometry { .. } => "NotAnIsometry",
            Error::WrongField(_) => "WrongField",
            Error::NotRankOneGenerated => "NotRankOneGenerated",
            Error::WitnessInvalid(_) => "WitnessInvalid",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::UnsupportedParams(_) => "UnsupportedParams",
            Error::SearchExhausted => "SearchExhausted",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True when the error reports a resource cap, not bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::SearchSpaceTooLarge(_) | Error::CodeTooLarge(_) | Error::FieldTooLarge(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
