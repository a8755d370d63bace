use thiserror::Error;

/// Errors raised by the algebra, construction and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("requested index {requested} exceeds available order {available}")]
    OrderExceeded { requested: usize, available: usize },
    #[error("base point does not lie on z^2 + z = x^3")]
    BasePointNotOnCurve,
    #[error("point does not lie on z^2 + z = x^3")]
    PointNotOnCurve,
    #[error("element is not in the required subfield: {0}")]
    NotInSubfield(String),
    #[error("non-invertible denominator in {0}")]
    NonInvertibleDenominator(&'static str),
    #[error("insufficient derivation data: need {needed} entries, have {have}")]
    InsufficientData { needed: usize, have: usize },
    #[error("choice for block {block} is not in F(t^{stride})")]
    ChoiceNotInSubfield { block: usize, stride: usize },
    #[error("produced coefficient xi_{index} is not in L^2 F(t)")]
    MembershipViolation { index: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("stored z-table digest does not match recomputation")]
    DigestMismatch,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
