use thiserror::Error;

/// Errors raised by series arithmetic, modular-form construction and the
/// table/frame-shape parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series is not compositionally invertible (valuation must be exactly 1)")]
    NotInvertible,
    #[error("fractional power requires constant term exactly 1")]
    NonUnitConstant,
    #[error("expected a q-expansion with offset {expected}, found {found}")]
    WrongOffset { expected: String, found: String },
    #[error("offsets {0} and {1} differ by a non-integer or negative amount")]
    IncompatibleOffsets(String, String),
    #[error("q-expansion vanishes to its truncation order")]
    VanishingExpansion,
    #[error("unknown Hauptmodul label `{0}`")]
    UnknownLabel(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown D3 operator `{0}`")]
    UnknownOperator(String),
    #[error("family {0} has no canonical shift; pass one explicitly")]
    FreeShift(String),
    #[error("identity admits no solution at q-order {order}: {detail}")]
    InconsistentIdentity { order: usize, detail: String },
    #[error("zero pivot while solving at order {0}")]
    ZeroPivot(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("frame shape {shape} has degree {degree}, expected 24")]
    SumNot24 { shape: String, degree: i64 },
    #[error("integer overflow computing coefficient {0}")]
    Overflow(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
