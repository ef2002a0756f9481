use thiserror::Error;

/// Errors raised by the library.
///
/// Mathematical negatives (a degenerate germ, an invalid semigroup) are
/// reported as values, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("polynomials live in different contexts or fields")]
    ContextMismatch,
    #[error("empty generator list")]
    EmptyInput,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("weight vector must be strictly positive with one entry per variable")]
    BadWeights,
    #[error("division by zero")]
    DivisionByZero,
    #[error("face does not belong to this diagram")]
    ForeignFace,
    #[error("covector entries must be strictly positive")]
    NonPositiveCovector,
    #[error("support point {0:?} lies below the C-diagram")]
    SupportOutsideDiagram(Vec<u32>),
    #[error("ideal is not of finite colength at the origin")]
    InfiniteColength,
    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,
    #[error("truncation order cap {0} exceeded without a certificate")]
    TruncationCapExceeded(u32),
    #[error("decomposition does not recompose the input")]
    DecompositionMismatch,
    #[error("operation requires characteristic != 2")]
    CharacteristicTwo,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("arithmetic overflow in exact integer geometry")]
    Overflow,
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
