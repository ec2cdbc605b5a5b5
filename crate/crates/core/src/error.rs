use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the mathematical kernels.
///
/// Every variant carries a stable kebab-case name (see [`Error::name`]) that
/// the command line front end reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("element has no square root in the ambient field: {0}")]
    NoSquareRoot(String),
    #[error("quadratic form does not have rank exactly 2 (rank {0})")]
    NotCorankOne(usize),
    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),
    #[error("input is not normalized to diag(1,1,0)")]
    NotNormalized,
    #[error("matrices violate the defining relations: {0}")]
    NotARepresentation(String),
    #[error("kernel is not a line (dimension {0})")]
    KernelNotALine(usize),
    #[error("point does not lie on the discriminant")]
    NotOnDiscriminant,
    #[error("curve is contained in the discriminant")]
    CurveInDiscriminant,
    #[error("invalid parametrized curve: {0}")]
    InvalidCurve(String),
    #[error("curve does not meet the discriminant transversally")]
    OutsideUd,
    #[error("fibre of corank 2 at an intersection point")]
    NotSimpleDegeneration,
    #[error("subset of odd cardinality is not a group element")]
    NotAGroupElement,
    #[error("module data belong to different curve contexts")]
    ContextMismatch,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("line bundle shape is not supported: {0}")]
    UnsupportedLineBundle(String),
    #[error("branch polynomial is not squarefree")]
    CoverSingular,
    #[error("value is not a root of the branch polynomial")]
    NotARoot,
    #[error("entry ({i},{j}) has the wrong degree: expected {expected}, found {found}")]
    DegreeMismatch {
        i: usize,
        j: usize,
        expected: i64,
        found: i64,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Aborted(String),
}

impl Error {
    /// Stable machine-readable name of the error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid-field",
            Error::CharacteristicTwo => "characteristic-two",
            Error::RingMismatch => "ring-mismatch",
            Error::ZeroPolynomial => "zero-polynomial",
            Error::NoSquareRoot(_) => "no-square-root",
            Error::NotCorankOne(_) => "not-corank-one",
            Error::EnumerationBound(_) => "enumeration-bound",
            Error::NotNormalized => "not-normalized",
            Error::NotARepresentation(_) => "not-a-representation",
            Error::KernelNotALine(_) => "kernel-not-a-line",
            Error::NotOnDiscriminant => "not-on-discriminant",
            Error::CurveInDiscriminant => "curve-in-discriminant",
            Error::InvalidCurve(_) => "invalid-curve",
            Error::OutsideUd => "outside-U_d",
            Error::NotSimpleDegeneration => "not-simple-degeneration",
            Error::NotAGroupElement => "not-a-group-element",
            Error::ContextMismatch => "context-mismatch",
            Error::IndexOutOfRange(_) => "index-out-of-range",
            Error::UnsupportedLineBundle(_) => "unsupported-line-bundle",
            Error::CoverSingular => "cover-singular",
            Error::NotARoot => "not-a-root",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::Parse { .. } => "parse-error",
            Error::Aborted(_) => "aborted",
        }
    }

    /// Parse and format errors, as opposed to violated mathematical
    /// preconditions.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::DegreeMismatch { .. })
    }
}
