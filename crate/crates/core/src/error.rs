use thiserror::Error;

/// Broad failure categories, used by the command line front end to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    Algorithm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("exponential requires a zero constant term")]
    ExpConstantTerm,
    #[error("logarithm requires constant term 1")]
    LogConstantTerm,
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(usize, usize),
    #[error("insufficient precision: need {need}, have {have}")]
    InsufficientPrecision { need: usize, have: usize },
    #[error("inconsistent Newton series: {0}")]
    InconsistentNewtonSeries(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(String),
    #[error("polynomial is constant in the main variable")]
    ConstantInMainVariable,
    #[error("numerator and denominator are not coprime")]
    NotCoprime,
    #[error("denominator vanishes at the origin")]
    SingularAtOrigin,
    #[error("bad evaluation point: {0}")]
    BadPoint(String),
    #[error("polynomial is divisible by the series variable")]
    DivisibleBySeriesVariable,
    #[error("pole at the origin: {0}")]
    PoleAtOrigin(String),
    #[error("no telescoper of order at most {0}")]
    NoTelescoper(usize),
    #[error("insufficient initial terms: need {need}, have {have}")]
    InsufficientInitialTerms { need: usize, have: usize },
    #[error("invalid step set: {0}")]
    InvalidStepSet(String),
    #[error("{message} at line {line}, column {column}")]
    Syntax {
        message: String,
        line: usize,
        column: usize,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("algorithm failure: {0}")]
    Algorithm(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. } | Error::UnknownVariable { .. } => ErrorClass::Parse,
            Error::NoTelescoper(_) | Error::Algorithm(_) => ErrorClass::Algorithm,
            _ => ErrorClass::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
