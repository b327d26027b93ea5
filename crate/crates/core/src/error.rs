use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("division by zero in k")]
    DivisionByZero,
    #[error("polynomial is constant in the eliminated variable")]
    ConstantInVariable,
    #[error("invalid algebraic number: {0}")]
    InvalidAlgebraic(String),
    #[error("invalid branch: {0}")]
    InvalidBranch(String),
    #[error("branch not eventually increasing to +inf")]
    NotIncreasingToInfinity,
    #[error("branch division by an eventually-zero branch")]
    BranchDivisionByZero,
    #[error("composition leaves the outer branch's domain: {0}")]
    CompositionDomain(String),
    #[error("denominator vanishes identically along the curve")]
    DenominatorAlongCurve,
    #[error("curve search exhausted for {map} on {cell}")]
    CurveSearchExhausted { map: String, cell: String },
    #[error("invalid end-cell: {0}")]
    InvalidCell(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("root index {index} out of range ({count} real roots)")]
    RootIndexOutOfRange { index: usize, count: usize },
    #[error("canonical enumeration cap exceeded before reaching enumeration index {index}")]
    EnumerationCap { index: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("tower document error: {0}")]
    Document(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
