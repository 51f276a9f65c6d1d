use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("defining polynomial is not monic")]
    NotMonic,
    #[error("defining polynomial has a coefficient that is not {0}-integral")]
    NotIntegral(u64),
    #[error("rejected defining polynomial: {0}")]
    BadExtension(String),
    #[error("not an Eisenstein polynomial: {0}")]
    NotEisenstein(String),
    #[error("element has negative valuation and no residue")]
    NegativeValuation,
    #[error("zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("degree {found} not allowed here (expected {expected})")]
    Degree { expected: String, found: usize },
    #[error("incomparable fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("unsupported field kind for this operation: {0}")]
    UnsupportedKind(String),
    #[error("type-1 points lie outside the building")]
    TypeOnePoint,
    #[error("point lies on the apartment; no moving unit exists")]
    OnApartment,
    #[error("no moving unit found among the searched residue representatives")]
    NoWitness,
    #[error("norm family or rank mismatch: {0}")]
    NormMismatch(String),
    #[error("invalid norm data: {0}")]
    InvalidNorm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
