use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("weight parameter k must be positive, got {0}")]
    NonPositiveWeight(i64),
    #[error("Satake value is not on the unit circle")]
    NotUnitModulus,
    #[error("trace u = {0} lies outside [-2, 2]")]
    TraceOutOfRange(String),
    #[error("radicand mismatch: value lives in Q(sqrt({found})) but the point has p = {expected}")]
    RadicandMismatch { expected: u64, found: u64 },
    #[error("expression is not invariant under a <-> 1/a and cannot be evaluated from u alone")]
    NotSymmetric,
    #[error("expression depends on the Satake symbol a where an a-free value was required")]
    NotAFree,
    #[error("scale must be a single monomial, got {0}")]
    NonMonomialScale(String),
    #[error("series denominator must have constant term 1, got {0}")]
    ConstantTermNotOne(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("evaluation point is a pole of the expression")]
    PoleAtPoint,
    #[error("degenerate Satake value: roots {0} and {1} coincide")]
    DegenerateRoots(String, String),
    #[error("{0} is not exactly divisible by {1}")]
    NotDivisible(String, String),
    #[error("root multiplicity {0} is not supported (1 or 2 only)")]
    UnsupportedMultiplicity(u32),
    #[error("numerator data required: {0}")]
    NumeratorDataRequired(String),
    #[error("unknown genus-2 numerator variant {0:?} (expected \"printed\" or \"corrected\")")]
    UnknownVariant(String),
    #[error("Deligne bound violated at p = {p}: |a_f(p)| = {ap} exceeds 2 p^((2k-1)/2)")]
    DeligneViolation { p: u64, ap: String },
    #[error("eigenform key {0:?} is not a prime")]
    NonPrimeKey(String),
    #[error("prime {0} is missing from the eigenform data")]
    MissingPrime(u64),
    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("appendix row {row}: {msg}")]
    AppendixRow { row: usize, msg: String },
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
