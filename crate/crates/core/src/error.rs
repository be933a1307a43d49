use thiserror::Error;

/// Every failure the library can report. [`Error::name`] gives the stable
/// identifier used in structured CLI output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("invalid character at position {0}")]
    InvalidCharacter(usize),
    #[error("cycle length must be even")]
    OddLength,
    #[error("input too short: {0}")]
    TooShort(String),
    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} exceeds cap {limit}")]
    CapExceeded { what: String, limit: u64 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("weighted tournament lacks half loops")]
    MissingHalfLoops,
    #[error("invalid host: {0}")]
    InvalidHost(String),
    #[error("pattern component with an odd number of arcs")]
    OddComponent,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal assertion failed: {0}")]
    InternalAssertionFailed(String),
    #[error("eigensolver did not converge")]
    ConvergenceFailure,
    #[error("matrix entry outside [-1/2, 1/2]")]
    EntryRangeViolated,
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("even tensor power of a skew matrix is symmetric, not skew")]
    NotSkewForEvenPower,
    #[error("validity condition 2*sqrt(b)*(sqrt(a)+sqrt(1-a)) < 1/2 violated")]
    ValidityConditionViolated,
    #[error("perturbation must lie in [0, 1]")]
    InvalidDelta,
    #[error("entries leave [0, 1]: {0}")]
    RangeViolated(String),
    #[error("tree is not a caterpillar")]
    NotCaterpillar,
    #[error("vertex set is not independent")]
    NotIndependent,
    #[error("ratio chain discriminant 1 - 4*beta is negative")]
    DiscriminantNegative,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::InvalidCharacter(_) => "InvalidCharacter",
            Error::OddLength => "OddLength",
            Error::TooShort(_) => "TooShort",
            Error::InvalidDigraph(_) => "InvalidDigraph",
            Error::InvalidTree(_) => "InvalidTree",
            Error::Parse(_) => "ParseError",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::MissingHalfLoops => "MissingHalfLoops",
            Error::InvalidHost(_) => "InvalidHost",
            Error::OddComponent => "OddComponent",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::InternalAssertionFailed(_) => "InternalAssertionFailed",
            Error::ConvergenceFailure => "ConvergenceFailure",
            Error::EntryRangeViolated => "EntryRangeViolated",
            Error::UnknownName(_) => "UnknownName",
            Error::NotSkewForEvenPower => "NotSkewForEvenPower",
            Error::ValidityConditionViolated => "ValidityConditionViolated",
            Error::InvalidDelta => "InvalidDelta",
            Error::RangeViolated(_) => "RangeViolated",
            Error::NotCaterpillar => "NotCaterpillar",
            Error::NotIndependent => "NotIndependent",
            Error::DiscriminantNegative => "DiscriminantNegative",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    pub(crate) fn cap(what: impl Into<String>, limit: u64) -> Self {
        Error::CapExceeded { what: what.into(), limit }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
