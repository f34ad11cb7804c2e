use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring {0} is infinite; exhaustive computation is not available")]
    InfiniteRing(String),

    #[error("unsupported ring descriptor: {0}")]
    UnsupportedDescriptor(String),

    #[error("operation not supported: {0}")]
    Unsupported(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at byte {offset}: {message}; expected one of: {}", expected.join(", "))]
    Parse {
        offset: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("semantic error: {0}")]
    Semantic(String),

    #[error("{0} is not an element of {1}")]
    NotAnElement(String, String),

    #[error("elements are not comaximal: aR + bR != R")]
    NotComaximal,

    #[error("no witness exists: {0}")]
    NoWitness(String),

    #[error("construction failed at step {step}: {reason}")]
    ConstructionFailed { step: u8, reason: String },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("{0} is not a unit")]
    NotUnit(String),

    #[error("input must be nonzero")]
    ZeroInput,

    #[error("no decomposition into two units: {0}")]
    NoDecomposition(String),

    #[error("no factorization: {0}")]
    NoFactorization(String),

    #[error("{0} is not in S: constant coefficient must lie in Z[w]")]
    NotInS(String),

    #[error("not Hermite: orbit of size {orbit} contains no reduced vector")]
    NotHermite { orbit: usize },

    #[error("not reducible: orbit of size {orbit} under elementary and diagonal generators has no diagonal matrix satisfying the chain condition")]
    NotReducible { orbit: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>, expected: &[&str]) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}
