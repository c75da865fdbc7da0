use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("label `{0}` has dimension 0")]
    EmptyLabel(String),

    #[error("basis index {index} out of range (total dimension {total})")]
    IndexOutOfRange { index: usize, total: usize },

    #[error("local index {k} out of range for label `{label}` of dimension {dim}")]
    LocalIndexOutOfRange { label: String, k: usize, dim: usize },

    #[error("malformed rational: {0}")]
    MalformedRational(String),

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("the distinguished zero (or its tilde) may not appear in the first argument of psi")]
    ZeroInPsiDomain,

    #[error("label `{0}` is the distinguished zero")]
    ZeroLabelArgument(String),

    #[error("not a connection class: {0:?}")]
    NotAClass(Vec<String>),

    #[error("algebra failed validation: {0}")]
    Invalid(String),

    #[error("hypotheses not met: {}", .0.join(", "))]
    HypothesesNotMet(Vec<String>),

    #[error("product leaves the summand it was restricted to")]
    NotClosed,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
