use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse diagram {0:?}")]
    BadDiagram(String),
    #[error("series {0} requires the extended (non-simply-laced) capability")]
    ExtendedRequired(char),
    #[error("vertex {vertex} is outside 1..={rank}")]
    VertexOutOfRange { vertex: usize, rank: usize },
    #[error("word is not a reduced word for w0: {0}")]
    NotLongestWord(String),
    #[error("word rejected: {reason} (failing prefix {prefix:?})")]
    WordRejected { reason: String, prefix: Vec<usize> },
    #[error("K must be a proper subset of the vertex set")]
    KEqualsI,
    #[error("J must be nonempty")]
    EmptyJ,
    #[error("malformed exchange matrix: {0}")]
    MalformedMatrix(String),
    #[error("vertex {0:?} is not mutable")]
    NotMutable(String),
    #[error("exchange relation for {0:?} is not exactly divisible")]
    InexactDivision(String),
    #[error("cap of {0} seeds exceeded")]
    CapExceeded(usize),
    #[error("missing data: {0}")]
    Missing(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("polynomial is not invariant under e_{0}^dagger, so it does not lie in C[N_K]")]
    NotKInvariant(usize),
    #[error("no monomial-wise lift: monomial degree exceeds the minimal degree at j = {j}")]
    CancellationCase { j: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BadDiagram(_) => "bad_diagram",
            Error::ExtendedRequired(_) => "extended_required",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::NotLongestWord(_) => "not_longest_word",
            Error::WordRejected { .. } => "word_rejected",
            Error::KEqualsI => "k_equals_i",
            Error::EmptyJ => "empty_j",
            Error::MalformedMatrix(_) => "malformed_matrix",
            Error::NotMutable(_) => "not_mutable",
            Error::InexactDivision(_) => "inexact_division",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::Missing(_) => "missing",
            Error::SizeMismatch(_) => "size_mismatch",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotKInvariant(_) => "not_k_invariant",
            Error::CancellationCase { .. } => "cancellation_case",
            Error::Invalid(_) => "invalid",
        }
    }
}
