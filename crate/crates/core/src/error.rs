use thiserror::Error;

/// Errors surfaced by the core engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable context mismatch: {0}")]
    ContextMismatch(String),
    #[error("series variable mismatch: `{0}` vs `{1}`")]
    TagMismatch(String, String),
    #[error("cannot invert a series with zero constant term")]
    ZeroConstantTerm,
    #[error("exponent {0} does not fit the monomial exponent range")]
    ExponentOverflow(u64),

    #[error("graph has no vertices")]
    NoVertices,
    #[error("edge {edge} has endpoint {endpoint} outside 1..={vertices}")]
    EndpointOutOfRange {
        edge: usize,
        endpoint: usize,
        vertices: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("length mismatch: expected {expected}, got {got} ({what})")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("loop edges carry no x-dependence (vertex {0} joined to itself)")]
    LoopRequested(usize),
    #[error("invalid edge degree: {0}")]
    InvalidDegree(String),
    #[error("vertex order does not cover vertex {0}")]
    MissingVertex(usize),

    #[error("catalog graphs have mixed genus ({0} vs {1})")]
    GenusMismatch(usize, usize),
    #[error("automorphism order must be positive")]
    InvalidAutomorphismOrder,
    #[error("invalid psi data: {0}")]
    PsiData(String),

    #[error("unsupported Eisenstein weight {0} (expected 2, 4 or 6)")]
    UnsupportedWeight(u32),
    #[error("invalid quasimodular weight {0} (must be even and positive)")]
    InvalidWeight(u32),
    #[error("singular linear system: basis of weight {0} is not determined by the leading coefficients")]
    SingularSystem(u32),
    #[error("insufficient coefficients: need at least {needed}, got {got}")]
    InsufficientCoefficients { needed: usize, got: usize },

    #[error("unknown catalog graph `{0}`")]
    UnknownCatalog(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ContextMismatch(_) => "context_mismatch",
            Error::TagMismatch(..) => "tag_mismatch",
            Error::ZeroConstantTerm => "zero_constant_term",
            Error::ExponentOverflow(_) => "exponent_overflow",
            Error::NoVertices => "no_vertices",
            Error::EndpointOutOfRange { .. } => "endpoint_out_of_range",
            Error::Disconnected => "disconnected",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::SizeLimit(_) => "size_limit",
            Error::LoopRequested(_) => "loop_requested",
            Error::InvalidDegree(_) => "invalid_degree",
            Error::MissingVertex(_) => "missing_vertex",
            Error::GenusMismatch(..) => "genus_mismatch",
            Error::InvalidAutomorphismOrder => "invalid_automorphism_order",
            Error::PsiData(_) => "psi_data",
            Error::UnsupportedWeight(_) => "unsupported_weight",
            Error::InvalidWeight(_) => "invalid_weight",
            Error::SingularSystem(_) => "singular_system",
            Error::InsufficientCoefficients { .. } => "insufficient_coefficients",
            Error::UnknownCatalog(_) => "unknown_catalog",
            Error::Parse(_) => "parse",
        }
    }

    /// True for errors caused by size guards rather than bad input.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::SizeLimit(_) | Error::ExponentOverflow(_))
    }

    /// True for errors that indicate a broken internal invariant.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ContextMismatch(_) | Error::TagMismatch(..))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
