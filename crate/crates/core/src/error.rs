use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has a sink, a regular graph is required")]
    NonRegularGraph,
    #[error("graph is not essential")]
    NotEssential,
    #[error("graph is not primitive")]
    NotPrimitive,
    #[error("vertex `{0}` is not an eliminable source")]
    NotAnEliminableSource(String),
    #[error("cannot eliminate the last vertex of a graph")]
    LastVertex,
    #[error("vertex `{0}` is a sink")]
    SinkVertex(String),
    #[error("vertex `{0}` receives no edge")]
    NoIncomingEdge(String),

    #[error("elements live over different graphs")]
    GraphMismatch,
    #[error("elements live over different coefficient rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("element is not homogeneous of degree zero")]
    NotDegreeZero,
    #[error("cannot pad a monomial ending at sink `{0}`")]
    PaddingNeedsRegular(String),
    #[error("element needs stage {need}, requested stage {have}")]
    StageTooSmall { have: usize, need: usize },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("unsupported coefficient field: {0}")]
    UnsupportedCoefficientField(String),
    #[error("stage cap {0} exceeded")]
    StageCapExceeded(usize),

    #[error("homomorphism has not been verified")]
    UnverifiedHom,
    #[error("corner condition failed for edge `{0}`")]
    CornerConditionFailed(String),
    #[error("invalid bound: {0}")]
    InvalidBound(String),
}

impl Error {
    /// Stable short identifier used by the command-line diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Syntax { .. } => "syntax",
            Error::UnknownGenerator(_) => "unknown-generator",
            Error::UnknownVertex(_) => "unknown-vertex",
            Error::UnknownEdge(_) => "unknown-edge",
            Error::InvalidGraph(_) => "invalid-graph",
            Error::NonRegularGraph => "non-regular-graph",
            Error::NotEssential => "not-essential",
            Error::NotPrimitive => "not-primitive",
            Error::NotAnEliminableSource(_) => "not-an-eliminable-source",
            Error::LastVertex => "last-vertex",
            Error::SinkVertex(_) => "sink-vertex",
            Error::NoIncomingEdge(_) => "no-incoming-edge",
            Error::GraphMismatch => "graph-mismatch",
            Error::RingMismatch => "ring-mismatch",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::NotDegreeZero => "not-degree-zero",
            Error::PaddingNeedsRegular(_) => "padding-needs-regular",
            Error::StageTooSmall { .. } => "stage-too-small",
            Error::NotIdempotent => "not-idempotent",
            Error::NotAUnit => "not-a-unit",
            Error::UnsupportedCoefficientField(_) => "unsupported-coefficient-field",
            Error::StageCapExceeded(_) => "stage-cap-exceeded",
            Error::UnverifiedHom => "unverified-hom",
            Error::CornerConditionFailed(_) => "corner-condition-failed",
            Error::InvalidBound(_) => "invalid-bound",
        }
    }

    /// True for errors caused by malformed input text.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Syntax { .. }
                | Error::UnknownGenerator(_)
                | Error::UnknownVertex(_)
                | Error::UnknownEdge(_)
                | Error::InvalidGraph(_)
                | Error::InvalidBound(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
