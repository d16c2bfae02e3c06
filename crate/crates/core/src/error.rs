use crate::template::Edge;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("vertex label {label} out of range 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },

    #[error("malformed edge {0:?}: {1}")]
    MalformedEdge(Vec<u32>, String),

    #[error("uniformity mismatch: expected {expected}, got {got}")]
    IncompatibleUniformity { expected: usize, got: usize },

    #[error("malformed assignment: {0}")]
    MalformedAssignment(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    /// A constructive step that is guaranteed to succeed did not. Either the
    /// implementation is wrong or the instance is a counterexample; `instance`
    /// carries a JSON dump to reproduce it.
    #[error("proof gap in {context}: {detail}")]
    ProofGap {
        context: String,
        detail: String,
        instance: String,
    },

    #[error("coloring is monochromatic")]
    MonochromaticColoring,

    #[error("host too small: need at least {needed} vertices, have {have}")]
    HostTooSmall { needed: u32, have: u32 },

    #[error("edge {0} is blue where a red edge was required")]
    BlueEdgeEncountered(Edge),

    #[error("inconsistent base value: {0}")]
    InconsistentBase(String),

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
