use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("labeling has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("labels are not a bijection onto 1..={order}: {detail}")]
    NotBijection { order: usize, detail: String },

    #[error("invalid edge [{0}, {1}]: {2}")]
    InvalidEdge(usize, usize, &'static str),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("graph of order {order} exceeds the search ceiling of {ceiling} vertices")]
    CeilingExceeded { order: usize, ceiling: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
