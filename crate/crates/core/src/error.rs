use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group of order {order} exceeds the configured cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("subgroup {lower} is not contained in subgroup {upper}")]
    NotComparable { lower: usize, upper: usize },

    #[error("subgroup {sub} is not normal in {ambient}")]
    NotNormal { sub: usize, ambient: usize },

    #[error("module carries no group action")]
    NoAction,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("sequence has not stabilized{}", chain.map(|c| format!(" at chain {c}")).unwrap_or_default())]
    NotStabilized { chain: Option<usize> },

    #[error("depth {requested} exceeds available depth {available}")]
    DepthExceeded { requested: usize, available: usize },

    #[error("discrete module lives at level {level}, deeper than depth {depth}")]
    DepthTooSmall { level: usize, depth: usize },

    #[error("map is not an isomorphism: {0}")]
    NotIso(String),

    #[error("supplied action is not a family of orthogonal idempotents: {0}")]
    IdempotentMismatch(String),

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
