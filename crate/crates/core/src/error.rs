use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("poset is not graded: face {face:?} has covers of different ranks")]
    NotGraded { face: Vec<usize> },

    #[error("poset is not atomic: {0}")]
    NotAtomic(String),

    #[error(
        "poset is not Eulerian: interval [{lower:?}, {upper:?}] has {even} even and {odd} odd faces"
    )]
    NotEulerian {
        lower: Vec<usize>,
        upper: Vec<usize>,
        even: usize,
        odd: usize,
    },

    #[error("face {lower} is not contained in face {upper}")]
    NotOrdered { lower: usize, upper: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: i64, found: i64 },

    #[error("dimension {found} below the minimum {minimum} for {what}")]
    DimensionTooSmall {
        what: &'static str,
        minimum: i64,
        found: i64,
    },

    #[error("degenerate direction: {0}")]
    DegenerateDirection(String),

    #[error("coordinates required: {0}")]
    CoordinatesRequired(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
