use thiserror::Error;

use crate::kgraph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("name `{0}` is already in use")]
    DuplicateName(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("color {color} is outside 1..={rank}")]
    BadColor { color: usize, rank: usize },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("degree has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("not composable: {0}")]
    NotComposable(String),

    #[error("colors {0} and {0} are not distinct")]
    SameColor(usize),

    #[error("edges `{0}` and `{1}` do not have orthogonal degrees")]
    NotOrthogonal(String, String),

    #[error("malformed square {square}: {reason}")]
    MalformedSquare { square: String, reason: String },

    #[error("requested degree exceeds the degree of the element")]
    DegreeTooLarge,

    #[error("the empty word needs an anchor vertex")]
    MissingAnchor,

    #[error("bad word token `{0}`")]
    BadToken(String),

    #[error("word is not positive")]
    NotPositive,

    #[error("not a k-graph ({} findings)", .0.failures.len())]
    Invalid(Box<ValidationReport>),
}
