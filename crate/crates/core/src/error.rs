use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("division by x^{power} is inexact: coefficient of x^{index} is nonzero")]
    InexactMonomialDivision { power: usize, index: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("graph6 error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list error: {0}")]
    EdgeList(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(usize, usize),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("{what} is {actual}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("tables use different q ({0} vs {1})")]
    MismatchedQ(String, String),

    #[error("inconsistent coefficient data: {0}")]
    Inconsistent(String),
}
