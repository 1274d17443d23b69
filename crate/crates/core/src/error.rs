use thiserror::Error;

/// Errors raised by graph construction, parsing and the counting routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge ({0}, {0}) joins a vertex to itself; use a loop instead")]
    SelfEdge(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("duplicate loop at vertex {0}")]
    DuplicateLoop(usize),

    #[error("edge ({0}, {1}) is not present")]
    EdgeNotPresent(usize, usize),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("graph set is not closed under homomorphic images")]
    NotClosed,

    #[error("hom matrix is singular")]
    Singular,

    #[error("recovered value {0} is not a nonnegative integer; oracle and coefficients disagree")]
    InconsistentOracle(String),

    #[error("oracle failure: {0}")]
    Oracle(String),
}

impl Error {
    /// True for failures that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotClosed | Error::Singular | Error::InconsistentOracle(_) | Error::Oracle(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
