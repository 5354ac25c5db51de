use thiserror::Error;

use crate::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("lambda must be at least 1")]
    ZeroLambda,

    #[error("v must be at least 1")]
    ZeroOrder,

    #[error("length list is not nondecreasing")]
    NotNondecreasing,

    #[error("malformed cycle {0:?}: need at least 2 distinct vertices")]
    MalformedCycle(Vec<Vertex>),

    #[error("malformed path {0:?}: need at least 2 distinct vertices")]
    MalformedPath(Vec<Vertex>),

    #[error("malformed lasso: {0}")]
    MalformedLasso(String),

    #[error("vertex {vertex} out of range for v = {v}")]
    VertexOutOfRange { vertex: Vertex, v: usize },

    #[error("edge {{{x},{y}}} used more often than its multiplicity")]
    OverusedEdge { x: Vertex, y: Vertex },

    #[error("cycle {0:?} is not part of the packing")]
    MissingCycle(Vec<Vertex>),

    #[error("1-factor requested but lambda(v-1) is even")]
    ParityMismatch,

    #[error("a 1-factor needs an even number of vertices, got {0}")]
    OddOrder(usize),

    #[error("invalid switch request: {0}")]
    InvalidSwitch(String),

    #[error("no surplus edge at origin {0}")]
    NoSurplusAtOrigin(Vertex),

    #[error("switch search exhausted without a valid realization")]
    InternalExhaustion,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("surplus list case mismatch: v even and epsilon in {{1,2}}")]
    CaseMismatch,

    #[error("no entry qualifies as m in {0:?}")]
    NoQualifyingEntry(Vec<usize>),

    #[error("instance is infeasible")]
    InfeasibleInstance,

    #[error("decomposition provider failed: {0}")]
    ProviderFailure(String),

    #[error("search node budget exceeded")]
    BudgetExceeded,

    #[error("internal consistency failure: {0}")]
    Logic(String),

    #[error("trace replay failed: {0}")]
    Replay(String),

    #[error("trace parse error on line {line}: {msg}")]
    TraceParse { line: usize, msg: String },
}
