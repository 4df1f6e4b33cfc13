use thiserror::Error;

/// Reasons a graph description is rejected after it parsed successfully.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("loop at vertex {0}")]
    Loop(u32),
    #[error("parallel edge {{{0},{1}}}")]
    ParallelEdge(u32, u32),
    #[error("isolated vertex {0}")]
    IsolatedVertex(u32),
    #[error("edge endpoint {0} is not in the declared vertex list")]
    UndeclaredVertex(u32),
    #[error("vertex ids must be positive, got {0}")]
    NonPositiveVertex(i64),
    #[error("graph has no edges")]
    Empty,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    Validation(#[from] ValidationError),
    #[error("resource limit exceeded: {what} (cap {cap})")]
    ResourceLimit { what: &'static str, cap: usize },
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
