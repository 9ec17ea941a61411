use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have between 1 and {max} vertices, got {got}", max = crate::graph::MAX_VERTICES)]
    VertexCount { got: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid family `{spec}`: {reason}")]
    Family { spec: String, reason: String },
    #[error("{family} is outside the hypotheses of {what}")]
    OutsideHypotheses { family: String, what: String },
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("exhaustive scan limited to {max} vertices, graph has {n}")]
    TooLargeForScan { n: usize, max: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("matrix does not have the pattern of the graph")]
    PatternMismatch,
    #[error("positive semidefinite rule requires a positive semidefinite matrix")]
    NotPositiveSemidefinite,
    #[error("empty component list")]
    EmptyComposition,
}
