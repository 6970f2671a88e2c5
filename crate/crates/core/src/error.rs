use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("graph contains a cycle")]
    Cycle,
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge probability {0} not in [0, 1]")]
    BadProbability(f64),
    #[error("vertex set must not be empty")]
    EmptySet,
    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(usize),
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("vertex set {0:?} is not a module")]
    NotModule(Vec<usize>),
    #[error("invalid drawing: {0}")]
    BadDrawing(String),
    #[error("dimension {dim} is not a topological order: {u} must precede {v}")]
    NotTopological { dim: usize, u: usize, v: usize },
    #[error("partition block {0:?} is not compact in the drawing")]
    NotCompact(Vec<usize>),
    #[error("{vertices} vertices exceed the exhaustive search bound {bound}")]
    SearchBound { vertices: usize, bound: usize },
    #[error("a prime module has {width} children (k = {k}), above the search bound {bound}; raise the bound or expect (k!)^d work")]
    KTooLarge { k: usize, width: usize, bound: usize },
    #[error("search would examine {tuples} drawings, above the budget of {budget}")]
    ExploreBudget { tuples: u128, budget: u128 },
    #[error("fip cost overflowed the weight type")]
    CostOverflow,
    #[error("number of dimensions must be at least 1")]
    ZeroDimensions,
    #[error("SVG rendering needs exactly 2 dimensions, got {0}")]
    NotTwoDimensional(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
