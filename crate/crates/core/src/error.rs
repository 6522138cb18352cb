use thiserror::Error;

/// Problems with graph input or graph-level queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("empty input: no edges")]
    Empty,
    #[error("line {line}: expected two vertex labels, found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: loop edge at vertex {label}")]
    Loop { line: usize, label: String },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("edge subset does not induce a connected subgraph")]
    DisconnectedSubset,
    #[error("vertex {vertex} outside 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error("exponent vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge index e{} out of range", .0 + 1)]
    EdgeOutOfRange(usize),
}

/// Problems building or interpreting a closed even walk.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("walk has length {0}; closed even walks need even length >= 4")]
    BadLength(usize),
    #[error("position {position}: edge e{} is not incident to vertex {}", .edge + 1, .vertex + 1)]
    Broken { position: usize, edge: usize, vertex: usize },
    #[error("vertices {} and {} are not adjacent", .u + 1, .v + 1)]
    NotAdjacent { u: usize, v: usize },
    #[error("binomial is not coprime: e{} occurs on both sides", .edge + 1)]
    NotCoprime { edge: usize },
    #[error("chord e{} has inconsistent parity across endpoint occurrences", .chord + 1)]
    AmbiguousChordParity { chord: usize },
    #[error("edge subset is not the graph of a primitive walk: {0}")]
    NotPrimitive(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Problems with matrix input or oracle computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("matrix entry ({}, {}) is negative: {value}", .row + 1, .col + 1)]
    NegativeEntry { row: usize, col: usize, value: i64 },
    #[error("column x{} is zero", .0 + 1)]
    ZeroColumn(usize),
    #[error("weight vector has a zero entry at x{}", .0 + 1)]
    ZeroWeight(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("box bound must be at least 1")]
    EmptyBox,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("graph has {edges} edges; refusing more than {limit} without force")]
    ScaleGuard { edges: usize, limit: usize },
    #[error("graph has {edges} edges; subset enumeration supports at most {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error("internal invariant breached: {0}")]
    Invariant(String),
}
