use thiserror::Error;

/// Errors raised while reading graph or coloring files.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: malformed line: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: i64, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: color {color} out of range 1..={k}")]
    ColorOutOfRange { line: usize, color: i64, k: usize },
}

/// Errors shared by the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance too large: {what} is {actual}, cap is {cap}")]
    TooLarge { what: &'static str, actual: usize, cap: usize },
    #[error("state budget of {budget} exceeded")]
    Budget { budget: usize },
    #[error("input is not a tree")]
    NotATree,
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("start coloring is not a total proper coloring")]
    ImproperStart,
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A proven invariant failed; always a bug in this crate.
    #[error("internal invariant {id} violated: {detail}")]
    Invariant { id: &'static str, detail: String },
}

impl SolveError {
    pub fn invariant(id: &'static str, detail: impl Into<String>) -> Self {
        SolveError::Invariant { id, detail: detail.into() }
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, SolveError::Invariant { .. })
    }
}

pub type SolveResult<T> = Result<T, SolveError>;
