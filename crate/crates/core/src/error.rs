use thiserror::Error;

use crate::graph::Arc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc #{index} ({} -> {}): endpoint outside 1..={n}", arc.head, arc.tail)]
    EndpointOutOfRange { index: usize, arc: Arc, n: usize },
    #[error("arc #{index} ({} -> {}): self-loop", arc.head, arc.tail)]
    SelfLoop { index: usize, arc: Arc },
    #[error("arc #{index} ({head} -> {tail}): negative weight {weight}")]
    NegativeWeight {
        index: usize,
        head: i64,
        tail: i64,
        weight: i64,
    },
    #[error("arc #{index}: weight {weight} does not fit in 32 bits")]
    WeightTooLarge { index: usize, weight: i64 },
    #[error("node {node} outside 1..={n}")]
    NodeOutOfRange { node: u32, n: usize },
    #[error("{0} nodes exceed the 32-bit id space")]
    TooManyNodes(usize),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("source {node} outside 1..={n}")]
    SourceOutOfRange { node: u32, n: usize },
    #[error("source set is empty")]
    NoSources,
    #[error("unknown scheduler `{0}` (expected hrp, fr or ht)")]
    UnknownScheduler(String),
    #[error("unknown algorithm `{0}` (expected hda, eom, eom2, hrp, fr or ht)")]
    UnknownAlgorithm(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("grid dimensions must be at least 1x1, got {rows}x{cols}")]
    EmptyGrid { rows: usize, cols: usize },
    #[error("weight range [{min}, {max}] is empty")]
    EmptyWeightRange { min: u32, max: u32 },
    #[error("{arcs} arcs cannot be placed on {n} node(s) without self-loops")]
    InfeasibleArcCount { n: usize, arcs: usize },
    #[error("column count {cols} does not divide {total}")]
    NotADivisor { total: usize, cols: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
