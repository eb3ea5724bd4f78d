use thiserror::Error;

use crate::drawing::Violation;
use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("drawing is invalid: {}", summarize(.0))]
    Invalid(Vec<Violation>),
    #[error("degenerate straight-line input: {0}")]
    Degenerate(String),
}

fn summarize(v: &[Violation]) -> String {
    let mut s = v.iter().take(3).map(|x| x.to_string()).collect::<Vec<_>>().join("; ");
    if v.len() > 3 {
        s.push_str(&format!("; and {} more", v.len() - 3));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RedrawError {
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error("malformed sketch: {0}")]
    MalformedSketch(String),
    #[error("edge {0} crosses another edge an odd number of times and cannot be contracted")]
    ContractOddEdge(EdgeId),
    #[error("edge {0} is a loop and cannot be contracted")]
    ContractLoop(EdgeId),
    #[error("rotation at {0} does not split into the recorded blocks")]
    InconsistentSplit(VertexId),
    #[error("drawing is not {k}-odd-plane: edge {edge} is crossed oddly by {degree} edges")]
    NotKOddPlane { k: usize, edge: EdgeId, degree: usize },
    #[error("edges {0} and {1} form an odd pair")]
    OddPairPresent(EdgeId, EdgeId),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("probability {0} outside (0, 1]")]
    InvalidProbability(f64),
    #[error("trial count must be positive")]
    NoTrials,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input graph must be simple")]
    NotSimple,
    #[error("enumeration budget exceeded")]
    BudgetExceeded,
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("bad field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Validation(#[from] DrawingError),
    #[error("layout failed: {0}")]
    DegenerateLayout(String),
}
