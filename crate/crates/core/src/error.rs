use thiserror::Error;

use crate::graph::Vertex;
use crate::instance::Color;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// Violations of the per-problem instance invariants.
///
/// Vertex ids in these errors are 0-based; the parser re-attaches line
/// numbers and the CLI prints them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} has no color")]
    MissingVertexColor(Vertex),
    #[error("vertex {0} is colored more than once")]
    DuplicateVertexColor(Vertex),
    #[error("color ids must be positive")]
    ZeroColor,
    #[error("motif is empty")]
    EmptyMotif,
    #[error("motif color {0} listed more than once")]
    DuplicateMotifColor(Color),
    #[error("motif count for color {0} must be positive")]
    ZeroMotifCount(Color),
    #[error("vertex coloring has {got} entries, graph has {n} vertices")]
    ColoringLength { got: usize, n: usize },
    #[error("terminal pair ({0}, {0}) has identical endpoints")]
    IdenticalEndpoints(Vertex),
    #[error("vertex {0} is a terminal of more than one pair")]
    OverlappingTerminal(Vertex),
    #[error("color budget must be positive")]
    ZeroColorBudget,
    #[error("color budget given more than once")]
    DuplicateColorBudget,
    #[error("precolored vertices present but no color budget given")]
    MissingColorBudget,
    #[error("vertex {vertex} precolored {color}, outside 1..{budget}")]
    ColorOutOfRange { vertex: Vertex, color: Color, budget: Color },
    #[error("vertex {0} is precolored more than once")]
    DuplicatePrecolor(Vertex),
    #[error("improper precoloring: adjacent vertices {0} and {1} share color {2}")]
    ImproperPrecoloring(Vertex, Vertex, Color),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("missing `p graph <n>` header")]
    MissingHeader,
    #[error("annotations for more than one problem in one file")]
    MixedProblems,
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{kind}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    /// 1-based line, when the error can be pinned to one.
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn at(line: usize, kind: impl Into<ParseErrorKind>) -> Self {
        ParseError { line: Some(line), kind: kind.into() }
    }

    pub(crate) fn global(kind: impl Into<ParseErrorKind>) -> Self {
        ParseError { line: None, kind: kind.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid template: {0}")]
    InvalidTemplate(String),
    #[error("infeasible annotation request: {0}")]
    InfeasibleAnnotation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IlpError {
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("integer overflow while evaluating constraint {0}")]
    Overflow(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("neighborhood diversity {k} exceeds the supported limit of {limit} for this solver")]
    TooManyTypes { k: usize, limit: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error(transparent)]
    Ilp(#[from] IlpError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle size guard exceeded: {what} is {actual}, limit {limit}")]
    SizeGuard { what: &'static str, actual: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("types {0} and {1} are neither fully joined nor fully separated")]
    InconsistentTypes(usize, usize),
    #[error("type {0} is neither a clique nor an independent set")]
    MixedType(usize),
    #[error("partition does not match the graph's vertex count")]
    ShapeMismatch,
}

/// Reasons a witness fails its validator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("vertex {0} used more than once")]
    RepeatedVertex(Vertex),
    #[error("induced subgraph is disconnected")]
    Disconnected,
    #[error("color multiset differs from the motif")]
    WrongColors,
    #[error("expected {expected} paths, got {got}")]
    PathCount { expected: usize, got: usize },
    #[error("path {0} has wrong endpoints")]
    WrongEndpoints(usize),
    #[error("path {path} uses non-edge {u}-{v}")]
    NotAnEdge { path: usize, u: Vertex, v: Vertex },
    #[error("path {0} has two internal vertices of one type")]
    NotSimple(usize),
    #[error("coloring has {got} entries, graph has {n} vertices")]
    ColoringLength { got: usize, n: usize },
    #[error("vertex {vertex} has color {color}, outside 1..{budget}")]
    ColorOutOfRange { vertex: Vertex, color: Color, budget: Color },
    #[error("vertex {0} does not keep its precolor")]
    PrecolorChanged(Vertex),
    #[error("edge {0}-{1} is monochromatic")]
    Monochromatic(Vertex, Vertex),
}
