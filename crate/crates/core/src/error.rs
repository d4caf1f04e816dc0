use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("node {0} would exceed degree 3")]
    DegreeOverflow(NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("node id {0} out of range 1..={1}")]
    NodeOutOfRange(usize, usize),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("node {0} assigned a side twice")]
    DuplicateSide(usize),
    #[error("node {0} has no side")]
    MissingSide(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisectionError {
    #[error("bisection needs at least 2 degree-3 nodes, found {0}")]
    TooFewBranchNodes(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("nodes {0} and {1} are joined by three degree-2 strands")]
    TripleStrand(NodeId, NodeId),
    #[error("double-edge repair did not finish within {0} moves")]
    RepairDiverged(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("component contains a degree-3 node")]
    HasBranchNode,
    #[error("component has {found} degree-3 nodes, limit is {kappa}")]
    TooManyBranchNodes { found: usize, kappa: usize },
    #[error("rule not applicable")]
    NotApplicable,
    #[error("stuck state: cut edges remain but no branching rule matches ({0} cut edges)")]
    Stuck(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Bisection(#[from] BisectionError),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {m} edges, oracle guard is {limit}")]
    TooLarge { m: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("degree {0} out of range 0..=3")]
    DegreeOutOfRange(usize),
    #[error("weight parameter {0} outside [0.5, 1]")]
    WeightOutOfRange(f64),
    #[error("branching vector needs at least 2 positive entries")]
    InvalidVector,
    #[error("grid step must be positive")]
    InvalidStep,
}
