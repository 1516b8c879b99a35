use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("point {index} has a non-finite coordinate")]
    NonFinitePoint { index: usize },
    #[error("distance matrix for {n} points needs {} entries, got {len}", n * n)]
    MatrixShape { n: usize, len: usize },
    #[error("distance matrix entry ({row}, {col}) = {value} is not a finite nonnegative number")]
    BadEntry { row: usize, col: usize, value: f64 },
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("edge ({u}, {v}) out of range for {node_count} nodes")]
    EdgeOutOfRange {
        u: usize,
        v: usize,
        node_count: usize,
    },
    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },
    #[error("edge ({u}, {v}) has weight {weight}; weights must be finite and positive")]
    BadWeight { u: usize, v: usize, weight: f64 },
    #[error("graph not connected")]
    GraphNotConnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree has no nodes")]
    Empty,
    #[error("root {root} out of range for {n} nodes")]
    RootOutOfRange { root: usize, n: usize },
    #[error("parent of node {node} is out of range")]
    ParentOutOfRange { node: usize },
    #[error("root {root} must be its own parent")]
    RootParent { root: usize },
    #[error("node {node} is its own parent but is not the root")]
    ExtraRoot { node: usize },
    #[error("node {node} does not reach the root (cycle in parent array)")]
    Cycle { node: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TourError {
    #[error("tour is empty")]
    Empty,
    #[error("tour of length {len} is not a permutation of 0..{n}")]
    NotPermutation { len: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleTreeError {
    #[error("tree has {tree} nodes but the metric has {metric}")]
    SizeMismatch { tree: usize, metric: usize },
    #[error("node {node} has {children} children; the shortcutting DP allows at most {limit}")]
    DegreeTooLarge {
        node: usize,
        children: usize,
        limit: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChristofidesError {
    #[error("cannot perfectly match an odd number ({count}) of nodes")]
    OddNodeCount { count: usize },
    #[error("matching too large for exact solver: {count} nodes (limit {limit})")]
    MatchingTooLarge { count: usize, limit: usize },
    #[error("node {node} has odd degree {degree}; multigraph is not Eulerian")]
    OddDegree { node: usize, degree: usize },
    #[error("multigraph is not connected")]
    Disconnected,
    #[error("edge ({u}, {v}) out of range for {n} nodes")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{routine} supports at most {limit} nodes, got {n}")]
    TooLarge {
        routine: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("tree has {tree} nodes but the metric has {metric}")]
    SizeMismatch { tree: usize, metric: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Metric(#[from] MetricError),
}
