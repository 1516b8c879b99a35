//! Point universes and the distance functions the algorithms consume.
//!
//! Three sources are supported: planar points under the Euclidean norm,
//! planar points under the regular-hexagon gauge, and explicit distance
//! matrices (used for graph shortest-path metrics).

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::MetricError;

/// Absolute tolerance used when comparing distances.
pub const DIST_TOL: f64 = 1e-9;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// A point in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Point at polar coordinates `(radius; degrees)`.
    pub fn polar(radius: f64, degrees: f64) -> Self {
        let rad = degrees.to_radians();
        Self::new(radius * libm::cos(rad), radius * libm::sin(rad))
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl core::ops::Add for Point2D {
    type Output = Point2D;

    fn add(self, rhs: Point2D) -> Point2D {
        Point2D::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl core::ops::Sub for Point2D {
    type Output = Point2D;

    fn sub(self, rhs: Point2D) -> Point2D {
        Point2D::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl core::ops::Mul<f64> for Point2D {
    type Output = Point2D;

    fn mul(self, k: f64) -> Point2D {
        Point2D::new(self.x * k, self.y * k)
    }
}

pub fn euclidean_distance(p: Point2D, q: Point2D) -> f64 {
    libm::hypot(q.x - p.x, q.y - p.y)
}

/// Gauge distance for the regular hexagon with circumradius 1 and vertices
/// at polar angles 30° + 60°k.
///
/// The hexagon is the intersection of three slabs `|v·n_k| ≤ √3/2` with
/// unit normals `n_k` at 0°, 60° and 120°, so the gauge of `v = q - p` is
/// `(2/√3) · max_k |v·n_k|`.
pub fn hexagonal_distance(p: Point2D, q: Point2D) -> f64 {
    let dx = q.x - p.x;
    let dy = q.y - p.y;
    let half = 0.5 * dx;
    let rise = 0.5 * SQRT_3 * dy;
    let a = libm::fabs(dx);
    let b = libm::fabs(half + rise);
    let c = libm::fabs(rise - half);
    2.0 / SQRT_3 * a.max(b).max(c)
}

/// Dense symmetric distance matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps row-major data. Entries must be finite and nonnegative; the
    /// metric axioms themselves are checked by [`verify_metric`].
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self, MetricError> {
        if data.len() != n * n {
            return Err(MetricError::MatrixShape { n, len: data.len() });
        }
        if let Some(pos) = data.iter().position(|d| !d.is_finite() || *d < 0.0) {
            return Err(MetricError::BadEntry {
                row: pos / n,
                col: pos % n,
                value: data[pos],
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Euclidean,
    Hexagonal,
    Explicit,
}

#[derive(Clone, Debug, PartialEq)]
enum Source {
    Euclidean(Vec<Point2D>),
    Hexagonal(Vec<Point2D>),
    Matrix(DistanceMatrix),
}

/// A finite point universe with a symmetric distance function.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricInstance {
    source: Source,
}

impl MetricInstance {
    pub fn euclidean(points: Vec<Point2D>) -> Result<Self, MetricError> {
        check_points(&points)?;
        Ok(Self {
            source: Source::Euclidean(points),
        })
    }

    pub fn hexagonal(points: Vec<Point2D>) -> Result<Self, MetricError> {
        check_points(&points)?;
        Ok(Self {
            source: Source::Hexagonal(points),
        })
    }

    pub fn from_matrix(matrix: DistanceMatrix) -> Self {
        Self {
            source: Source::Matrix(matrix),
        }
    }

    pub fn kind(&self) -> MetricKind {
        match self.source {
            Source::Euclidean(_) => MetricKind::Euclidean,
            Source::Hexagonal(_) => MetricKind::Hexagonal,
            Source::Matrix(_) => MetricKind::Explicit,
        }
    }

    pub fn len(&self) -> usize {
        match &self.source {
            Source::Euclidean(p) | Source::Hexagonal(p) => p.len(),
            Source::Matrix(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Planar coordinates, when the instance has them.
    pub fn points(&self) -> Option<&[Point2D]> {
        match &self.source {
            Source::Euclidean(p) | Source::Hexagonal(p) => Some(p),
            Source::Matrix(_) => None,
        }
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.source {
            Source::Euclidean(p) => euclidean_distance(p[i], p[j]),
            Source::Hexagonal(p) => hexagonal_distance(p[i], p[j]),
            Source::Matrix(m) => m.get(i, j),
        }
    }

    /// Materializes all pairwise distances.
    pub fn to_matrix(&self) -> DistanceMatrix {
        match &self.source {
            Source::Matrix(m) => m.clone(),
            _ => DistanceMatrix::from_fn(self.len(), |i, j| self.dist(i, j)),
        }
    }
}

fn check_points(points: &[Point2D]) -> Result<(), MetricError> {
    match points.iter().position(|p| !p.is_finite()) {
        Some(index) => Err(MetricError::NonFinitePoint { index }),
        None => Ok(()),
    }
}

/// Undirected graph with strictly positive edge weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    node_count: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(node_count: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self, MetricError> {
        if node_count == 0 {
            return Err(MetricError::EmptyGraph);
        }
        for &(u, v, w) in &edges {
            if u >= node_count || v >= node_count {
                return Err(MetricError::EdgeOutOfRange { u, v, node_count });
            }
            if u == v {
                return Err(MetricError::SelfLoop { node: u });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(MetricError::BadWeight { u, v, weight: w });
            }
        }
        Ok(Self { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }
}

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then node index
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest path weights by Dijkstra with a binary heap.
pub fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapEntry { dist: d, node: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(HeapEntry { dist: nd, node: v });
            }
        }
    }
    dist
}

/// All-pairs shortest path metric of a connected graph.
pub fn shortest_path_metric(g: &WeightedGraph) -> Result<MetricInstance, MetricError> {
    let n = g.node_count();
    let adj = g.adjacency();
    let mut data = Vec::with_capacity(n * n);
    for s in 0..n {
        let row = dijkstra(&adj, s);
        if row.iter().any(|d| d.is_infinite()) {
            return Err(MetricError::GraphNotConnected);
        }
        data.extend_from_slice(&row);
    }
    // Dijkstra from opposite ends may round differently; keep the matrix exactly symmetric.
    for i in 0..n {
        for j in (i + 1)..n {
            let d = data[i * n + j].min(data[j * n + i]);
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(MetricInstance::from_matrix(DistanceMatrix { n, data }))
}

/// First failed metric axiom, if any.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MetricViolation {
    NonZeroDiagonal {
        i: usize,
        value: f64,
    },
    Asymmetric {
        i: usize,
        j: usize,
    },
    /// `dist(i, j) > dist(i, k) + dist(k, j)`, reported as `(i, k, j)`.
    Triangle {
        i: usize,
        k: usize,
        j: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricReport {
    pub triples_checked: u64,
    pub exhaustive: bool,
    pub violation: Option<MetricViolation>,
}

impl MetricReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

const EXHAUSTIVE_LIMIT: usize = 64;
const SAMPLE_SEED: u64 = 0x0005_eedd_71ab;

/// Checks zero diagonal, symmetry and the triangle inequality.
///
/// The triangle inequality is checked over all triples when `n ≤ 64`, and
/// on `sample_budget` pseudo-random triples (fixed seed) otherwise.
pub fn verify_metric(m: &MetricInstance, sample_budget: usize) -> MetricReport {
    let n = m.len();
    let fail = |violation, triples_checked, exhaustive| MetricReport {
        triples_checked,
        exhaustive,
        violation: Some(violation),
    };
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    for i in 0..n {
        let value = m.dist(i, i);
        if libm::fabs(value) > DIST_TOL {
            return fail(MetricViolation::NonZeroDiagonal { i, value }, 0, exhaustive);
        }
    }
    let pairs_to_check = if exhaustive { n } else { 0 };
    for i in 0..pairs_to_check {
        for j in (i + 1)..n {
            if libm::fabs(m.dist(i, j) - m.dist(j, i)) > DIST_TOL {
                return fail(MetricViolation::Asymmetric { i, j }, 0, exhaustive);
            }
        }
    }
    let mut checked = 0u64;
    let triangle =
        |i: usize, k: usize, j: usize| m.dist(i, j) <= m.dist(i, k) + m.dist(k, j) + DIST_TOL;
    if exhaustive {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    checked += 1;
                    if !triangle(i, k, j) {
                        return fail(MetricViolation::Triangle { i, k, j }, checked, true);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        for _ in 0..sample_budget {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            let k = rng.random_range(0..n);
            checked += 1;
            if libm::fabs(m.dist(i, j) - m.dist(j, i)) > DIST_TOL {
                return fail(MetricViolation::Asymmetric { i, j }, checked, false);
            }
            if !triangle(i, k, j) {
                return fail(MetricViolation::Triangle { i, k, j }, checked, false);
            }
        }
    }
    MetricReport {
        triples_checked: checked,
        exhaustive,
        violation: None,
    }
}
