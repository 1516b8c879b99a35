//! Generators for the four lower-bound families.
//!
//! Each generator fixes its node order on purpose: Prim's tie-break and the
//! depth-first child order both follow indices, and the orders below make the
//! minimum spanning tree come out in the intended shape.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::InstanceError;
use crate::metric::{shortest_path_metric, MetricInstance, MetricKind, Point2D, WeightedGraph};
use crate::tour::Tour;

pub const MAX_TWIN_K: u32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Comb,
    ChristofidesComb,
    TwinTrees,
    Star,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Comb,
        Family::ChristofidesComb,
        Family::TwinTrees,
        Family::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Comb => "comb",
            Family::ChristofidesComb => "christofides-comb",
            Family::TwinTrees => "twin-trees",
            Family::Star => "star",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Closed-form weights shipped with an instance.
///
/// `predicted_method_weight` is the weight the family is built to force on
/// its target method: exact for the two combs, leading order for the others.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticWeights {
    pub mst_weight: f64,
    pub reference_weight: f64,
    pub predicted_method_weight: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct InstanceBundle {
    pub family: Family,
    /// Size parameter: `n` for the combs and the star, `2^k` for twin trees.
    pub size: usize,
    pub metric: MetricInstance,
    pub root: usize,
    /// Sorted `(min, max)` edges.
    pub expected_mst: Option<Vec<(usize, usize)>>,
    pub reference_tour: Tour,
    pub analytic: AnalyticWeights,
    /// Drawing coordinates; the points themselves for planar families.
    pub layout: Vec<Point2D>,
    /// Source graph of a shortest-path metric.
    pub graph: Option<WeightedGraph>,
}

fn sorted_edges(mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    for e in edges.iter_mut() {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges
}

fn check_eps(eps: f64) -> Result<(), InstanceError> {
    if eps.is_finite() && eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(InstanceError::InvalidParameter("eps must lie in (0, 1/2)"))
    }
}

fn planar_tour(metric: &MetricInstance, order: Vec<usize>) -> Tour {
    Tour::new(order, metric).expect("generator tours are permutations")
}

/// Comb with offset top points; the depth-first shortcut of its MST is about twice optimal.
///
/// Node order: tops `(i,1)` for `i = 0..=n`, then bottoms `(i,0)`, then the
/// offsets `(i+eps, 1)` for `i < n`. Root is the leftmost top point.
pub fn gen_comb(n: usize, eps: f64) -> Result<InstanceBundle, InstanceError> {
    if n < 2 {
        return Err(InstanceError::InvalidParameter("comb needs n >= 2"));
    }
    check_eps(eps)?;
    let top = |i: usize| i;
    let bottom = |i: usize| n + 1 + i;
    let offset = |i: usize| 2 * n + 2 + i;
    let mut points = Vec::with_capacity(3 * n + 2);
    points.extend((0..=n).map(|i| Point2D::new(i as f64, 1.0)));
    points.extend((0..=n).map(|i| Point2D::new(i as f64, 0.0)));
    points.extend((0..n).map(|i| Point2D::new(i as f64 + eps, 1.0)));
    let metric = MetricInstance::euclidean(points.clone())?;

    let mut mst = Vec::with_capacity(3 * n + 1);
    for i in 0..=n {
        mst.push((top(i), bottom(i)));
    }
    for i in 0..n {
        mst.push((top(i), offset(i)));
        mst.push((offset(i), top(i + 1)));
    }

    // bottom row left to right, then the top row right to left
    let mut order: Vec<usize> = (0..=n).map(bottom).collect();
    for i in (0..=n).rev() {
        order.push(top(i));
        if i > 0 {
            order.push(offset(i - 1));
        }
    }
    let reference_tour = planar_tour(&metric, order);

    let nf = n as f64;
    let diagonal = libm::sqrt(1.0 + eps * eps);
    Ok(InstanceBundle {
        family: Family::Comb,
        size: n,
        metric,
        root: top(0),
        expected_mst: Some(sorted_edges(mst)),
        reference_tour,
        analytic: AnalyticWeights {
            mst_weight: 2.0 * nf + 1.0,
            reference_weight: 2.0 * nf + 2.0,
            predicted_method_weight: Some(
                nf * (2.0 + diagonal - eps) + 1.0 + libm::sqrt(nf * nf + 1.0),
            ),
        },
        layout: points,
        graph: None,
    })
}

/// Comb whose MST is a Hamiltonian path, so Christofides adds a single long edge.
///
/// Along the path `p_0 .. p_{3n+1}` each column is followed by an offset on
/// the side where the path leaves it. Node order: the points `p_{3i+1}`, then
/// the offsets `p_{3i+2}`, then `p_{3i}` for decreasing `i >= 1`, and `p_0` last.
pub fn gen_christofides_comb(n: usize, eps: f64) -> Result<InstanceBundle, InstanceError> {
    if n < 2 || n % 2 == 1 {
        return Err(InstanceError::InvalidParameter(
            "christofides comb needs an even n >= 2",
        ));
    }
    check_eps(eps)?;
    let path_len = 3 * n + 2;
    let path_point = |j: usize| {
        let i = j / 3;
        let (x, entry_y) = (i as f64, if i.is_multiple_of(2) { 0.0 } else { 1.0 });
        match j % 3 {
            0 => Point2D::new(x, entry_y),
            1 => Point2D::new(x, 1.0 - entry_y),
            _ => Point2D::new(x + eps, 1.0 - entry_y),
        }
    };
    let index_of = |j: usize| match j % 3 {
        1 => j / 3,
        2 => n + 1 + j / 3,
        _ if j == 0 => 3 * n + 1,
        _ => 2 * n + 1 + (n - j / 3),
    };
    let mut points = vec![Point2D::new(0.0, 0.0); path_len];
    for j in 0..path_len {
        points[index_of(j)] = path_point(j);
    }
    let metric = MetricInstance::euclidean(points.clone())?;
    let mst: Vec<(usize, usize)> = (1..path_len)
        .map(|j| (index_of(j - 1), index_of(j)))
        .collect();

    // perimeter: bottom row left to right, then the top row right to left
    let mut bottom: Vec<usize> = (0..path_len).filter(|&v| points[v].y == 0.0).collect();
    let mut top: Vec<usize> = (0..path_len).filter(|&v| points[v].y == 1.0).collect();
    bottom.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
    top.sort_by(|&a, &b| points[b].x.total_cmp(&points[a].x));
    bottom.extend(top);
    let reference_tour = planar_tour(&metric, bottom);

    let nf = n as f64;
    Ok(InstanceBundle {
        family: Family::ChristofidesComb,
        size: n,
        metric,
        root: index_of(1),
        expected_mst: Some(sorted_edges(mst)),
        reference_tour,
        analytic: AnalyticWeights {
            mst_weight: 2.0 * nf + 1.0,
            reference_weight: 2.0 * nf + 2.0,
            predicted_method_weight: Some(2.0 * nf + 1.0 + libm::sqrt(nf * nf + 1.0)),
        },
        layout: points,
        graph: None,
    })
}

/// Heap-numbered nodes `1..m` of a complete binary tree, in symmetric order.
fn in_order(m: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(m);
    let mut stack = Vec::new();
    let mut cur = 1;
    loop {
        while cur <= m {
            stack.push(cur);
            cur *= 2;
        }
        match stack.pop() {
            Some(h) => {
                out.push(h);
                cur = 2 * h + 1;
            }
            None => break,
        }
    }
    out
}

/// Two copies of `T_n` joined at the roots and by cross edges of weight `1+eps`.
///
/// `T_n` (with `n = 2^k`) is a root whose single child tops a complete binary
/// tree with `n/2` leaves. Copy A takes indices `0..n` and copy B `n..2n`;
/// within a copy the root is 0 and the binary tree is heap-numbered from 1.
///
/// The reference tour zigzags through the binary nodes in symmetric order,
/// switching copies over every cross edge, and closes through the two roots.
pub fn gen_twin_trees(k: u32, eps: f64) -> Result<InstanceBundle, InstanceError> {
    if !(2..=MAX_TWIN_K).contains(&k) {
        return Err(InstanceError::InvalidParameter(
            "twin trees need 2 <= k <= 11",
        ));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(InstanceError::InvalidParameter("eps must be positive"));
    }
    let n = 1usize << k;
    let m = n - 1;
    let mut edges = Vec::with_capacity(3 * n);
    for copy in [0, n] {
        edges.push((copy, copy + 1, 1.0));
        for h in 1..n / 2 {
            edges.push((copy + h, copy + 2 * h, 1.0));
            edges.push((copy + h, copy + 2 * h + 1, 1.0));
        }
    }
    let mst: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v, _)| (u, v))
        .chain([(0, n)])
        .collect();
    edges.push((0, n, 1.0));
    for h in 1..n {
        edges.push((h, n + h, 1.0 + eps));
    }
    let graph = WeightedGraph::new(2 * n, edges)?;
    let metric = shortest_path_metric(&graph)?;

    let sym = in_order(m);
    let mut order = Vec::with_capacity(2 * n);
    for (pos, &h) in sym.iter().enumerate() {
        if pos % 2 == 0 {
            order.extend([h, n + h]);
        } else {
            order.extend([n + h, h]);
        }
    }
    order.extend([n, 0]);
    let reference_tour = Tour::new(order, &metric).expect("zigzag visits every node");

    let mut layout = vec![Point2D::new(0.0, 0.0); 2 * n];
    for (x, &h) in sym.iter().enumerate() {
        let depth = (usize::BITS - h.leading_zeros()) as f64;
        layout[h] = Point2D::new(x as f64, -depth - 0.5);
        layout[n + h] = Point2D::new(x as f64, depth + 0.5);
    }
    let centre = (m / 2) as f64;
    layout[0] = Point2D::new(centre, -0.5);
    layout[n] = Point2D::new(centre, 0.5);

    let (nf, kf) = (n as f64, k as f64);
    Ok(InstanceBundle {
        family: Family::TwinTrees,
        size: n,
        metric,
        root: 0,
        expected_mst: Some(sorted_edges(mst)),
        reference_tour,
        analytic: AnalyticWeights {
            mst_weight: 2.0 * nf - 1.0,
            reference_weight: 2.0 * (nf - kf - 1.0) + 2.0 * kf + (nf - 1.0) * (1.0 + eps) + 1.0,
            predicted_method_weight: Some(4.0 * nf),
        },
        layout,
        graph: Some(graph),
    })
}

const STAR_ARMS: [f64; 3] = [30.0, 150.0, 270.0];

/// Three-armed star with two rows of `n-1` unit-spaced points per arm; `6n+1` points.
///
/// Node order: centre 0, inner points 1..=3, arm origins 4..=6 (arms at 30°,
/// 150° and 270°), then for each arm its row at `arm+60°` and its row at
/// `arm-60°`, each listed outward from the origin. `kind` selects the
/// Euclidean or the hexagonal metric on the same points.
pub fn gen_star(
    n: usize,
    r_inner: f64,
    r_outer: f64,
    kind: MetricKind,
) -> Result<InstanceBundle, InstanceError> {
    if n < 2 {
        return Err(InstanceError::InvalidParameter("star needs n >= 2"));
    }
    if !(r_inner.is_finite() && r_outer.is_finite() && 0.0 < r_inner && r_inner < r_outer) {
        return Err(InstanceError::InvalidParameter(
            "star needs 0 < r_inner < r_outer",
        ));
    }
    let row_len = n - 1;
    let inner = |j: usize| 1 + j;
    let origin = |j: usize| 4 + j;
    let row = |j: usize, side: usize, d: usize| 7 + (2 * j + side) * row_len + (d - 1);

    let mut points = vec![Point2D::new(0.0, 0.0)];
    points.extend(STAR_ARMS.iter().map(|&a| Point2D::polar(r_inner, a)));
    points.extend(STAR_ARMS.iter().map(|&a| Point2D::polar(r_outer, a)));
    for (j, &a) in STAR_ARMS.iter().enumerate() {
        let start = points[origin(j)];
        for turn in [60.0, -60.0] {
            points.extend((1..n).map(|d| start + Point2D::polar(d as f64, a + turn)));
        }
    }
    let metric = match kind {
        MetricKind::Euclidean => MetricInstance::euclidean(points.clone())?,
        MetricKind::Hexagonal => MetricInstance::hexagonal(points.clone())?,
        MetricKind::Explicit => {
            return Err(InstanceError::InvalidParameter(
                "star needs a planar metric",
            ))
        }
    };

    let mut mst = Vec::with_capacity(6 * n);
    for j in 0..3 {
        mst.push((0, inner(j)));
        mst.push((inner(j), origin(j)));
        for side in 0..2 {
            mst.push((origin(j), row(j, side, 1)));
            for d in 2..n {
                mst.push((row(j, side, d - 1), row(j, side, d)));
            }
        }
    }

    // each arm's left row pairs with the next arm's parallel right row at the far end
    let (left, right) = (0, 1);
    let out_along = |j: usize, side: usize| (1..n).map(move |d| row(j, side, d));
    let back_along = |j: usize, side: usize| (1..n).rev().map(move |d| row(j, side, d));
    let mut order = vec![origin(0)];
    order.extend(out_along(0, left));
    order.extend(back_along(1, right));
    order.push(origin(1));
    order.extend(out_along(1, left));
    order.extend(back_along(2, right));
    order.extend([origin(2), inner(2), 0, inner(1), inner(0)]);
    order.extend(out_along(2, left));
    order.extend(back_along(0, right));
    let reference_tour = planar_tour(&metric, order);

    let rows = 6.0 * (row_len as f64 - 1.0);
    let reference_weight = rows
        + 5.0
        + 3.0 * metric.dist(origin(0), origin(1))
        + (r_outer - r_inner)
        + 2.0 * r_inner
        + metric.dist(inner(1), inner(0))
        + metric.dist(inner(0), row(2, left, 1));
    let predicted = match kind {
        MetricKind::Hexagonal => 10.0 * n as f64,
        _ => (8.0 + libm::sqrt(3.0)) * n as f64,
    };
    Ok(InstanceBundle {
        family: Family::Star,
        size: n,
        metric,
        root: 0,
        expected_mst: Some(sorted_edges(mst)),
        reference_tour,
        analytic: AnalyticWeights {
            mst_weight: 6.0 * row_len as f64 + 3.0 * r_outer,
            reference_weight,
            predicted_method_weight: Some(predicted),
        },
        layout: points,
        graph: None,
    })
}
