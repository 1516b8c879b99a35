//! Christofides baseline: MST plus an exact minimum-weight perfect matching
//! on its odd-degree nodes, an Euler tour, and first-occurrence shortcutting.
//!
//! Matching is solved exactly by a DP over subsets, which caps the number of
//! odd-degree nodes at [`MATCHING_LIMIT`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::ChristofidesError;
use crate::metric::MetricInstance;
use crate::spanning::{prim_mst, RootedTree};
use crate::tour::{shortcut_first_occurrence, Tour};

pub const MATCHING_LIMIT: usize = 18;

/// Tree nodes of odd degree, ascending.
pub fn odd_degree_nodes(t: &RootedTree) -> Vec<usize> {
    (0..t.len()).filter(|&v| t.degree(v) % 2 == 1).collect()
}

/// Minimum-weight perfect matching on `nodes`, as `(a, b)` pairs from the input order.
pub fn exact_min_matching(
    nodes: &[usize],
    m: &MetricInstance,
) -> Result<Vec<(usize, usize)>, ChristofidesError> {
    let k = nodes.len();
    if k % 2 == 1 {
        return Err(ChristofidesError::OddNodeCount { count: k });
    }
    if k > MATCHING_LIMIT {
        return Err(ChristofidesError::MatchingTooLarge {
            count: k,
            limit: MATCHING_LIMIT,
        });
    }
    let full = (1usize << k) - 1;
    let mut best = vec![f64::INFINITY; full + 1];
    // partner chosen for the lowest set bit
    let mut pick = vec![0u8; full + 1];
    best[0] = 0.0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        for j in (i + 1)..k {
            if rest & (1 << j) == 0 {
                continue;
            }
            let cand = best[rest & !(1 << j)] + m.dist(nodes[i], nodes[j]);
            if cand < best[mask] {
                best[mask] = cand;
                pick[mask] = j as u8;
            }
        }
    }
    let mut pairs = Vec::with_capacity(k / 2);
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let j = pick[mask] as usize;
        pairs.push((nodes[i], nodes[j]));
        mask &= !(1 << i) & !(1 << j);
    }
    Ok(pairs)
}

/// Undirected multigraph; parallel edges are stored with a multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<MultiEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub multiplicity: usize,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(
        &mut self,
        u: usize,
        v: usize,
        weight: f64,
        multiplicity: usize,
    ) -> Result<(), ChristofidesError> {
        if u >= self.n || v >= self.n {
            return Err(ChristofidesError::EdgeOutOfRange { u, v, n: self.n });
        }
        self.edges.push(MultiEdge {
            u,
            v,
            weight,
            multiplicity,
        });
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += e.multiplicity;
            deg[e.v] += e.multiplicity;
        }
        deg
    }

    pub fn total_weight(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| e.weight * e.multiplicity as f64)
            .sum()
    }

    /// Sorted `(min, max)` endpoint pairs, one per unit of multiplicity.
    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .flat_map(|e| core::iter::repeat_n((e.u.min(e.v), e.u.max(e.v)), e.multiplicity))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Hierholzer's algorithm; edges are consumed in insertion order.
///
/// Returns a closed walk starting and ending at `start`.
pub fn euler_tour(g: &Multigraph, start: usize) -> Result<Vec<usize>, ChristofidesError> {
    let n = g.node_count();
    if start >= n {
        return Err(ChristofidesError::EdgeOutOfRange {
            u: start,
            v: start,
            n,
        });
    }
    for (node, &degree) in g.degrees().iter().enumerate() {
        if degree % 2 == 1 {
            return Err(ChristofidesError::OddDegree { node, degree });
        }
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut edge_count = 0;
    for e in g.edges() {
        for _ in 0..e.multiplicity {
            adj[e.u].push((e.v, edge_count));
            adj[e.v].push((e.u, edge_count));
            edge_count += 1;
        }
    }
    let mut used = vec![false; edge_count];
    let mut next = vec![0usize; n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(edge_count + 1);
    while let Some(&v) = stack.last() {
        while next[v] < adj[v].len() && used[adj[v][next[v]].1] {
            next[v] += 1;
        }
        if let Some(&(w, id)) = adj[v].get(next[v]) {
            used[id] = true;
            stack.push(w);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    if circuit.len() != edge_count + 1 {
        return Err(ChristofidesError::Disconnected);
    }
    let mut seen = vec![false; n];
    for &v in &circuit {
        seen[v] = true;
    }
    if n > 1 && seen.iter().any(|s| !s) {
        return Err(ChristofidesError::Disconnected);
    }
    Ok(circuit)
}

/// Every intermediate artifact of one Christofides run.
#[derive(Clone, Debug)]
pub struct ChristofidesRun {
    pub tree: RootedTree,
    pub odd_nodes: Vec<usize>,
    pub matching: Vec<(usize, usize)>,
    pub multigraph: Multigraph,
    pub walk: Vec<usize>,
    pub tour: Tour,
}

pub fn christofides_run(
    m: &MetricInstance,
    root: usize,
) -> Result<ChristofidesRun, ChristofidesError> {
    let tree = prim_mst(m, root);
    let odd_nodes = odd_degree_nodes(&tree);
    let matching = exact_min_matching(&odd_nodes, m)?;
    let mut multigraph = Multigraph::new(m.len());
    for v in 0..tree.len() {
        if let Some(p) = tree.parent(v) {
            multigraph.add_edge(p, v, m.dist(p, v), 1)?;
        }
    }
    for &(a, b) in &matching {
        multigraph.add_edge(a, b, m.dist(a, b), 1)?;
    }
    let walk = euler_tour(&multigraph, root)?;
    let order = shortcut_first_occurrence(&walk, m.len());
    let tour = Tour::new(order, m).expect("shortcut of an Euler tour is a permutation");
    Ok(ChristofidesRun {
        tree,
        odd_nodes,
        matching,
        multigraph,
        walk,
        tour,
    })
}

/// Christofides tour with the MST rooted at node 0.
pub fn christofides_tour(m: &MetricInstance) -> Result<Tour, ChristofidesError> {
    christofides_run(m, 0).map(|run| run.tour)
}
