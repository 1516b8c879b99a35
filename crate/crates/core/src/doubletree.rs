//! Double-tree shortcutting.
//!
//! A tour is a shortcutting of some Euler tour of the doubled tree exactly
//! when every subtree occupies one contiguous arc of the cycle. The
//! minimum-weight shortcutting is therefore found by a bottom-up dynamic
//! program over subtree Hamiltonian paths: the path through `subtree(v)` is
//! a concatenation, in some order, of the singleton `{v}` and one path per
//! child subtree.
//!
//! For a pair of nodes `(i, j)` the only subtree whose path can start at `i`
//! and end at `j` is the one rooted at their lowest common ancestor, so all
//! path tables together fit in a single `n × n` matrix.
//!
//! Per node, the block order is chosen by a subset DP: the state is the set
//! of blocks already laid down plus the current end vertex, and a transition
//! appends a whole child path, entering at any admissible vertex.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::DoubleTreeError;
use crate::metric::MetricInstance;
use crate::spanning::RootedTree;
use crate::tour::Tour;

/// Largest child count accepted by [`min_weight_dt_tour`].
pub const MAX_CHILD_DEGREE: usize = 12;

/// Closed depth-first walk of the doubled tree, `2n - 1` entries.
pub fn double_tree_euler_walk(t: &RootedTree) -> Vec<usize> {
    let mut walk = Vec::with_capacity(2 * t.len() - 1);
    // (node, index of next child to descend into)
    let mut stack = vec![(t.root(), 0usize)];
    walk.push(t.root());
    while let Some(top) = stack.last_mut() {
        let (v, next) = *top;
        if let Some(&c) = t.children(v).get(next) {
            top.1 += 1;
            walk.push(c);
            stack.push((c, 0));
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                walk.push(p);
            }
        }
    }
    walk
}

/// First-occurrence shortcutting of the depth-first walk, i.e. the preorder.
pub fn depth_first_tour(t: &RootedTree, m: &MetricInstance) -> Tour {
    Tour::new(t.preorder().to_vec(), m).expect("preorder is a permutation")
}

/// True iff every subtree of `t` is a contiguous arc of the cyclic `order`.
///
/// `order` must be a permutation of the tree's nodes.
pub fn is_dt_shortcutting(t: &RootedTree, order: &[usize]) -> bool {
    let n = t.len();
    if order.len() != n {
        return false;
    }
    let layout = Layout::new(t);
    let cyc: Vec<usize> = order.iter().map(|&v| layout.pos[v]).collect();
    for p in 0..n {
        let size = layout.size[p];
        if size == 1 || size == n {
            continue;
        }
        let inside = |q: usize| q >= p && q < p + size;
        let boundaries = (0..n)
            .filter(|&k| inside(cyc[k]) != inside(cyc[(k + 1) % n]))
            .count();
        if boundaries > 2 {
            return false;
        }
    }
    true
}

/// Minimum-weight tour among all double-tree shortcuttings of `t`.
pub fn min_weight_dt_tour(t: &RootedTree, m: &MetricInstance) -> Result<Tour, DoubleTreeError> {
    Ok(DtPathTable::build(t, m)?.tour(m))
}

/// Tree in preorder positions; a subtree is the position range `[p, p + size[p])`.
#[derive(Clone, Debug)]
struct Layout {
    n: usize,
    pre: Vec<usize>,
    pos: Vec<usize>,
    size: Vec<usize>,
    /// child positions, by position
    kids: Vec<Vec<usize>>,
}

impl Layout {
    fn new(t: &RootedTree) -> Self {
        let n = t.len();
        let pre = t.preorder().to_vec();
        let mut pos = vec![0; n];
        for (p, &v) in pre.iter().enumerate() {
            pos[v] = p;
        }
        let size = pre.iter().map(|&v| t.subtree_size(v)).collect();
        let kids = pre
            .iter()
            .map(|&v| t.children(v).iter().map(|&c| pos[c]).collect())
            .collect();
        Self {
            n,
            pre,
            pos,
            size,
            kids,
        }
    }

    /// The blocks of the node at position `p`: `{p}` followed by each child subtree.
    fn blocks(&self, p: usize) -> Vec<(usize, usize)> {
        let mut blocks = Vec::with_capacity(self.kids[p].len() + 1);
        blocks.push((p, 1));
        blocks.extend(self.kids[p].iter().map(|&c| (c, self.size[c])));
        blocks
    }
}

/// Optimal subtree Hamiltonian paths realizable by double-tree shortcutting.
///
/// Entry `(i, j)` holds the minimum weight of a path from `i` to `j` through
/// all vertices of the subtree rooted at `lca(i, j)`, with every nested
/// subtree contiguous. Only leaves have a finite diagonal entry (zero).
#[derive(Clone, Debug)]
pub struct DtPathTable {
    layout: Layout,
    /// distances in position coordinates
    dist: Vec<f64>,
    paths: Vec<f64>,
}

impl DtPathTable {
    pub fn build(t: &RootedTree, m: &MetricInstance) -> Result<Self, DoubleTreeError> {
        if t.len() != m.len() {
            return Err(DoubleTreeError::SizeMismatch {
                tree: t.len(),
                metric: m.len(),
            });
        }
        if let Some(node) = (0..t.len()).find(|&v| t.children(v).len() > MAX_CHILD_DEGREE) {
            return Err(DoubleTreeError::DegreeTooLarge {
                node,
                children: t.children(node).len(),
                limit: MAX_CHILD_DEGREE,
            });
        }
        let layout = Layout::new(t);
        let n = layout.n;
        let mut dist = Vec::with_capacity(n * n);
        for &u in &layout.pre {
            dist.extend(layout.pre.iter().map(|&v| m.dist(u, v)));
        }
        let mut table = Self {
            layout,
            dist,
            paths: vec![f64::INFINITY; n * n],
        };
        for p in (0..n).rev() {
            if table.layout.size[p] == 1 {
                table.paths[p * n + p] = 0.0;
                continue;
            }
            let entries = NodeDp::new(&table, p).solve();
            for (i, j, w) in entries {
                table.paths[i * n + j] = w;
                table.paths[j * n + i] = w;
            }
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.layout.n
    }

    pub fn is_empty(&self) -> bool {
        self.layout.n == 0
    }

    /// Optimal path weight from node `i` to node `j` through `subtree(lca(i, j))`.
    ///
    /// `None` when no such path exists (`i == j` on a non-leaf).
    pub fn path_weight(&self, i: usize, j: usize) -> Option<f64> {
        let n = self.layout.n;
        let w = self.paths[self.layout.pos[i] * n + self.layout.pos[j]];
        w.is_finite().then_some(w)
    }

    /// Best cycle: the root path closed by its end-to-start edge.
    pub fn tour(&self, m: &MetricInstance) -> Tour {
        let n = self.layout.n;
        if n == 1 {
            return Tour::new(vec![self.layout.pre[0]], m).expect("single node");
        }
        let ctx = NodeDp::new(self, 0);
        let mut best = (f64::INFINITY, 0, 0);
        for i in 0..n {
            for j in (i + 1)..n {
                if ctx.block_of(i) == ctx.block_of(j) {
                    continue;
                }
                let w = self.paths[i * n + j] + self.dist[j * n + i];
                if w < best.0 {
                    best = (w, i, j);
                }
            }
        }
        let order: Vec<usize> = self
            .reconstruct(0, best.1, best.2)
            .into_iter()
            .map(|p| self.layout.pre[p])
            .collect();
        Tour::new(order, m).expect("reconstruction visits every node once")
    }

    /// Vertex positions of the optimal path from `i` to `j` through the subtree at `p`.
    fn reconstruct(&self, p: usize, i: usize, j: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.layout.size[p]);
        let mut stack = vec![Segment {
            node: p,
            entry: i,
            exit: j,
            singleton: false,
        }];
        while let Some(seg) = stack.pop() {
            if seg.singleton {
                out.push(seg.entry);
                continue;
            }
            let parts = NodeDp::new(self, seg.node).decompose(seg.entry, seg.exit);
            stack.extend(parts.into_iter().rev());
        }
        out
    }
}

/// One block of a subtree path: enter at `entry`, leave at `exit`.
#[derive(Clone, Copy, Debug)]
struct Segment {
    node: usize,
    entry: usize,
    exit: usize,
    singleton: bool,
}

/// Subset DP over the blocks of one node.
struct NodeDp<'a> {
    table: &'a DtPathTable,
    lo: usize,
    len: usize,
    blocks: Vec<(usize, usize)>,
    /// block index for each position in `[lo, lo + len)`
    block_idx: Vec<usize>,
    /// block never used as a path start; its pairs are filled by symmetry
    skip: usize,
    /// `entry_cost[b][e - lo][w - start_b]`: cheapest cost of entering block
    /// `b` from exit `e` and leaving at `w`; rows are filled on first use
    entry_cost: Vec<Vec<Vec<f64>>>,
}

impl<'a> NodeDp<'a> {
    fn new(table: &'a DtPathTable, p: usize) -> Self {
        let layout = &table.layout;
        let lo = p;
        let len = layout.size[p];
        let blocks = layout.blocks(p);
        let mut block_idx = vec![0; len];
        for (b, &(start, size)) in blocks.iter().enumerate() {
            block_idx[start - lo..start - lo + size].fill(b);
        }
        // largest block, last on ties
        let skip = (0..blocks.len())
            .max_by_key(|&b| (blocks[b].1, b))
            .unwrap_or(0);
        let entry_cost = blocks.iter().map(|_| vec![Vec::new(); len]).collect();
        Self {
            table,
            lo,
            len,
            blocks,
            block_idx,
            skip,
            entry_cost,
        }
    }

    fn block_of(&self, q: usize) -> usize {
        self.block_idx[q - self.lo]
    }

    /// Order in which pairs are computed: a path always starts in the lower-ranked block.
    fn rank(&self, b: usize) -> usize {
        if b == self.skip {
            self.blocks.len()
        } else {
            b
        }
    }

    /// Fills `entry_cost[b]` row `e`: for each exit `w` of block `b`,
    /// `min_u dist(e, u) + path(u, w)` over admissible entries `u`.
    fn ensure_entry_row(&mut self, b: usize, e: usize) {
        let row = &mut self.entry_cost[b][e - self.lo];
        if !row.is_empty() {
            return;
        }
        let table = self.table;
        let n = table.layout.n;
        let (start, size) = self.blocks[b];
        if size == 1 {
            row.push(table.dist[e * n + start]);
        } else {
            row.resize(size, f64::INFINITY);
            let subs = table.layout.blocks(start);
            let dist_e = &table.dist[e * n..(e + 1) * n];
            for (alpha, &(ua, us)) in subs.iter().enumerate() {
                for (beta, &(wb, ws)) in subs.iter().enumerate() {
                    if alpha == beta {
                        continue;
                    }
                    let out = &mut row[wb - start..wb - start + ws];
                    for (u, &du) in dist_e.iter().enumerate().skip(ua).take(us) {
                        let paths = &table.paths[u * n + wb..u * n + wb + ws];
                        for (o, &pw) in out.iter_mut().zip(paths) {
                            let cand = du + pw;
                            if cand < *o {
                                *o = cand;
                            }
                        }
                    }
                }
            }
        }
    }

    /// Entry vertex of block `b` realizing `entry_cost[b][e][w]`.
    fn best_entry(&self, b: usize, e: usize, w: usize) -> usize {
        let table = self.table;
        let n = table.layout.n;
        let (start, size) = self.blocks[b];
        if size == 1 {
            return start;
        }
        let subs = table.layout.blocks(start);
        let beta = subs
            .iter()
            .position(|&(s, l)| w >= s && w < s + l)
            .expect("exit lies in the block");
        let mut best = (f64::INFINITY, usize::MAX);
        for (alpha, &(ua, us)) in subs.iter().enumerate() {
            if alpha == beta {
                continue;
            }
            for u in ua..ua + us {
                let cand = table.dist[e * n + u] + table.paths[u * n + w];
                if cand < best.0 {
                    best = (cand, u);
                }
            }
        }
        best.1
    }

    /// Runs the subset DP from start vertex `i`; returns the end costs over
    /// the node's positions with every block placed. With `preds`, records
    /// the previous exit of every improved state.
    fn run_from(&mut self, i: usize, mut preds: Option<&mut Vec<usize>>) -> Vec<f64> {
        let nb = self.blocks.len();
        let a = self.block_of(i);
        let len = self.len;
        let lo = self.lo;
        let others: Vec<usize> = (0..nb).filter(|&b| b != a).collect();
        let states = 1usize << others.len();
        let mut cost = vec![f64::INFINITY; states * len];
        if let Some(p) = preds.as_deref_mut() {
            p.clear();
            p.resize(states * len, usize::MAX);
        }

        let table = self.table;
        let n = table.layout.n;
        let (a_start, a_size) = self.blocks[a];
        if a_size == 1 {
            cost[i - lo] = 0.0;
        } else {
            // leave the start block at any vertex in a different sub-block
            let subs = table.layout.blocks(a_start);
            let sub_of = |q: usize| subs.iter().position(|&(s, l)| q >= s && q < s + l);
            let si = sub_of(i);
            for x in a_start..a_start + a_size {
                if sub_of(x) != si {
                    cost[x - lo] = table.paths[i * n + x];
                }
            }
        }

        for r in 0..states - 1 {
            let placed: Vec<usize> = if r == 0 {
                vec![a]
            } else {
                (0..others.len())
                    .filter(|&k| r & (1 << k) != 0)
                    .map(|k| others[k])
                    .collect()
            };
            for &pb in &placed {
                let (ps, pl) = self.blocks[pb];
                for e in ps..ps + pl {
                    let g = cost[r * len + e - lo];
                    if !g.is_finite() {
                        continue;
                    }
                    for (k, &c) in others.iter().enumerate() {
                        if r & (1 << k) != 0 {
                            continue;
                        }
                        self.ensure_entry_row(c, e);
                        let (cs, cl) = self.blocks[c];
                        let next = r | (1 << k);
                        let row = &self.entry_cost[c][e - lo];
                        let dst = &mut cost[next * len + cs - lo..next * len + cs - lo + cl];
                        match preds.as_deref_mut() {
                            None => {
                                for (d, &q) in dst.iter_mut().zip(row) {
                                    let cand = g + q;
                                    if cand < *d {
                                        *d = cand;
                                    }
                                }
                            }
                            Some(p) => {
                                let pred = &mut p[next * len + cs - lo..next * len + cs - lo + cl];
                                for ((d, &q), pr) in dst.iter_mut().zip(row).zip(pred) {
                                    let cand = g + q;
                                    if cand < *d {
                                        *d = cand;
                                        *pr = e;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        cost.split_off((states - 1) * len)
    }

    /// All `(i, j, weight)` entries whose lowest common ancestor is this node.
    fn solve(mut self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for a in 0..self.blocks.len() {
            if a == self.skip {
                continue;
            }
            let (start, size) = self.blocks[a];
            for i in start..start + size {
                let ends = self.run_from(i, None);
                for b in 0..self.blocks.len() {
                    if self.rank(b) <= self.rank(a) {
                        continue;
                    }
                    let (bs, bl) = self.blocks[b];
                    for j in bs..bs + bl {
                        out.push((i, j, ends[j - self.lo]));
                    }
                }
            }
        }
        out
    }

    fn segment(&self, b: usize, entry: usize, exit: usize) -> Segment {
        let (start, size) = self.blocks[b];
        Segment {
            node: start,
            entry,
            exit,
            singleton: b == 0 || size == 1,
        }
    }

    /// Splits the optimal `i → j` path of this node into its blocks, in order.
    fn decompose(mut self, i: usize, j: usize) -> Vec<Segment> {
        let reversed = self.rank(self.block_of(i)) > self.rank(self.block_of(j));
        let (s, t) = if reversed { (j, i) } else { (i, j) };
        let a = self.block_of(s);
        let others: Vec<usize> = (0..self.blocks.len()).filter(|&b| b != a).collect();
        let mut preds = Vec::new();
        self.run_from(s, Some(&mut preds));

        let len = self.len;
        let mut r = (1usize << others.len()) - 1;
        let mut cur = t;
        let mut parts = Vec::with_capacity(self.blocks.len());
        while r != 0 {
            let b = self.block_of(cur);
            let k = others
                .iter()
                .position(|&o| o == b)
                .expect("end block is placed");
            let e = preds[r * len + cur - self.lo];
            let u = self.best_entry(b, e, cur);
            parts.push(self.segment(b, u, cur));
            r &= !(1 << k);
            cur = e;
        }
        parts.push(self.segment(a, s, cur));
        if reversed {
            for seg in &mut parts {
                core::mem::swap(&mut seg.entry, &mut seg.exit);
            }
        } else {
            parts.reverse();
        }
        parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Point2D;
    use crate::spanning::{prim_mst, tree_weight};

    fn line(n: usize) -> MetricInstance {
        MetricInstance::euclidean((0..n).map(|i| Point2D::new(i as f64, 0.0)).collect()).unwrap()
    }

    #[test]
    fn euler_walk_of_a_path() {
        let t = RootedTree::from_parents(0, vec![0, 0, 1]).unwrap();
        assert_eq!(double_tree_euler_walk(&t), vec![0, 1, 2, 1, 0]);
    }

    #[test]
    fn euler_walk_of_a_cherry() {
        let t = RootedTree::from_parents(0, vec![0, 0, 0]).unwrap();
        assert_eq!(double_tree_euler_walk(&t), vec![0, 1, 0, 2, 0]);
    }

    #[test]
    fn depth_first_tour_of_a_path() {
        let m = line(3);
        let t = prim_mst(&m, 0);
        assert_eq!(depth_first_tour(&t, &m).order(), &[0, 1, 2]);
    }

    #[test]
    fn split_subtree_is_rejected() {
        // root 4 with child subtrees {0,1} and {2,3}
        let t = RootedTree::from_parents(4, vec![4, 0, 4, 2, 4]).unwrap();
        assert!(!is_dt_shortcutting(&t, &[0, 2, 1, 3, 4]));
        assert!(is_dt_shortcutting(&t, &[0, 1, 2, 3, 4]));
        assert!(is_dt_shortcutting(&t, &[1, 0, 4, 3, 2]));
    }

    #[test]
    fn collinear_path_sweeps_and_returns() {
        let m = line(5);
        let t = prim_mst(&m, 0);
        let tour = min_weight_dt_tour(&t, &m).unwrap();
        assert!((tour.weight() - 8.0).abs() < 1e-12);
        assert!(is_dt_shortcutting(&t, tour.order()));
    }

    #[test]
    fn tiny_instances() {
        let m = line(1);
        let t = prim_mst(&m, 0);
        assert_eq!(min_weight_dt_tour(&t, &m).unwrap().order(), &[0]);
        let m = line(2);
        let t = prim_mst(&m, 0);
        let tour = min_weight_dt_tour(&t, &m).unwrap();
        assert_eq!(tour.order(), &[0, 1]);
        assert_eq!(tour.weight(), 2.0);
    }

    #[test]
    fn sandwich_on_a_small_grid() {
        let pts = (0..12)
            .map(|k| Point2D::new((k % 4) as f64 * 1.3, (k / 4) as f64 + 0.1 * (k % 3) as f64))
            .collect();
        let m = MetricInstance::euclidean(pts).unwrap();
        let t = prim_mst(&m, 5);
        let best = min_weight_dt_tour(&t, &m).unwrap();
        let df = depth_first_tour(&t, &m);
        assert!(best.weight() <= df.weight() + 1e-9);
        assert!(df.weight() <= 2.0 * tree_weight(&t, &m) + 1e-9);
        assert!(is_dt_shortcutting(&t, best.order()));
    }

    #[test]
    fn degree_guard_names_the_node() {
        let n = MAX_CHILD_DEGREE + 2;
        let m = MetricInstance::euclidean(
            (0..n)
                .map(|k| Point2D::polar(1.0 + k as f64 * 0.01, k as f64 * 25.0))
                .collect(),
        )
        .unwrap();
        let mut parent = vec![3; n];
        parent[3] = 3;
        let t = RootedTree::from_parents(3, parent).unwrap();
        assert_eq!(
            min_weight_dt_tour(&t, &m),
            Err(DoubleTreeError::DegreeTooLarge {
                node: 3,
                children: n - 1,
                limit: MAX_CHILD_DEGREE
            })
        );
    }

    #[test]
    fn path_table_is_symmetric_and_leaf_diagonal_only() {
        let m = MetricInstance::euclidean(
            (0..9)
                .map(|k| Point2D::new((k * 7 % 5) as f64, (k * 3 % 4) as f64))
                .collect(),
        )
        .unwrap();
        let t = prim_mst(&m, 0);
        let table = DtPathTable::build(&t, &m).unwrap();
        for i in 0..9 {
            let leaf = t.children(i).is_empty();
            assert_eq!(table.path_weight(i, i).is_some(), leaf);
            for j in 0..9 {
                assert_eq!(table.path_weight(i, j), table.path_weight(j, i));
            }
        }
    }
}
