//! Rooted minimum spanning trees.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::TreeError;
use crate::metric::MetricInstance;

/// A rooted spanning tree over nodes `0..n`.
///
/// Child lists are kept in ascending index order; that order is the
/// traversal order used by the depth-first walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    subtree_size: Vec<usize>,
    preorder: Vec<usize>,
}

impl RootedTree {
    /// Builds a tree from a parent array with `parent[root] == root`.
    pub fn from_parents(root: usize, parent: Vec<usize>) -> Result<Self, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if root >= n {
            return Err(TreeError::RootOutOfRange { root, n });
        }
        if parent[root] != root {
            return Err(TreeError::RootParent { root });
        }
        let mut children = vec![Vec::new(); n];
        for (v, &p) in parent.iter().enumerate() {
            if p >= n {
                return Err(TreeError::ParentOutOfRange { node: v });
            }
            if v == root {
                continue;
            }
            if p == v {
                return Err(TreeError::ExtraRoot { node: v });
            }
            children[p].push(v);
        }

        // Preorder from the root; anything unreached sits on a cycle.
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            stack.extend(children[v].iter().rev());
        }
        if preorder.len() != n {
            let mut seen = vec![false; n];
            for &v in &preorder {
                seen[v] = true;
            }
            let node = seen.iter().position(|s| !s).unwrap_or(0);
            return Err(TreeError::Cycle { node });
        }

        let mut subtree_size = vec![1usize; n];
        for &v in preorder.iter().rev() {
            if v != root {
                subtree_size[parent[v]] += subtree_size[v];
            }
        }
        Ok(Self {
            root,
            parent,
            children,
            subtree_size,
            preorder,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Parent of `v`, or `None` for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != self.root).then(|| self.parent[v])
    }

    /// Parent array with `parents()[root] == root`.
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.subtree_size[v]
    }

    /// Nodes in depth-first preorder (children visited in stored order).
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// Number of incident tree edges.
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(v != self.root)
    }

    /// Tree edges as `(min, max)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = (0..self.len())
            .filter(|&v| v != self.root)
            .map(|v| {
                let p = self.parent[v];
                (p.min(v), p.max(v))
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// The same undirected tree rooted at `new_root`.
    pub fn rerooted(&self, new_root: usize) -> Result<Self, TreeError> {
        let n = self.len();
        if new_root >= n {
            return Err(TreeError::RootOutOfRange { root: new_root, n });
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![usize::MAX; n];
        parent[new_root] = new_root;
        let mut stack = vec![new_root];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        Self::from_parents(new_root, parent)
    }
}

/// Prim's algorithm on the complete graph of `m`, rooted at `root`.
///
/// Ties are broken deterministically: the next attached node minimizes the
/// key `(weight, child index, parent index)` lexicographically.
///
/// # Panics
/// Panics if `root >= m.len()`.
pub fn prim_mst(m: &MetricInstance, root: usize) -> RootedTree {
    let n = m.len();
    assert!(root < n, "root {root} out of range for {n} points");
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    key[root] = 0.0;
    parent[root] = root;

    for _ in 0..n {
        let mut best = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (best == usize::MAX || key[v] < key[best]) {
                best = v;
            }
        }
        let u = best;
        in_tree[u] = true;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let w = m.dist(u, v);
            if w < key[v] || (w == key[v] && u < parent[v]) {
                key[v] = w;
                parent[v] = u;
            }
        }
    }
    RootedTree::from_parents(root, parent).expect("Prim produces a spanning tree")
}

pub fn tree_weight(t: &RootedTree, m: &MetricInstance) -> f64 {
    (0..t.len())
        .filter_map(|v| t.parent(v).map(|p| m.dist(p, v)))
        .sum()
}

/// Largest number of children over all nodes.
pub fn max_child_degree(t: &RootedTree) -> usize {
    (0..t.len()).map(|v| t.children(v).len()).max().unwrap_or(0)
}
