//! Hamiltonian cycles in canonical form.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::TourError;
use crate::metric::MetricInstance;

/// A cyclic permutation of `0..n` with its cached weight.
///
/// The stored order is canonical: it starts at the smallest index and, of
/// the two directions, takes the lexicographically smaller one.
#[derive(Clone, Debug, PartialEq)]
pub struct Tour {
    order: Vec<usize>,
    weight: f64,
}

impl Tour {
    pub fn new(order: Vec<usize>, m: &MetricInstance) -> Result<Self, TourError> {
        check_permutation(&order, m.len())?;
        let order = canonical_order(&order);
        let weight = tour_weight(&order, m);
        Ok(Self { order, weight })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Tour edges as sorted `(min, max)` pairs (a 2-node tour has its edge twice).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order.len();
        if n < 2 {
            return Vec::new();
        }
        let mut edges: Vec<(usize, usize)> = (0..n)
            .map(|k| {
                let (a, b) = (self.order[k], self.order[(k + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges
    }
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<(), TourError> {
    if order.is_empty() {
        return Err(TourError::Empty);
    }
    let bad = TourError::NotPermutation {
        len: order.len(),
        n,
    };
    if order.len() != n {
        return Err(bad);
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(bad);
        }
        seen[v] = true;
    }
    Ok(())
}

/// Rotates to the smallest element and picks the lexicographically smaller direction.
pub fn canonical_order(order: &[usize]) -> Vec<usize> {
    let n = order.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&k| order[k]).unwrap_or(0);
    let forward: Vec<usize> = (0..n).map(|k| order[(start + k) % n]).collect();
    let backward: Vec<usize> = (0..n).map(|k| order[(start + n - k) % n]).collect();
    if backward < forward {
        backward
    } else {
        forward
    }
}

/// Sum of consecutive distances including the closing edge.
pub fn tour_weight(order: &[usize], m: &MetricInstance) -> f64 {
    let n = order.len();
    if n < 2 {
        return 0.0;
    }
    (0..n).map(|k| m.dist(order[k], order[(k + 1) % n])).sum()
}

/// Keeps the first occurrence of every node of a closed walk.
pub fn shortcut_first_occurrence(walk: &[usize], n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for &v in walk {
        if !seen[v] {
            seen[v] = true;
            out.push(v);
        }
    }
    out
}

/// Weight of an open walk (no closing edge).
pub fn walk_weight(walk: &[usize], m: &MetricInstance) -> f64 {
    walk.windows(2).map(|w| m.dist(w[0], w[1])).sum()
}
