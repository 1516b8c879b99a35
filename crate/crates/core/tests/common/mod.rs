#![allow(dead_code)]

use dtlab_core::{DistanceMatrix, MetricInstance, Point2D, RootedTree};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut StdRng, n: usize) -> Vec<Point2D> {
    (0..n)
        .map(|_| Point2D::new(rng.random_range(0.0..10.0), rng.random_range(0.0..10.0)))
        .collect()
}

pub fn random_euclidean(rng: &mut StdRng, n: usize) -> MetricInstance {
    MetricInstance::euclidean(random_points(rng, n)).unwrap()
}

/// Entries drawn from [1, 2] always satisfy the triangle inequality.
pub fn random_matrix_metric(rng: &mut StdRng, n: usize) -> MetricInstance {
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.random_range(1.0..2.0);
            d[i * n + j] = w;
            d[j * n + i] = w;
        }
    }
    MetricInstance::from_matrix(DistanceMatrix::new(n, d).unwrap())
}

pub fn random_instance(rng: &mut StdRng, n: usize) -> MetricInstance {
    if rng.random_bool(0.5) {
        random_euclidean(rng, n)
    } else {
        random_matrix_metric(rng, n)
    }
}

/// Uniform random recursive tree with a random root.
pub fn random_tree(rng: &mut StdRng, n: usize) -> RootedTree {
    let mut label: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        label.swap(i, rng.random_range(0..=i));
    }
    let mut parent = vec![0; n];
    for k in 1..n {
        parent[label[k]] = label[rng.random_range(0..k)];
    }
    parent[label[0]] = label[0];
    RootedTree::from_parents(label[0], parent).unwrap()
}

/// Minimum over every cyclic order with node 0 fixed first, by plain recursion.
pub fn permutation_minimum(m: &MetricInstance) -> f64 {
    fn extend(
        m: &MetricInstance,
        path: &mut Vec<usize>,
        used: &mut [bool],
        acc: f64,
        best: &mut f64,
    ) {
        let last = *path.last().unwrap();
        if path.len() == m.len() {
            *best = best.min(acc + m.dist(last, path[0]));
            return;
        }
        for v in 1..m.len() {
            if !used[v] {
                used[v] = true;
                path.push(v);
                extend(m, path, used, acc + m.dist(last, v), best);
                path.pop();
                used[v] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut used = vec![false; m.len()];
    used[0] = true;
    extend(m, &mut vec![0], &mut used, 0.0, &mut best);
    best
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
