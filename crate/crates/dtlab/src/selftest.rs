//! Oracle-equivalence checks runnable from the command line.

use std::collections::BTreeSet;

use dtlab_core::oracle::canonical_tours;
use dtlab_core::{
    brute_min_dt, enumerate_dt_tours, held_karp, is_dt_shortcutting, min_weight_dt_tour, prim_mst,
    tour_weight, DistanceMatrix, MetricInstance, Point2D, RootedTree,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub mismatches: usize,
}

fn random_instance(rng: &mut StdRng, n: usize) -> MetricInstance {
    if rng.random_bool(0.5) {
        let points = (0..n)
            .map(|_| Point2D::new(rng.random_range(0.0..10.0), rng.random_range(0.0..10.0)))
            .collect();
        MetricInstance::euclidean(points).expect("finite points")
    } else {
        // entries in [1, 2] always satisfy the triangle inequality
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let w = rng.random_range(1.0..2.0);
                data[i * n + j] = w;
                data[j * n + i] = w;
            }
        }
        MetricInstance::from_matrix(DistanceMatrix::new(n, data).expect("valid matrix"))
    }
}

fn random_tree(rng: &mut StdRng, n: usize) -> RootedTree {
    let mut parent = vec![0; n];
    for (v, p) in parent.iter_mut().enumerate().skip(1) {
        *p = rng.random_range(0..v);
    }
    RootedTree::from_parents(0, parent).expect("random recursive tree")
}

/// Minimum-weight shortcutting against brute force, Held–Karp against
/// exhaustive search, and Euler-tour enumeration against the contiguity test.
pub fn run_selftest(seed: u64) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut dp = Check {
        name: "min-dt equals brute force",
        cases: 200,
        mismatches: 0,
    };
    for _ in 0..dp.cases {
        let n = rng.random_range(5..=9);
        let m = random_instance(&mut rng, n);
        let t = prim_mst(&m, rng.random_range(0..n));
        let fast = min_weight_dt_tour(&t, &m).expect("degree fits").weight();
        let slow = brute_min_dt(&t, &m).expect("size fits").weight();
        if (fast - slow).abs() > 1e-9 {
            dp.mismatches += 1;
        }
    }
    let mut hk = Check {
        name: "held-karp equals exhaustive search",
        cases: 50,
        mismatches: 0,
    };
    for _ in 0..hk.cases {
        let n = rng.random_range(3..=8);
        let m = random_instance(&mut rng, n);
        let best = canonical_tours(n)
            .iter()
            .map(|o| tour_weight(o, &m))
            .fold(f64::INFINITY, f64::min);
        if (held_karp(&m).expect("size fits").weight() - best).abs() > 1e-9 {
            hk.mismatches += 1;
        }
    }
    let mut ch = Check {
        name: "euler-tour shortcuttings equal contiguous tours",
        cases: 50,
        mismatches: 0,
    };
    for _ in 0..ch.cases {
        let n = rng.random_range(1..=7);
        let t = random_tree(&mut rng, n);
        let walked = enumerate_dt_tours(&t).expect("size fits");
        let filtered: BTreeSet<Vec<usize>> = canonical_tours(n)
            .into_iter()
            .filter(|o| is_dt_shortcutting(&t, o))
            .collect();
        if walked != filtered {
            ch.mismatches += 1;
        }
    }
    vec![dp, hk, ch]
}
