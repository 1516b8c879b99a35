mod common;

use common::{permutation_minimum, random_instance, rng};
use dtlab_core::christofides::christofides_run;
use dtlab_core::{held_karp, min_weight_dt_tour, prim_mst, tree_weight};
use rand::Rng;

#[test]
fn run_artifacts_are_consistent() {
    let mut r = rng(31);
    for _ in 0..60 {
        let n = r.random_range(2..20);
        let m = random_instance(&mut r, n);
        let run = christofides_run(&m, 0).unwrap();
        assert_eq!(run.matching.len() * 2, run.odd_nodes.len());
        assert!(run.multigraph.degrees().iter().all(|d| d % 2 == 0));
        assert_eq!(run.walk.len(), run.multigraph.edge_multiset().len() + 1);
        assert_eq!(run.walk.first(), run.walk.last());
        let mut steps: Vec<(usize, usize)> = run
            .walk
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect();
        steps.sort_unstable();
        assert_eq!(steps, run.multigraph.edge_multiset());
        assert!(run.tour.weight() <= run.multigraph.total_weight() + 1e-9);
    }
}

#[test]
fn factor_guarantees_against_exact_optimum() {
    let mut r = rng(32);
    for _ in 0..40 {
        let n = r.random_range(3..12);
        let m = random_instance(&mut r, n);
        let opt = held_karp(&m).unwrap().weight();
        let chr = christofides_run(&m, 0).unwrap().tour.weight();
        let dt = min_weight_dt_tour(&prim_mst(&m, 0), &m).unwrap().weight();
        assert!(chr <= 1.5 * opt + 1e-9);
        assert!(dt <= 2.0 * opt + 1e-9);
        assert!(tree_weight(&prim_mst(&m, 0), &m) <= opt + 1e-9);
    }
}

#[test]
fn held_karp_equals_permutation_minimum() {
    let mut r = rng(33);
    for _ in 0..30 {
        let n = r.random_range(1..9);
        let m = random_instance(&mut r, n);
        let hk = held_karp(&m).unwrap();
        assert!((hk.weight() - permutation_minimum(&m)).abs() < 1e-9);
    }
}
