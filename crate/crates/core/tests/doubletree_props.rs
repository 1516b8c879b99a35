mod common;

use common::{close, random_instance, random_tree, rng};
use dtlab_core::oracle::canonical_tours;
use dtlab_core::{
    depth_first_tour, double_tree_euler_walk, is_dt_shortcutting, min_weight_dt_tour, prim_mst,
    tree_weight, DoubleTreeError, DtPathTable, MetricInstance, Point2D, RootedTree,
};
use rand::Rng;

fn kruskal_weight(m: &MetricInstance) -> f64 {
    let n = m.len();
    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((m.dist(i, j), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], mut v: usize) -> usize {
        while comp[v] != v {
            comp[v] = comp[comp[v]];
            v = comp[v];
        }
        v
    }
    let mut total = 0.0;
    for (w, i, j) in edges {
        let (a, b) = (find(&mut comp, i), find(&mut comp, j));
        if a != b {
            comp[a] = b;
            total += w;
        }
    }
    total
}

#[test]
fn prim_matches_kruskal() {
    let mut r = rng(21);
    for _ in 0..100 {
        let n = r.random_range(1..40);
        let m = random_instance(&mut r, n);
        let root = r.random_range(0..n);
        let t = prim_mst(&m, root);
        assert_eq!(t.root(), root);
        assert_eq!(t.edges().len(), n - 1);
        assert!(close(tree_weight(&t, &m), kruskal_weight(&m), 1e-9));
    }
}

#[test]
fn euler_walk_uses_each_edge_twice() {
    let mut r = rng(22);
    for _ in 0..50 {
        let n = r.random_range(1..30);
        let t = random_tree(&mut r, n);
        let walk = double_tree_euler_walk(&t);
        assert_eq!(walk.len(), 2 * n - 1);
        assert_eq!(walk.first(), Some(&t.root()));
        assert_eq!(walk.last(), Some(&t.root()));
        let mut steps: Vec<(usize, usize)> = walk
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect();
        steps.sort_unstable();
        let mut doubled: Vec<(usize, usize)> = t.edges().into_iter().flat_map(|e| [e, e]).collect();
        doubled.sort_unstable();
        assert_eq!(steps, doubled);
    }
}

/// Every path from `i` to `j` through `nodes` that keeps each nested subtree contiguous.
fn brute_path_weight(
    t: &RootedTree,
    m: &MetricInstance,
    nodes: &[usize],
    i: usize,
    j: usize,
) -> f64 {
    let subtree = |v: usize| {
        let mut out = vec![v];
        let mut k = 0;
        while k < out.len() {
            out.extend_from_slice(t.children(out[k]));
            k += 1;
        }
        out
    };
    let nested: Vec<Vec<usize>> = nodes.iter().map(|&v| subtree(v)).collect();
    let mut best = f64::INFINITY;
    let mut perm = nodes.to_vec();
    perm.sort_unstable();
    loop {
        if perm[0] == i && perm[perm.len() - 1] == j {
            let contiguous = nested.iter().all(|s| {
                let pos: Vec<usize> = (0..perm.len()).filter(|&k| s.contains(&perm[k])).collect();
                pos.last().unwrap() - pos[0] + 1 == pos.len()
            });
            if contiguous {
                let w: f64 = perm.windows(2).map(|p| m.dist(p[0], p[1])).sum();
                best = best.min(w);
            }
        }
        if !dtlab_core::oracle::next_permutation(&mut perm) {
            return best;
        }
    }
}

#[test]
fn path_table_matches_brute_force_paths() {
    let mut r = rng(23);
    for _ in 0..30 {
        let n = r.random_range(2..8);
        let t = random_tree(&mut r, n);
        let m = random_instance(&mut r, n);
        let table = DtPathTable::build(&t, &m).unwrap();
        let all: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    let leaf = t.children(i).is_empty();
                    assert_eq!(table.path_weight(i, i), leaf.then_some(0.0));
                    continue;
                }
                // lca: deepest node whose subtree holds both
                let mut lca = t.root();
                'descend: loop {
                    for &c in t.children(lca) {
                        let mut sub = vec![c];
                        let mut k = 0;
                        while k < sub.len() {
                            sub.extend_from_slice(t.children(sub[k]));
                            k += 1;
                        }
                        if sub.contains(&i) && sub.contains(&j) {
                            lca = c;
                            continue 'descend;
                        }
                    }
                    break;
                }
                let members: Vec<usize> = all
                    .iter()
                    .copied()
                    .filter(|&v| {
                        let mut u = v;
                        loop {
                            if u == lca {
                                return true;
                            }
                            match t.parent(u) {
                                Some(p) => u = p,
                                None => return false,
                            }
                        }
                    })
                    .collect();
                let want = brute_path_weight(&t, &m, &members, i, j);
                let got = table.path_weight(i, j).unwrap_or(f64::INFINITY);
                assert!(close(got, want, 1e-9) || (got.is_infinite() && want.is_infinite()));
            }
        }
    }
}

#[test]
fn shortcuttings_sandwich_and_qualify() {
    let mut r = rng(24);
    for _ in 0..80 {
        let n = r.random_range(2..60);
        let m = random_instance(&mut r, n);
        let t = prim_mst(&m, r.random_range(0..n));
        let mst = tree_weight(&t, &m);
        let df = depth_first_tour(&t, &m);
        let dt = min_weight_dt_tour(&t, &m).unwrap();
        assert!(is_dt_shortcutting(&t, df.order()));
        assert!(is_dt_shortcutting(&t, dt.order()));
        assert!(mst <= dt.weight() + 1e-9);
        assert!(dt.weight() <= df.weight() + 1e-9);
        assert!(df.weight() <= 2.0 * mst + 1e-9);
    }
}

#[test]
fn minimum_is_independent_of_the_root() {
    let mut r = rng(25);
    for _ in 0..25 {
        let n = r.random_range(3..25);
        let m = random_instance(&mut r, n);
        let t = prim_mst(&m, 0);
        let base = min_weight_dt_tour(&t, &m).unwrap().weight();
        for root in 1..n {
            let w = min_weight_dt_tour(&t.rerooted(root).unwrap(), &m)
                .unwrap()
                .weight();
            assert!(close(w, base, 1e-9), "root {root}: {w} vs {base}");
        }
    }
}

#[test]
fn contiguity_test_against_direct_definition() {
    let mut r = rng(26);
    for _ in 0..40 {
        let n = r.random_range(3..8);
        let t = random_tree(&mut r, n);
        for order in canonical_tours(n) {
            // a subtree is an arc iff some rotation lists it as a prefix
            let arcs = (0..n).all(|v| {
                let mut sub = vec![v];
                let mut k = 0;
                while k < sub.len() {
                    sub.extend_from_slice(t.children(sub[k]));
                    k += 1;
                }
                (0..n).any(|s| {
                    let prefix: Vec<usize> = (0..sub.len()).map(|k| order[(s + k) % n]).collect();
                    prefix.iter().all(|x| sub.contains(x))
                })
            });
            assert_eq!(is_dt_shortcutting(&t, &order), arcs, "{order:?}");
        }
    }
}

#[test]
fn wide_nodes_are_refused() {
    let n = 15;
    let m = MetricInstance::euclidean(
        (0..n)
            .map(|i| Point2D::polar(1.0, i as f64 * 24.0))
            .collect(),
    )
    .unwrap();
    let t = RootedTree::from_parents(0, vec![0; n]).unwrap();
    assert_eq!(
        min_weight_dt_tour(&t, &m),
        Err(DoubleTreeError::DegreeTooLarge {
            node: 0,
            children: 14,
            limit: 12
        })
    );
}
