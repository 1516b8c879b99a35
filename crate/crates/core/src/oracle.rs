//! Brute-force ground truth, kept independent of the production algorithms.
//!
//! [`enumerate_dt_tours`] follows the verbal definition of double-tree
//! shortcutting literally: every Euler tour of the doubled tree, then every
//! choice of which occurrence of each node survives.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::doubletree::is_dt_shortcutting;
use crate::error::OracleError;
use crate::metric::MetricInstance;
use crate::spanning::RootedTree;
use crate::tour::{canonical_order, tour_weight, Tour};

pub const HELD_KARP_LIMIT: usize = 16;
pub const ENUMERATION_LIMIT: usize = 8;
pub const BRUTE_DT_LIMIT: usize = 9;

fn guard(routine: &'static str, n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { routine, n, limit })
    } else {
        Ok(())
    }
}

/// Exact optimal tour by the Held–Karp bitmask DP.
pub fn held_karp(m: &MetricInstance) -> Result<Tour, OracleError> {
    let n = m.len();
    guard("held_karp", n, HELD_KARP_LIMIT)?;
    if n <= 3 {
        return Ok(Tour::new((0..n).collect(), m).expect("identity permutation"));
    }
    // node 0 is the fixed start; bit k stands for node k + 1
    let k = n - 1;
    let states = 1usize << k;
    let mut cost = vec![f64::INFINITY; states * k];
    let mut prev = vec![usize::MAX; states * k];
    for j in 0..k {
        cost[(1 << j) * k + j] = m.dist(0, j + 1);
    }
    for mask in 1..states {
        for j in 0..k {
            let c = cost[mask * k + j];
            if mask & (1 << j) == 0 || !c.is_finite() {
                continue;
            }
            for next in 0..k {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let to = mask | (1 << next);
                let cand = c + m.dist(j + 1, next + 1);
                if cand < cost[to * k + next] {
                    cost[to * k + next] = cand;
                    prev[to * k + next] = j;
                }
            }
        }
    }
    let full = states - 1;
    let last = (0..k)
        .min_by(|&a, &b| {
            let wa = cost[full * k + a] + m.dist(a + 1, 0);
            let wb = cost[full * k + b] + m.dist(b + 1, 0);
            wa.total_cmp(&wb)
        })
        .expect("k > 0");
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    let mut cur = last;
    while cur != usize::MAX {
        order.push(cur + 1);
        let p = prev[mask * k + cur];
        mask &= !(1 << cur);
        cur = p;
    }
    order.push(0);
    order.reverse();
    Ok(Tour::new(order, m).expect("Held-Karp visits every node"))
}

/// Rearranges `items` into the next lexicographic permutation; false at the last one.
pub fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// All canonical cyclic orders of `0..n`, in lexicographic order: `(n-1)!/2` of them for `n ≥ 3`.
pub fn canonical_tours(n: usize) -> Vec<Vec<usize>> {
    if n <= 2 {
        return vec![(0..n).collect()];
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    loop {
        if rest[0] < rest[n - 2] {
            let mut order = Vec::with_capacity(n);
            order.push(0);
            order.extend_from_slice(&rest);
            out.push(order);
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    out
}

/// Closed depth-first walks of the doubled subtree at `v`, one per child ordering.
fn subtree_walks(t: &RootedTree, v: usize) -> Vec<Vec<usize>> {
    let mut kids: Vec<usize> = t.children(v).to_vec();
    let child_walks: Vec<(usize, Vec<Vec<usize>>)> =
        kids.iter().map(|&c| (c, subtree_walks(t, c))).collect();
    let walks_of = |c: usize| &child_walks.iter().find(|(k, _)| *k == c).expect("child").1;
    let mut out = Vec::new();
    loop {
        let mut partial: Vec<Vec<usize>> = vec![vec![v]];
        for &c in &kids {
            let mut grown = Vec::new();
            for prefix in &partial {
                for w in walks_of(c) {
                    let mut p = prefix.clone();
                    p.extend_from_slice(w);
                    p.push(v);
                    grown.push(p);
                }
            }
            partial = grown;
        }
        out.extend(partial);
        if !next_permutation(&mut kids) {
            break;
        }
    }
    out
}

/// Every canonical tour obtainable by shortcutting some Euler tour of the doubled tree.
pub fn enumerate_dt_tours(t: &RootedTree) -> Result<BTreeSet<Vec<usize>>, OracleError> {
    let n = t.len();
    guard("enumerate_dt_tours", n, ENUMERATION_LIMIT)?;
    let mut tours = BTreeSet::new();
    for mut walk in subtree_walks(t, t.root()) {
        if walk.len() > 1 {
            // closed walk: drop the repeated start to get a cyclic sequence
            walk.pop();
        }
        let mut occurrences = vec![Vec::new(); n];
        for (k, &v) in walk.iter().enumerate() {
            occurrences[v].push(k);
        }
        let mut keep = vec![0usize; n];
        loop {
            let mut slots: Vec<usize> = keep
                .iter()
                .enumerate()
                .map(|(v, &c)| occurrences[v][c])
                .collect();
            slots.sort_unstable();
            let order: Vec<usize> = slots.into_iter().map(|k| walk[k]).collect();
            tours.insert(canonical_order(&order));

            // odometer over occurrence choices
            let mut v = 0;
            while v < n {
                keep[v] += 1;
                if keep[v] < occurrences[v].len() {
                    break;
                }
                keep[v] = 0;
                v += 1;
            }
            if v == n {
                break;
            }
        }
    }
    Ok(tours)
}

/// Minimum-weight contiguity-respecting tour by full permutation enumeration.
///
/// Ties go to the lexicographically smallest canonical tour.
pub fn brute_min_dt(t: &RootedTree, m: &MetricInstance) -> Result<Tour, OracleError> {
    let n = t.len();
    guard("brute_min_dt", n, BRUTE_DT_LIMIT)?;
    if m.len() != n {
        return Err(OracleError::SizeMismatch {
            tree: n,
            metric: m.len(),
        });
    }
    let mut best: Option<(f64, Vec<usize>)> = None;
    for order in canonical_tours(n) {
        if !is_dt_shortcutting(t, &order) {
            continue;
        }
        let w = tour_weight(&order, m);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, order));
        }
    }
    let (_, order) = best.expect("the preorder always qualifies");
    Ok(Tour::new(order, m).expect("canonical tours are permutations"))
}
