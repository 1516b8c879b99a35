//! Double-tree shortcutting for metric TSP.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! - [`metric`]: Euclidean, hexagonal-gauge and graph shortest-path metrics;
//! - [`spanning`]: rooted minimum spanning trees with deterministic ties;
//! - [`doubletree`]: depth-first and minimum-weight double-tree shortcutting;
//! - [`christofides`]: the Christofides baseline with an exact small matching;
//! - [`oracle`]: brute-force ground truth (Held–Karp, exhaustive shortcutting);
//! - [`instances`]: generators for the lower-bound instance families.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod christofides;
pub mod doubletree;
mod error;
pub mod instances;
pub mod metric;
pub mod oracle;
pub mod spanning;
pub mod tour;

pub use christofides::{
    christofides_tour, euler_tour, exact_min_matching, odd_degree_nodes, Multigraph,
};
pub use doubletree::{
    depth_first_tour, double_tree_euler_walk, is_dt_shortcutting, min_weight_dt_tour, DtPathTable,
    MAX_CHILD_DEGREE,
};
pub use error::{
    ChristofidesError, DoubleTreeError, InstanceError, MetricError, OracleError, TourError,
    TreeError,
};
pub use instances::{
    gen_christofides_comb, gen_comb, gen_star, gen_twin_trees, AnalyticWeights, Family,
    InstanceBundle,
};
pub use metric::{
    euclidean_distance, hexagonal_distance, shortest_path_metric, verify_metric, DistanceMatrix,
    MetricInstance, MetricKind, MetricReport, Point2D, WeightedGraph,
};
pub use oracle::{brute_min_dt, enumerate_dt_tours, held_karp};
pub use spanning::{max_child_degree, prim_mst, tree_weight, RootedTree};
pub use tour::{canonical_order, tour_weight, Tour};
