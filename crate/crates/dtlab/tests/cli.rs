use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dtlab::formats::parse_tour;
use dtlab::svg::drawn_edges;
use dtlab::tsplib::{read_tsplib, write_tsplib};
use dtlab_core::{
    brute_min_dt, gen_star, is_dt_shortcutting, min_weight_dt_tour, prim_mst, DistanceMatrix,
    MetricInstance, MetricKind, Point2D,
};
use serde_json::Value;

fn dtlab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = dtlab(dir, args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn record(stdout: &str) -> Value {
    serde_json::from_str(stdout.trim()).unwrap()
}

fn tour_of(path: PathBuf) -> Vec<usize> {
    parse_tour(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_writes_instance_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "star", "--n", "4", "--out", "star4.tsp"]);
    let star = read_tsplib(&d.join("star4.tsp")).unwrap();
    assert_eq!(star.metric.points().unwrap().len(), 25);
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("star4.json")).unwrap()).unwrap();
    assert_eq!(side["family"], "star");
    assert_eq!(side["root"], 0);

    ok(d, &["gen", "twin-trees", "--k", "3"]);
    let text = std::fs::read_to_string(d.join("twin-trees-3.tsp")).unwrap();
    assert!(text.contains("EDGE_WEIGHT_TYPE : EXPLICIT"));
    assert_eq!(
        read_tsplib(&d.join("twin-trees-3.tsp"))
            .unwrap()
            .metric
            .len(),
        16
    );

    let first = std::fs::read(d.join("star4.tsp")).unwrap();
    ok(d, &["gen", "star", "--n", "4", "--out", "star4.tsp"]);
    assert_eq!(std::fs::read(d.join("star4.tsp")).unwrap(), first);
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        &["gen", "comb", "--n", "0"][..],
        &["gen", "comb"],
        &["gen", "comb", "--n", "3", "--metric", "hexagonal"],
        &["solve", "missing.tsp", "--method", "min-dt"],
        &["frobnicate"],
    ] {
        assert_eq!(dtlab(d, args).status.code(), Some(1), "{args:?}");
    }
    ok(d, &["gen", "comb", "--n", "3", "--out", "c.tsp"]);
    assert_eq!(
        dtlab(d, &["solve", "c.tsp", "--method", "unknown"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        dtlab(d, &["solve", "c.tsp", "--method", "min-dt", "--root", "99"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn guards_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "star", "--n", "4", "--out", "star4.tsp"]);
    assert_eq!(
        dtlab(d, &["solve", "star4.tsp", "--method", "held-karp"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dtlab(d, &["solve", "star4.tsp", "--method", "min-dt", "--exact"])
            .status
            .code(),
        Some(2)
    );
    // a hub at distance 1 from 14 leaves that are 2 apart: the hub gets 14 children
    let hub = DistanceMatrix::from_fn(15, |i, j| match (i, j) {
        _ if i == j => 0.0,
        (0, _) | (_, 0) => 1.0,
        _ => 2.0,
    });
    write_tsplib(
        &d.join("wheel.tsp"),
        "wheel",
        "",
        &MetricInstance::from_matrix(hub),
    )
    .unwrap();
    assert_eq!(
        dtlab(d, &["solve", "wheel.tsp", "--method", "min-dt"])
            .status
            .code(),
        Some(2)
    );
    // a spine of 11 points with one leaf each: 20 odd-degree nodes exceed the exact matching
    let spokes: Vec<Point2D> = (0..11)
        .flat_map(|i| {
            let side = if i % 2 == 0 { 0.4 } else { -0.4 };
            [Point2D::new(i as f64, 0.0), Point2D::new(i as f64, side)]
        })
        .collect();
    write_tsplib(
        &d.join("spokes.tsp"),
        "spokes",
        "",
        &MetricInstance::euclidean(spokes).unwrap(),
    )
    .unwrap();
    assert_eq!(
        dtlab(d, &["solve", "spokes.tsp", "--method", "christofides"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn solve_matches_the_library_and_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "star", "--n", "4", "--out", "star4.tsp"]);
    let rec = record(&ok(
        d,
        &[
            "solve",
            "star4.tsp",
            "--method",
            "min-dt",
            "--tree-out",
            "star4.tree",
        ],
    ));
    let b = gen_star(4, 0.5, 1.0, MetricKind::Euclidean).unwrap();
    let t = prim_mst(&b.metric, b.root);
    let want = min_weight_dt_tour(&t, &b.metric).unwrap();
    assert!((rec["tour_weight"].as_f64().unwrap() - want.weight()).abs() < 1e-9);
    let order = tour_of(d.join("star4.min-dt.tour"));
    assert!(is_dt_shortcutting(&t, &order));
    let ratio = rec["ratio"].as_f64().unwrap();
    let expected = rec["tour_weight"].as_f64().unwrap() / rec["reference_weight"].as_f64().unwrap();
    assert!((ratio - expected).abs() < 1e-12);
    assert!(rec["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert_eq!(
        std::fs::read_to_string(d.join("star4.tree"))
            .unwrap()
            .lines()
            .count(),
        25
    );

    // the star's core and first row points, small enough for brute force
    let core: Vec<Point2D> = b.metric.points().unwrap()[..9].to_vec();
    let small = MetricInstance::euclidean(core).unwrap();
    write_tsplib(&d.join("core.tsp"), "core", "", &small).unwrap();
    let rec = record(&ok(
        d,
        &[
            "solve",
            "core.tsp",
            "--method",
            "min-dt",
            "--out",
            "core.tour",
        ],
    ));
    assert_eq!(rec["family"], "core");
    assert!(rec["ratio"].is_null());
    let brute = brute_min_dt(&prim_mst(&small, 0), &small).unwrap();
    assert!((rec["tour_weight"].as_f64().unwrap() - brute.weight()).abs() < 1e-9);
    assert_eq!(tour_of(d.join("core.tour")).len(), 9);
}

#[test]
fn comb_records_the_depth_first_gap() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "gen",
            "comb",
            "--n",
            "100",
            "--eps",
            "0.01",
            "--out",
            "comb100.tsp",
        ],
    );
    let rec = record(&ok(d, &["solve", "comb100.tsp", "--method", "df-dt"]));
    assert!(rec["ratio"].as_f64().unwrap() >= 1.9);
    let rec = record(&ok(d, &["solve", "comb100.tsp", "--method", "min-dt"]));
    assert!(rec["ratio"].as_f64().unwrap() <= 1.0 + 1e-9);
}

#[test]
fn exact_reference_on_small_instances() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "twin-trees", "--k", "2", "--out", "tt.tsp"]);
    let rec = record(&ok(
        d,
        &["solve", "tt.tsp", "--method", "christofides", "--exact"],
    ));
    let ratio = rec["ratio"].as_f64().unwrap();
    assert!((1.0 - 1e-9..=1.5 + 1e-9).contains(&ratio));
}

fn strip_time(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| l.rsplit_once(',').unwrap().0.to_string())
        .collect()
}

fn ratios(csv: &str) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(6).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn sweeps_are_sorted_deterministic_and_converge() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let csv = ok(
        d,
        &[
            "sweep",
            "star",
            "--n",
            "10,5,20",
            "--methods",
            "min-dt,df-dt",
        ],
    );
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "family,metric,n,method,tour_weight,reference_weight,ratio,wall_time_s"
    );
    let keys: Vec<String> = lines[1..]
        .iter()
        .map(|l| l.split(',').skip(2).take(2).collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(
        keys,
        [
            "5 df-dt",
            "5 min-dt",
            "10 df-dt",
            "10 min-dt",
            "20 df-dt",
            "20 min-dt"
        ]
    );

    let single = Command::new(env!("CARGO_BIN_EXE_dtlab"))
        .args([
            "sweep",
            "star",
            "--n",
            "10,5,20",
            "--methods",
            "min-dt,df-dt",
        ])
        .env("DTLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(
        strip_time(&csv),
        strip_time(&String::from_utf8(single.stdout).unwrap())
    );

    for metric in ["euclidean", "hexagonal"] {
        let csv = ok(d, &["sweep", "star", "--n", "25,50", "--metric", metric]);
        let r = ratios(&csv);
        assert!(r[1] > r[0], "{metric}: {r:?}");
    }
    let csv = ok(
        d,
        &["sweep", "twin-trees", "--k", "4..6", "--out", "tt.csv"],
    );
    assert!(csv.is_empty());
    let r = ratios(&std::fs::read_to_string(d.join("tt.csv")).unwrap());
    assert!(r.windows(2).all(|w| w[1] >= w[0]), "{r:?}");
}

#[test]
fn sweep_marks_infeasible_cells() {
    let dir = tempfile::tempdir().unwrap();
    let out = dtlab(
        dir.path(),
        &["sweep", "comb", "--n", "2..5", "--methods", "held-karp"],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.contains("comb,euclidean,5,held-karp,,,,"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
}

#[test]
fn star_render_matches_golden_edges() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "star", "--n", "4", "--out", "star4.tsp"]);
    ok(d, &["solve", "star4.tsp", "--method", "min-dt"]);
    ok(
        d,
        &[
            "render",
            "star4.tsp",
            "--tour",
            "star4.min-dt.tour",
            "--mst",
            "--out",
            "star4.svg",
        ],
    );
    let svg = std::fs::read_to_string(d.join("star4.svg")).unwrap();
    let drawn = drawn_edges(&svg);
    assert_eq!(drawn.circles, 25);
    assert_eq!(drawn.tours.len(), 1);
    let listed: String = drawn.tours[0]
        .iter()
        .map(|(a, b)| format!("{a} {b}\n"))
        .collect();
    let golden = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/star4_min_dt_edges.txt"),
    )
    .unwrap();
    assert_eq!(listed, golden);
    assert_eq!(drawn.lines.len(), 24);

    ok(
        d,
        &[
            "render",
            "star4.tsp",
            "--tour",
            "star4.min-dt.tour",
            "--mst",
            "--out",
            "again.svg",
        ],
    );
    assert_eq!(
        std::fs::read(d.join("again.svg")).unwrap(),
        svg.into_bytes()
    );
}

#[test]
fn comb_and_twin_tree_drawings() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen", "comb", "--n", "5", "--out", "comb5.tsp"]);
    ok(d, &["render", "comb5.tsp", "--mst", "--out", "comb5.svg"]);
    let drawn = drawn_edges(&std::fs::read_to_string(d.join("comb5.svg")).unwrap());
    assert_eq!(drawn.lines.len(), 16);
    assert!(drawn.lines.iter().all(|(class, _, _)| class == "tree"));
    assert!(drawn.tours.is_empty());

    ok(d, &["render", "comb5.tsp", "--out", "bare.svg"]);
    let drawn = drawn_edges(&std::fs::read_to_string(d.join("bare.svg")).unwrap());
    assert_eq!(
        (drawn.circles, drawn.lines.len(), drawn.tours.len()),
        (17, 0, 0)
    );

    ok(d, &["gen", "twin-trees", "--k", "3", "--out", "tt.tsp"]);
    ok(d, &["render", "tt.tsp", "--out", "tt.svg"]);
    let drawn = drawn_edges(&std::fs::read_to_string(d.join("tt.svg")).unwrap());
    let dotted = drawn.lines.iter().filter(|(c, _, _)| c == "dotted").count();
    let solid = drawn.lines.iter().filter(|(c, _, _)| c == "solid").count();
    assert_eq!((dotted, solid), (7, 15));

    std::fs::remove_file(d.join("tt.json")).unwrap();
    assert_eq!(
        dtlab(d, &["render", "tt.tsp", "--out", "x.svg"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(dir.path(), &["selftest", "--seed", "7"]);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("ok:")).count(), 3);
}
