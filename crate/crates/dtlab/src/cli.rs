//! The `dtlab` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dtlab_core::{held_karp, prim_mst, Family, MetricKind, Tour};
use thiserror::Error;

use crate::experiment::{
    generate, run_method, sweep, thread_budget, to_csv, ExperimentRecord, GenParams, Method,
    SweepRow, SweepSpec,
};
use crate::formats::{parse_tour, parse_tree, tour_to_string, tree_to_string};
use crate::sidecar::{metric_name, read_sidecar, sidecar_path, Sidecar};
use crate::svg::Scene;
use crate::tsplib::{read_tsplib, write_tsplib};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Infeasible(_) => 2,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "dtlab",
    version,
    about = "Double-tree shortcutting experiments for metric TSP"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Comb,
    ChristofidesComb,
    TwinTrees,
    Star,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Comb => Family::Comb,
            FamilyArg::ChristofidesComb => Family::ChristofidesComb,
            FamilyArg::TwinTrees => Family::TwinTrees,
            FamilyArg::Star => Family::Star,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Euclidean,
    Hexagonal,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Euclidean => MetricKind::Euclidean,
            MetricArg::Hexagonal => MetricKind::Hexagonal,
        }
    }
}

#[derive(Debug, Args)]
struct ShapeArgs {
    /// Offset of the comb spine points, or the twin-trees cross-edge excess.
    #[arg(long)]
    eps: Option<f64>,
    /// Radius of the star's inner points.
    #[arg(long, default_value_t = 0.5)]
    r_inner: f64,
    /// Radius of the star's arm origins.
    #[arg(long, default_value_t = 1.0)]
    r_outer: f64,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    metric: MetricArg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated instance as a TSPLIB file plus a JSON sidecar.
    Gen {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Size of the comb and star families.
        #[arg(long)]
        n: Option<usize>,
        /// Twin trees have 2^k nodes per copy.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Defaults to `<family>-<size>.tsp` in the current directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance file and print one experiment record as JSON.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Tree root: `auto` (the sidecar's root, else 0) or a node index.
        #[arg(long, default_value = "auto")]
        root: String,
        /// Compare against the exact optimum (at most 16 nodes).
        #[arg(long)]
        exact: bool,
        /// Tour file; defaults to `<instance>.<method>.tour`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the spanning tree as `node parent` lines.
        #[arg(long)]
        tree_out: Option<PathBuf>,
    },
    /// Run methods over a range of sizes and write a CSV table.
    Sweep {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Sizes, e.g. `25,50,100` or `2..6` (inclusive).
        #[arg(long)]
        n: Option<String>,
        /// Twin-trees exponents, same syntax as `--n`.
        #[arg(long)]
        k: Option<String>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "min-dt")]
        methods: Vec<Method>,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Use the exact optimum as the reference; larger cells are skipped.
        #[arg(long)]
        exact: bool,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an instance with optional spanning tree and tours as SVG.
    Render {
        instance: PathBuf,
        #[arg(long = "tour")]
        tours: Vec<PathBuf>,
        /// Draw the minimum spanning tree.
        #[arg(long)]
        mst: bool,
        /// Draw a tree read from a `node parent` file.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the fast algorithms against brute-force oracles.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Parses `25,50,100` and inclusive ranges `a..b`, in any mix.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>, String> {
    let mut sizes = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad size {s:?}"))
        };
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (number(a)?, number(b)?);
                if a > b {
                    return Err(format!("empty range {item:?}"));
                }
                sizes.extend(a..=b);
            }
            None => sizes.push(number(item)?),
        }
    }
    if sizes.is_empty() {
        return Err("no sizes given".to_string());
    }
    sizes.sort_unstable();
    sizes.dedup();
    Ok(sizes)
}

fn family_size(family: Family, n: Option<usize>, k: Option<usize>) -> Result<usize, CliError> {
    match (family, n, k) {
        (Family::TwinTrees, _, Some(k)) => Ok(k),
        (Family::TwinTrees, _, None) => Err(usage("twin-trees needs --k")),
        (_, Some(n), _) => Ok(n),
        (_, None, _) => Err(usage(format!("{} needs --n", family.name()))),
    }
}

fn template(shape: &ShapeArgs, size: usize) -> GenParams {
    GenParams {
        size,
        eps: shape.eps,
        r_inner: shape.r_inner,
        r_outer: shape.r_outer,
        metric: shape.metric.into(),
    }
}

fn cmd_gen(
    family: Family,
    size: usize,
    shape: &ShapeArgs,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let (bundle, params) = generate(family, &template(shape, size)).map_err(usage)?;
    let suffix = if bundle.metric.kind() == MetricKind::Hexagonal {
        "-hex"
    } else {
        ""
    };
    let name = format!("{}-{size}{suffix}", family.name());
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{name}.tsp")));
    let comment = format!(
        "{} instance, {} metric",
        family.name(),
        metric_name(bundle.metric.kind())
    );
    write_tsplib(&path, &name, &comment, &bundle.metric).map_err(usage)?;
    let side = sidecar_path(&path);
    std::fs::write(&side, Sidecar::from_bundle(&bundle, params).to_json()).map_err(usage)?;
    writeln!(
        stdout,
        "wrote {} ({} nodes) and {}",
        path.display(),
        bundle.metric.len(),
        side.display()
    )
    .map_err(usage)?;
    Ok(())
}

struct Loaded {
    name: String,
    metric: dtlab_core::MetricInstance,
    sidecar: Option<Sidecar>,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let file = read_tsplib(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let sidecar = read_sidecar(path).map_err(usage)?;
    if let Some(s) = &sidecar {
        if s.layout.len() != file.metric.len() || s.root >= file.metric.len() {
            return Err(usage(format!(
                "{} does not match the instance",
                sidecar_path(path).display()
            )));
        }
    }
    Ok(Loaded {
        name: file.name,
        metric: file.metric,
        sidecar,
    })
}

fn pick_root(root: &str, loaded: &Loaded) -> Result<usize, CliError> {
    if root == "auto" {
        return Ok(loaded.sidecar.as_ref().map_or(0, |s| s.root));
    }
    let r: usize = root
        .parse()
        .map_err(|_| usage(format!("bad root {root:?}")))?;
    if r >= loaded.metric.len() {
        return Err(usage(format!("root {r} is not a node")));
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    instance: &Path,
    method: Method,
    root: &str,
    exact: bool,
    out: Option<PathBuf>,
    tree_out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let loaded = load(instance)?;
    let m = &loaded.metric;
    let root = pick_root(root, &loaded)?;
    let reference = if exact {
        Some(
            held_karp(m)
                .map_err(|e| CliError::Infeasible(e.to_string()))?
                .weight(),
        )
    } else if let Some(s) = &loaded.sidecar {
        Some(
            Tour::new(s.reference_tour.clone(), m)
                .map_err(usage)?
                .weight(),
        )
    } else {
        None
    };
    let start = Instant::now();
    let tour = run_method(method, m, root).map_err(|e| CliError::Infeasible(e.0))?;
    let elapsed = start.elapsed().as_secs_f64();
    let tour_path =
        out.unwrap_or_else(|| instance.with_extension(format!("{}.tour", method.name())));
    std::fs::write(&tour_path, tour_to_string(&tour)).map_err(usage)?;
    if let Some(path) = tree_out {
        std::fs::write(path, tree_to_string(&prim_mst(m, root))).map_err(usage)?;
    }
    let (family, n) = match &loaded.sidecar {
        Some(s) => (s.family.clone(), s.size),
        None if loaded.name.is_empty() => ("instance".to_string(), m.len()),
        None => (loaded.name.clone(), m.len()),
    };
    let record = ExperimentRecord::new(
        &family,
        metric_name(m.kind()),
        n,
        method,
        tour.weight(),
        reference,
        elapsed,
    );
    writeln!(
        stdout,
        "{}",
        serde_json::to_string(&record).expect("record serializes")
    )
    .map_err(usage)?;
    Ok(())
}

fn cmd_sweep(
    spec: SweepSpec,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let rows = sweep(&spec);
    for row in &rows {
        if let SweepRow::Skipped {
            n, method, reason, ..
        } = row
        {
            writeln!(stderr, "warning: skipped n={n} {}: {reason}", method.name())
                .map_err(usage)?;
        }
    }
    let csv = to_csv(&rows);
    match out {
        Some(path) => std::fs::write(path, csv).map_err(usage)?,
        None => stdout.write_all(csv.as_bytes()).map_err(usage)?,
    }
    Ok(())
}

fn cmd_render(
    instance: &Path,
    tours: &[PathBuf],
    mst: bool,
    tree: Option<PathBuf>,
    out: &Path,
) -> Result<(), CliError> {
    let loaded = load(instance)?;
    let m = &loaded.metric;
    let points = match (m.points(), &loaded.sidecar) {
        (Some(p), _) => p.to_vec(),
        (None, Some(s)) => s.layout_points(),
        (None, None) => return Err(usage("matrix instance without layout coordinates")),
    };
    let mut scene = Scene::new(points);
    if let Some(edges) = loaded.sidecar.as_ref().and_then(|s| s.graph_edges.as_ref()) {
        scene.add_graph_edges(edges);
    }
    if let Some(path) = tree {
        let text = std::fs::read_to_string(&path).map_err(usage)?;
        let t = parse_tree(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        if t.len() != m.len() {
            return Err(usage(format!(
                "{} has {} nodes, instance has {}",
                path.display(),
                t.len(),
                m.len()
            )));
        }
        scene.add_tree(&t);
    } else if mst {
        let root = loaded.sidecar.as_ref().map_or(0, |s| s.root);
        scene.add_tree(&prim_mst(m, root));
    }
    for path in tours {
        let text = std::fs::read_to_string(path).map_err(usage)?;
        let order = parse_tour(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let tour = Tour::new(order, m).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        scene.add_tour(tour.order());
    }
    std::fs::write(out, scene.to_svg()).map_err(usage)?;
    Ok(())
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            family,
            n,
            k,
            shape,
            out,
        } => {
            let family = Family::from(family);
            let size = family_size(family, n, k)?;
            cmd_gen(family, size, &shape, out, stdout)
        }
        Command::Solve {
            instance,
            method,
            root,
            exact,
            out,
            tree_out,
        } => cmd_solve(&instance, method, &root, exact, out, tree_out, stdout),
        Command::Sweep {
            family,
            n,
            k,
            methods,
            shape,
            exact,
            out,
        } => {
            let family = Family::from(family);
            let text = match (family, n, k) {
                (Family::TwinTrees, _, Some(k)) => k,
                (Family::TwinTrees, _, None) => return Err(usage("twin-trees needs --k")),
                (_, Some(n), _) => n,
                (_, None, _) => return Err(usage(format!("{} needs --n", family.name()))),
            };
            let sizes = parse_sizes(&text).map_err(usage)?;
            let template = template(&shape, 0);
            if template.metric == MetricKind::Hexagonal && family != Family::Star {
                return Err(usage("only the star family has a hexagonal variant"));
            }
            let spec = SweepSpec {
                family,
                sizes,
                methods,
                template,
                exact,
                threads: thread_budget(),
            };
            cmd_sweep(spec, out, stdout, stderr)
        }
        Command::Render {
            instance,
            tours,
            mst,
            tree,
            out,
        } => cmd_render(&instance, &tours, mst, tree, &out),
        Command::Selftest { seed } => {
            let checks = crate::selftest::run_selftest(seed);
            let mut failed = false;
            for c in &checks {
                let verdict = if c.mismatches == 0 { "ok" } else { "MISMATCH" };
                writeln!(
                    stdout,
                    "{verdict}: {} ({} cases, {} mismatches)",
                    c.name, c.cases, c.mismatches
                )
                .map_err(usage)?;
                failed |= c.mismatches > 0;
            }
            if failed {
                return Err(CliError::Infeasible(
                    "self-test found mismatches".to_string(),
                ));
            }
            Ok(())
        }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
