//! Methods, experiment records and parameter sweeps.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use dtlab_core::{
    depth_first_tour, gen_christofides_comb, gen_comb, gen_star, gen_twin_trees, held_karp,
    min_weight_dt_tour, prim_mst, ChristofidesError, DoubleTreeError, Family, InstanceBundle,
    InstanceError, MetricInstance, MetricKind, Tour,
};
use serde::Serialize;
use thiserror::Error;

use crate::sidecar::metric_name;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    MinDt,
    DfDt,
    Christofides,
    HeldKarp,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::MinDt => "min-dt",
            Method::DfDt => "df-dt",
            Method::Christofides => "christofides",
            Method::HeldKarp => "held-karp",
        }
    }
}

/// A guard tripped: the input is valid but too large or too wide for the method.
#[derive(Debug, Error, PartialEq)]
#[error("{0}")]
pub struct Infeasible(pub String);

impl From<DoubleTreeError> for Infeasible {
    fn from(e: DoubleTreeError) -> Self {
        Infeasible(e.to_string())
    }
}

impl From<ChristofidesError> for Infeasible {
    fn from(e: ChristofidesError) -> Self {
        Infeasible(e.to_string())
    }
}

impl From<dtlab_core::OracleError> for Infeasible {
    fn from(e: dtlab_core::OracleError) -> Self {
        Infeasible(e.to_string())
    }
}

/// Runs `method`; the tree-based methods root the MST at `root`.
pub fn run_method(method: Method, m: &MetricInstance, root: usize) -> Result<Tour, Infeasible> {
    match method {
        Method::MinDt => Ok(min_weight_dt_tour(&prim_mst(m, root), m)?),
        Method::DfDt => Ok(depth_first_tour(&prim_mst(m, root), m)),
        Method::Christofides => Ok(dtlab_core::christofides::christofides_run(m, root)?.tour),
        Method::HeldKarp => Ok(held_karp(m)?),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub family: String,
    pub metric: String,
    pub n: usize,
    pub method: Method,
    pub tour_weight: f64,
    /// Absent when the instance carries no reference tour.
    pub reference_weight: Option<f64>,
    pub ratio: Option<f64>,
    pub wall_time_s: f64,
}

impl ExperimentRecord {
    pub fn new(
        family: &str,
        metric: &str,
        n: usize,
        method: Method,
        tour_weight: f64,
        reference_weight: Option<f64>,
        wall_time_s: f64,
    ) -> Self {
        Self {
            family: family.to_string(),
            metric: metric.to_string(),
            n,
            method,
            tour_weight,
            reference_weight,
            ratio: reference_weight.map(|r| tour_weight / r),
            wall_time_s,
        }
    }
}

pub const CSV_HEADER: &str =
    "family,metric,n,method,tour_weight,reference_weight,ratio,wall_time_s";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One sweep cell: a record, or the reason the cell was skipped.
#[derive(Clone, Debug, PartialEq)]
pub enum SweepRow {
    Done(ExperimentRecord),
    Skipped {
        family: String,
        metric: String,
        n: usize,
        method: Method,
        reason: String,
    },
}

impl SweepRow {
    fn key(&self) -> (usize, &'static str) {
        match self {
            SweepRow::Done(r) => (r.n, r.method.name()),
            SweepRow::Skipped { n, method, .. } => (*n, method.name()),
        }
    }

    /// Skipped cells keep their key columns and leave the numeric ones empty.
    pub fn csv_line(&self) -> String {
        match self {
            SweepRow::Done(r) => format!(
                "{},{},{},{},{},{},{},{:.6}",
                r.family,
                r.metric,
                r.n,
                r.method.name(),
                r.tour_weight,
                opt(r.reference_weight),
                opt(r.ratio),
                r.wall_time_s
            ),
            SweepRow::Skipped {
                family,
                metric,
                n,
                method,
                ..
            } => format!("{family},{metric},{n},{},,,,", method.name()),
        }
    }
}

/// Generator parameters; unset values take the family defaults.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub size: usize,
    pub eps: Option<f64>,
    pub r_inner: f64,
    pub r_outer: f64,
    pub metric: MetricKind,
}

impl GenParams {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            eps: None,
            r_inner: 0.5,
            r_outer: 1.0,
            metric: MetricKind::Euclidean,
        }
    }
}

/// `1/n`, or `1/4` where `1/n` would not be below one half.
pub fn default_comb_eps(n: usize) -> f64 {
    if n >= 3 {
        1.0 / n as f64
    } else {
        0.25
    }
}

/// Builds a bundle; for twin trees `size` is `k` and the trees have `2^k` nodes.
pub fn generate(
    family: Family,
    p: &GenParams,
) -> Result<(InstanceBundle, BTreeMap<String, f64>), InstanceError> {
    if p.metric == MetricKind::Hexagonal && family != Family::Star {
        return Err(InstanceError::InvalidParameter(
            "only the star family has a hexagonal variant",
        ));
    }
    let mut params = BTreeMap::new();
    let bundle = match family {
        Family::Comb | Family::ChristofidesComb => {
            let eps = p.eps.unwrap_or_else(|| default_comb_eps(p.size));
            params.insert("eps".to_string(), eps);
            if family == Family::Comb {
                gen_comb(p.size, eps)?
            } else {
                gen_christofides_comb(p.size, eps)?
            }
        }
        Family::TwinTrees => {
            let k = u32::try_from(p.size)
                .map_err(|_| InstanceError::InvalidParameter("k out of range"))?;
            if !(2..=dtlab_core::instances::MAX_TWIN_K).contains(&k) {
                return Err(InstanceError::InvalidParameter(
                    "twin trees need 2 <= k <= 11",
                ));
            }
            let eps = p.eps.unwrap_or(1.0 / (1u64 << k) as f64);
            params.insert("eps".to_string(), eps);
            params.insert("k".to_string(), k as f64);
            gen_twin_trees(k, eps)?
        }
        Family::Star => {
            params.insert("r_inner".to_string(), p.r_inner);
            params.insert("r_outer".to_string(), p.r_outer);
            gen_star(p.size, p.r_inner, p.r_outer, p.metric)?
        }
    };
    Ok((bundle, params))
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub methods: Vec<Method>,
    pub template: GenParams,
    /// Use the exact optimum as reference (only up to 16 nodes).
    pub exact: bool,
    pub threads: usize,
}

fn run_cell(spec: &SweepSpec, size: usize, method: Method) -> SweepRow {
    let params = GenParams {
        size,
        ..spec.template
    };
    let family = spec.family.name().to_string();
    let metric = metric_name(match spec.family {
        Family::TwinTrees => MetricKind::Explicit,
        _ => spec.template.metric,
    })
    .to_string();
    let skipped = |n: usize, reason: String| SweepRow::Skipped {
        family: family.clone(),
        metric: metric.clone(),
        n,
        method,
        reason,
    };
    let (bundle, _) = match generate(spec.family, &params) {
        Ok(b) => b,
        Err(e) => return skipped(size, e.to_string()),
    };
    let n = bundle.size;
    let reference = if spec.exact {
        match held_karp(&bundle.metric) {
            Ok(t) => t.weight(),
            Err(e) => return skipped(n, e.to_string()),
        }
    } else {
        bundle.reference_tour.weight()
    };
    let start = Instant::now();
    match run_method(method, &bundle.metric, bundle.root) {
        Ok(tour) => SweepRow::Done(ExperimentRecord::new(
            &family,
            &metric,
            n,
            method,
            tour.weight(),
            Some(reference),
            start.elapsed().as_secs_f64(),
        )),
        Err(e) => skipped(n, e.0),
    }
}

/// Worker count from `DTLAB_THREADS`, else the machine's parallelism.
pub fn thread_budget() -> usize {
    std::env::var("DTLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

/// Runs every (size, method) cell and returns rows sorted by n, then method name.
pub fn sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    let cells: Vec<(usize, Method)> = spec
        .sizes
        .iter()
        .flat_map(|&s| spec.methods.iter().map(move |&m| (s, m)))
        .collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let workers = spec.threads.clamp(1, cells.len().max(1));
    let mut rows: Vec<(usize, SweepRow)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(&(size, method)) = cells.get(i) else {
                            break;
                        };
                        done.push((i, run_cell(spec, size, method)));
                    }
                    done
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    rows.sort_by_key(|(i, _)| *i);
    let mut rows: Vec<SweepRow> = rows.into_iter().map(|(_, r)| r).collect();
    rows.sort_by(|a, b| a.key().cmp(&b.key()));
    rows
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for row in rows {
        writeln!(out, "{}", row.csv_line()).unwrap();
    }
    out
}
