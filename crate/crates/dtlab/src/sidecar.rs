//! JSON metadata written next to a generated instance file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use dtlab_core::{InstanceBundle, MetricKind, Point2D};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub family: String,
    pub size: usize,
    pub metric: String,
    pub parameters: BTreeMap<String, f64>,
    pub root: usize,
    pub mst_weight: f64,
    pub reference_weight: f64,
    pub predicted_method_weight: Option<f64>,
    pub reference_tour: Vec<usize>,
    pub expected_mst: Option<Vec<(usize, usize)>>,
    pub layout: Vec<(f64, f64)>,
    pub graph_edges: Option<Vec<(usize, usize, f64)>>,
}

pub fn metric_name(kind: MetricKind) -> &'static str {
    match kind {
        MetricKind::Euclidean => "euclidean",
        MetricKind::Hexagonal => "hexagonal",
        MetricKind::Explicit => "explicit",
    }
}

impl Sidecar {
    pub fn from_bundle(b: &InstanceBundle, parameters: BTreeMap<String, f64>) -> Self {
        Self {
            family: b.family.name().to_string(),
            size: b.size,
            metric: metric_name(b.metric.kind()).to_string(),
            parameters,
            root: b.root,
            mst_weight: b.analytic.mst_weight,
            reference_weight: b.reference_tour.weight(),
            predicted_method_weight: b.analytic.predicted_method_weight,
            reference_tour: b.reference_tour.order().to_vec(),
            expected_mst: b.expected_mst.clone(),
            layout: b.layout.iter().map(|p| (p.x, p.y)).collect(),
            graph_edges: b.graph.as_ref().map(|g| g.edges().to_vec()),
        }
    }

    pub fn layout_points(&self) -> Vec<Point2D> {
        self.layout
            .iter()
            .map(|&(x, y)| Point2D::new(x, y))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes") + "\n"
    }
}

/// `instance.tsp` pairs with `instance.json`.
pub fn sidecar_path(instance: &Path) -> PathBuf {
    instance.with_extension("json")
}

pub fn read_sidecar(instance: &Path) -> std::io::Result<Option<Sidecar>> {
    let path = sidecar_path(instance);
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path)?;
    serde_json::from_str(&text).map(Some).map_err(|e| {
        std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("{}: {e}", path.display()),
        )
    })
}
