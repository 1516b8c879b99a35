//! SVG drawings of instances, trees and tours.
//!
//! Every line carries `data-edge="a b"` and every tour path carries
//! `data-tour="..."`, so tests can read the drawn topology back.

use std::fmt::Write as _;

use dtlab_core::{Point2D, RootedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LineStyle {
    /// Unit-weight graph edge.
    Solid,
    /// Heavier graph edge.
    Dotted,
    /// Spanning tree edge.
    Tree,
}

impl LineStyle {
    fn class(self) -> &'static str {
        match self {
            LineStyle::Solid => "solid",
            LineStyle::Dotted => "dotted",
            LineStyle::Tree => "tree",
        }
    }
}

const TOUR_COLOURS: [&str; 4] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"];

#[derive(Clone, Debug)]
pub struct Scene {
    points: Vec<Point2D>,
    lines: Vec<(LineStyle, usize, usize)>,
    tours: Vec<Vec<usize>>,
}

impl Scene {
    pub fn new(points: Vec<Point2D>) -> Self {
        Self {
            points,
            lines: Vec::new(),
            tours: Vec::new(),
        }
    }

    /// Unit edges solid, heavier edges dotted.
    pub fn add_graph_edges(&mut self, edges: &[(usize, usize, f64)]) {
        for &(u, v, w) in edges {
            let style = if w <= 1.0 + 1e-9 {
                LineStyle::Solid
            } else {
                LineStyle::Dotted
            };
            self.lines.push((style, u.min(v), u.max(v)));
        }
    }

    pub fn add_tree(&mut self, t: &RootedTree) {
        for (u, v) in t.edges() {
            self.lines.push((LineStyle::Tree, u, v));
        }
    }

    pub fn add_tour(&mut self, order: &[usize]) {
        self.tours.push(order.to_vec());
    }

    pub fn to_svg(&self) -> String {
        let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in &self.points {
            lo_x = lo_x.min(p.x);
            lo_y = lo_y.min(p.y);
            hi_x = hi_x.max(p.x);
            hi_y = hi_y.max(p.y);
        }
        if self.points.is_empty() {
            (lo_x, lo_y, hi_x, hi_y) = (0.0, 0.0, 1.0, 1.0);
        }
        let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
        let scale = (800.0 / span).clamp(2.0, 60.0);
        let margin = 20.0;
        let width = (hi_x - lo_x) * scale + 2.0 * margin;
        let height = (hi_y - lo_y) * scale + 2.0 * margin;
        let at = |v: usize| {
            let p = self.points[v];
            ((p.x - lo_x) * scale + margin, (hi_y - p.y) * scale + margin)
        };

        let mut out = String::new();
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
        )
        .unwrap();
        writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(
            out,
            r##"<g class="edges" stroke="#444444" stroke-width="1.5">"##
        )
        .unwrap();
        for &(style, a, b) in &self.lines {
            let ((x1, y1), (x2, y2)) = (at(a), at(b));
            let extra = match style {
                LineStyle::Solid => "",
                LineStyle::Dotted => r#" stroke-dasharray="2 3""#,
                LineStyle::Tree => r#" stroke="black" stroke-width="2.5""#,
            };
            writeln!(
                out,
                r#"<line class="{}" data-edge="{a} {b}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"{extra}/>"#,
                style.class()
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
        writeln!(
            out,
            r#"<g class="tours" fill="none" stroke-width="2" stroke-opacity="0.8">"#
        )
        .unwrap();
        for (k, tour) in self.tours.iter().enumerate() {
            let mut d = String::new();
            for (i, &v) in tour.iter().enumerate() {
                let (x, y) = at(v);
                write!(d, "{}{x:.2} {y:.2} ", if i == 0 { "M" } else { "L" }).unwrap();
            }
            d.push('Z');
            let nodes: Vec<String> = tour.iter().map(|v| v.to_string()).collect();
            writeln!(
                out,
                r#"<path class="tour" data-tour="{}" stroke="{}" d="{d}"/>"#,
                nodes.join(" "),
                TOUR_COLOURS[k % TOUR_COLOURS.len()]
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
        writeln!(out, r#"<g class="points" fill="black">"#).unwrap();
        for v in 0..self.points.len() {
            let (x, y) = at(v);
            writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3"/>"#).unwrap();
        }
        writeln!(out, "</g>").unwrap();
        writeln!(out, "</svg>").unwrap();
        out
    }
}

/// Topology read back from a rendered SVG.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DrawnEdges {
    /// Sorted `(class, a, b)` for every line.
    pub lines: Vec<(String, usize, usize)>,
    /// Per tour path, its sorted `(min, max)` edges.
    pub tours: Vec<Vec<(usize, usize)>>,
    pub circles: usize,
}

fn attribute<'a>(element: &'a str, name: &str) -> Option<&'a str> {
    let key = format!(" {name}=\"");
    let start = element.find(&key)? + key.len();
    let len = element[start..].find('"')?;
    Some(&element[start..start + len])
}

fn indices(text: &str) -> Vec<usize> {
    text.split_whitespace()
        .filter_map(|f| f.parse().ok())
        .collect()
}

pub fn drawn_edges(svg: &str) -> DrawnEdges {
    let mut drawn = DrawnEdges::default();
    for element in svg.split('<') {
        if element.starts_with("line ") {
            let class = attribute(element, "class").unwrap_or("").to_string();
            if let [a, b] = indices(attribute(element, "data-edge").unwrap_or(""))[..] {
                drawn.lines.push((class, a, b));
            }
        } else if element.starts_with("path ") {
            let order = indices(attribute(element, "data-tour").unwrap_or(""));
            let n = order.len();
            let mut edges: Vec<(usize, usize)> = (0..n)
                .map(|k| {
                    let (a, b) = (order[k], order[(k + 1) % n]);
                    (a.min(b), a.max(b))
                })
                .collect();
            edges.sort_unstable();
            drawn.tours.push(edges);
        } else if element.starts_with("circle ") {
            drawn.circles += 1;
        }
    }
    drawn.lines.sort();
    drawn
}
