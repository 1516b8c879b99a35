//! TSPLIB-style instance files.
//!
//! Planar instances use `NODE_COORD_SECTION` with `EDGE_WEIGHT_TYPE` `EUC_2D`
//! or the custom `HEX_2D`; explicit metrics use a `FULL_MATRIX`
//! `EDGE_WEIGHT_SECTION`. Distances are not rounded to integers.

use std::fmt::Write as _;
use std::path::Path;

use dtlab_core::{DistanceMatrix, MetricInstance, MetricKind, Point2D};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TsplibError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported format: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> TsplibError {
    TsplibError::Parse {
        line,
        message: message.into(),
    }
}

/// Twelve significant digits, printed in the shortest form that keeps them.
pub fn format_sig12(v: f64) -> String {
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

pub fn to_tsplib_string(name: &str, comment: &str, m: &MetricInstance) -> String {
    let mut out = String::new();
    let n = m.len();
    writeln!(out, "NAME : {name}").unwrap();
    writeln!(out, "TYPE : TSP").unwrap();
    if !comment.is_empty() {
        writeln!(out, "COMMENT : {comment}").unwrap();
    }
    writeln!(out, "DIMENSION : {n}").unwrap();
    match (m.kind(), m.points()) {
        (kind @ (MetricKind::Euclidean | MetricKind::Hexagonal), Some(points)) => {
            let tag = if kind == MetricKind::Euclidean {
                "EUC_2D"
            } else {
                "HEX_2D"
            };
            writeln!(out, "EDGE_WEIGHT_TYPE : {tag}").unwrap();
            writeln!(out, "NODE_COORD_SECTION").unwrap();
            for (i, p) in points.iter().enumerate() {
                // shortest round-trip form keeps coordinates exact
                writeln!(out, "{} {} {}", i + 1, p.x, p.y).unwrap();
            }
        }
        _ => {
            writeln!(out, "EDGE_WEIGHT_TYPE : EXPLICIT").unwrap();
            writeln!(out, "EDGE_WEIGHT_FORMAT : FULL_MATRIX").unwrap();
            writeln!(out, "EDGE_WEIGHT_SECTION").unwrap();
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| format_sig12(m.dist(i, j))).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
    }
    writeln!(out, "EOF").unwrap();
    out
}

pub fn write_tsplib(
    path: &Path,
    name: &str,
    comment: &str,
    m: &MetricInstance,
) -> Result<(), TsplibError> {
    std::fs::write(path, to_tsplib_string(name, comment, m))?;
    Ok(())
}

/// Header fields and the metric of a parsed file.
#[derive(Clone, Debug)]
pub struct TsplibFile {
    pub name: String,
    pub comment: String,
    pub metric: MetricInstance,
}

pub fn read_tsplib(path: &Path) -> Result<TsplibFile, TsplibError> {
    parse_tsplib(&std::fs::read_to_string(path)?)
}

pub fn parse_tsplib(text: &str) -> Result<TsplibFile, TsplibError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut name = String::new();
    let mut comment = String::new();
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut weight_format: Option<String> = None;
    let mut last_line = 0;

    while let Some((no, line)) = lines.next() {
        last_line = no;
        if line == "EOF" {
            break;
        }
        if line == "NODE_COORD_SECTION" || line == "EDGE_WEIGHT_SECTION" {
            let n = dimension.ok_or_else(|| parse_err(no, "section before DIMENSION"))?;
            let kind = weight_type
                .as_deref()
                .ok_or_else(|| parse_err(no, "section before EDGE_WEIGHT_TYPE"))?;
            let metric = if line == "NODE_COORD_SECTION" {
                let points = read_coords(&mut lines, n, no)?;
                match kind {
                    "EUC_2D" => MetricInstance::euclidean(points),
                    "HEX_2D" => MetricInstance::hexagonal(points),
                    other => return Err(parse_err(no, format!("coordinates given for {other}"))),
                }
                .map_err(|e| parse_err(no, e.to_string()))?
            } else {
                if kind != "EXPLICIT" {
                    return Err(parse_err(no, format!("weight section given for {kind}")));
                }
                match weight_format.as_deref() {
                    Some("FULL_MATRIX") => {}
                    Some(other) => {
                        return Err(TsplibError::Unsupported(format!(
                            "EDGE_WEIGHT_FORMAT {other}"
                        )))
                    }
                    None => return Err(parse_err(no, "missing EDGE_WEIGHT_FORMAT")),
                }
                let values = read_numbers(&mut lines, n * n, no)?;
                let matrix =
                    DistanceMatrix::new(n, values).map_err(|e| parse_err(no, e.to_string()))?;
                MetricInstance::from_matrix(matrix)
            };
            if let Some((no, extra)) = lines.next() {
                if extra != "EOF" {
                    return Err(parse_err(no, format!("unexpected content {extra:?}")));
                }
            }
            return Ok(TsplibFile {
                name,
                comment,
                metric,
            });
        }
        let (key, value) = line
            .split_once(':')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| parse_err(no, format!("expected KEY : VALUE, got {line:?}")))?;
        match key {
            "NAME" => name = value.to_string(),
            "COMMENT" => comment = value.to_string(),
            "TYPE" => {
                if value != "TSP" {
                    return Err(TsplibError::Unsupported(format!("TYPE {value}")));
                }
            }
            "DIMENSION" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| parse_err(no, format!("bad DIMENSION {value:?}")))?;
                if n == 0 {
                    return Err(parse_err(no, "DIMENSION must be positive"));
                }
                dimension = Some(n);
            }
            "EDGE_WEIGHT_TYPE" => match value {
                "EUC_2D" | "HEX_2D" | "EXPLICIT" => weight_type = Some(value.to_string()),
                other => {
                    return Err(TsplibError::Unsupported(format!(
                        "EDGE_WEIGHT_TYPE {other}"
                    )))
                }
            },
            "EDGE_WEIGHT_FORMAT" => weight_format = Some(value.to_string()),
            _ => return Err(parse_err(no, format!("unknown key {key:?}"))),
        }
    }
    Err(parse_err(last_line, "no data section"))
}

fn read_coords<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    n: usize,
    section_line: usize,
) -> Result<Vec<Point2D>, TsplibError> {
    let mut points = Vec::with_capacity(n);
    let mut last = section_line;
    for k in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(last, format!("expected {n} coordinates, found {k}")))?;
        last = no;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if line == "EOF" {
            return Err(parse_err(
                no,
                format!("expected {n} coordinates, found {k}"),
            ));
        }
        if fields.len() != 3 {
            return Err(parse_err(no, "coordinate line needs: index x y"));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(no, "bad node index"))?;
        if index != k + 1 {
            return Err(parse_err(
                no,
                format!("expected node {}, got {index}", k + 1),
            ));
        }
        let x: f64 = fields[1]
            .parse()
            .map_err(|_| parse_err(no, "bad x coordinate"))?;
        let y: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(no, "bad y coordinate"))?;
        points.push(Point2D::new(x, y));
    }
    Ok(points)
}

fn read_numbers<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    count: usize,
    section_line: usize,
) -> Result<Vec<f64>, TsplibError> {
    let mut values = Vec::with_capacity(count);
    let mut last = section_line;
    while values.len() < count {
        let (no, line) = lines.next().ok_or_else(|| {
            parse_err(
                last,
                format!("expected {count} weights, found {}", values.len()),
            )
        })?;
        last = no;
        if line == "EOF" {
            return Err(parse_err(
                no,
                format!("expected {count} weights, found {}", values.len()),
            ));
        }
        for field in line.split_whitespace() {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(no, format!("bad weight {field:?}")))?;
            values.push(v);
        }
        if values.len() > count {
            return Err(parse_err(no, format!("more than {count} weights")));
        }
    }
    Ok(values)
}
