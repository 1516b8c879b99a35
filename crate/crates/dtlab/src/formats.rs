//! Plain-text tour and tree files.

use dtlab_core::{RootedTree, Tour, TreeError};

/// One line: canonical node order, then `# weight=<value>`.
pub fn tour_to_string(t: &Tour) -> String {
    let nodes: Vec<String> = t.order().iter().map(|v| v.to_string()).collect();
    format!("{} # weight={}\n", nodes.join(" "), t.weight())
}

/// Node order of a tour line; the weight comment is ignored.
pub fn parse_tour(text: &str) -> Result<Vec<usize>, String> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or("empty tour file")?;
    let body = line.split('#').next().unwrap_or("");
    body.split_whitespace()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| format!("bad node index {f:?}"))
        })
        .collect()
}

/// One `node parent` line per node; the root is its own parent.
pub fn tree_to_string(t: &RootedTree) -> String {
    t.parents()
        .iter()
        .enumerate()
        .map(|(v, p)| format!("{v} {p}\n"))
        .collect()
}

pub fn parse_tree(text: &str) -> Result<RootedTree, String> {
    let mut pairs = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<usize> = line
            .split_whitespace()
            .map(|f| {
                f.parse()
                    .map_err(|_| format!("line {}: bad index {f:?}", no + 1))
            })
            .collect::<Result<_, _>>()?;
        if fields.len() != 2 {
            return Err(format!("line {}: expected `node parent`", no + 1));
        }
        pairs.push((fields[0], fields[1]));
    }
    let n = pairs.len();
    let mut parent = vec![usize::MAX; n];
    for &(v, p) in &pairs {
        if v >= n || parent[v] != usize::MAX {
            return Err(format!("node {v} is out of range or repeated"));
        }
        parent[v] = p;
    }
    let root = pairs
        .iter()
        .find(|&&(v, p)| v == p)
        .map(|&(v, _)| v)
        .ok_or_else(|| TreeError::Empty.to_string())?;
    RootedTree::from_parents(root, parent).map_err(|e| e.to_string())
}
