//! File loading and writing: graphs travel as DIMACS or JSON (by extension),
//! everything else as JSON.

use anyhow::{Context, Result};
use domatic_core::cfsp::TaskMatrix;
use domatic_core::dimacs::{read_dimacs, write_dimacs};
use domatic_core::graph::{DecoratedGraph, Graph};
use domatic_core::sat::{Cnf3, TripleSystem};
use std::path::Path;

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if is_json(path) {
        serde_json::from_str(&text).with_context(|| format!("parsing {} as graph JSON", path.display()))
    } else {
        read_dimacs(&text).with_context(|| format!("parsing {} as DIMACS", path.display()))
    }
}

pub fn load_decorated(path: &Path) -> Result<DecoratedGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {} as decorated graph JSON", path.display()))
}

pub fn load_cnf(path: &Path) -> Result<Cnf3> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {} as formula JSON", path.display()))
}

pub fn load_triples(path: &Path) -> Result<TripleSystem> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {} as triple-system JSON", path.display()))
}

pub fn load_matrix(path: &Path) -> Result<TaskMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {} as task-matrix JSON", path.display()))
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    if is_json(path) {
        write_json(path, g)
    } else {
        std::fs::write(path, write_dimacs(g)).with_context(|| format!("writing {}", path.display()))
    }
}

/// DIMACS plus the JSON sidecar carrying labels (and decorations when
/// present).
pub fn write_reduction(prefix: &str, graph: &Graph, decorated: Option<&DecoratedGraph>) -> Result<()> {
    std::fs::write(format!("{prefix}.dimacs"), write_dimacs(graph))
        .with_context(|| format!("writing {prefix}.dimacs"))?;
    match decorated {
        Some(d) => write_json(Path::new(&format!("{prefix}.json")), d),
        None => write_json(Path::new(&format!("{prefix}.json")), graph),
    }
}
