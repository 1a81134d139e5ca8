//! DIMACS edge-format reader/writer (`p edge n m`, then `e u v` with
//! 1-based vertex ids; `c` comment lines ignored).

use crate::graph::{build_graph, Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} edge lines follow")]
    HeaderMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> DimacsError {
    DimacsError::Parse { line, msg: msg.into() }
}

pub fn read_dimacs(text: &str) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate problem line"));
                }
                if tok.next() != Some("edge") {
                    return Err(parse_err(lineno, "expected `p edge n m`"));
                }
                let n = tok
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(lineno, "bad vertex count"))?;
                let m = tok
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(lineno, "bad edge count"))?;
                if tok.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens on problem line"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(lineno, "edge before problem line"))?;
                let u = tok
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(lineno, "bad edge endpoint"))?;
                let v = tok
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(lineno, "bad edge endpoint"))?;
                if tok.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens on edge line"));
                }
                if u == 0 || u > n {
                    return Err(GraphError::EndpointOutOfRange(u, n).into());
                }
                if v == 0 || v > n {
                    return Err(GraphError::EndpointOutOfRange(v, n).into());
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return Err(parse_err(lineno, format!("unknown line kind `{other}`"))),
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if edges.len() != m {
        return Err(DimacsError::HeaderMismatch { declared: m, found: edges.len() });
    }
    Ok(build_graph(n, &edges)?)
}

/// Canonical form: header, then edges sorted with `u < v`, 1-based.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
