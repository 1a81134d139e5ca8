//! Simple undirected graphs with contiguous vertex ids, plus the structural
//! operations (join, disjoint union) the instance builders are made of.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {0} out of range (n = {1})")]
    EndpointOutOfRange(usize, usize),
    #[error("operation needs at least one vertex")]
    EmptyGraph,
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("triple ({0}, {1}, {2}) does not induce a triangle")]
    NotATriangle(usize, usize, usize),
    #[error("label count {0} does not match vertex count {1}")]
    LabelCountMismatch(usize, usize),
}

/// An immutable simple undirected graph. Vertices are `0..n`; edges are
/// stored normalized (`u < v`) and sorted. Labels are advisory metadata:
/// no operation branches on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "raw::GraphJson", into = "raw::GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    labels: Vec<String>,
}

/// Validates and builds a graph; labels default to the vertex index.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    let labels = (0..n).map(|v| v.to_string()).collect();
    Graph::with_labels(n, edges, labels)
}

impl Graph {
    pub fn with_labels(
        n: usize,
        edges: &[(usize, usize)],
        labels: Vec<String>,
    ) -> Result<Self, GraphError> {
        if labels.len() != n {
            return Err(GraphError::LabelCountMismatch(labels.len(), n));
        }
        let mut norm: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n {
                return Err(GraphError::EndpointOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::EndpointOutOfRange(v, n));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            norm.push((a as u32, b as u32));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: norm, adj, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Normalized (`u < v`), sorted edge list.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Structural equality ignoring labels.
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

/// Minimum and maximum vertex degree.
pub fn degree_stats(g: &Graph) -> Result<(usize, usize), GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let degs = (0..g.n()).map(|v| g.degree(v));
    Ok((degs.clone().min().unwrap(), degs.max().unwrap()))
}

/// The join: both operands plus every cross edge. The left operand keeps its
/// vertex ids, the right operand is shifted by `|V(A)|`; labels carry an
/// operand prefix so provenance survives nesting.
pub fn join(a: &Graph, b: &Graph) -> Graph {
    let mut g = disjoint_union(a, b);
    for u in 0..a.n() {
        for v in 0..b.n() {
            g.edges.push((u as u32, (a.n() + v) as u32));
        }
    }
    g.edges.sort_unstable();
    g.adj = rebuild_adj(g.n, &g.edges);
    g
}

/// Disjoint union under the same relabeling convention as [`join`].
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let n = a.n() + b.n();
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|&(u, v)| (u + a.n() as u32, v + a.n() as u32)));
    edges.sort_unstable();
    let adj = rebuild_adj(n, &edges);
    let mut labels: Vec<String> = a.labels.iter().map(|l| format!("a.{l}")).collect();
    labels.extend(b.labels.iter().map(|l| format!("b.{l}")));
    Graph { n, edges, adj, labels }
}

fn rebuild_adj(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// True iff every vertex outside `d` has a neighbor in `d`.
pub fn is_dominating_set(g: &Graph, d: &[usize]) -> Result<bool, GraphError> {
    let mut in_d = vec![false; g.n()];
    for &v in d {
        if v >= g.n() {
            return Err(GraphError::VertexOutOfRange(v, g.n()));
        }
        in_d[v] = true;
    }
    Ok((0..g.n()).all(|u| in_d[u] || g.neighbors(u).iter().any(|&w| in_d[w as usize])))
}

pub fn has_isolated_vertex(g: &Graph) -> bool {
    (0..g.n()).any(|v| g.degree(v) == 0)
}

/// Breadth-first bipartiteness check, per component.
pub fn is_two_colorable(g: &Graph) -> bool {
    let mut color = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..g.n() {
        if color[start] != usize::MAX {
            continue;
        }
        color[start] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                let w = w as usize;
                if color[w] == usize::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// A graph together with an ordered list of distinguished triangles.
/// Constructions that connect operand graphs triangle-by-triangle consume
/// and produce these.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "raw::GraphJson", into = "raw::GraphJson")]
pub struct DecoratedGraph {
    graph: Graph,
    triangles: Vec<[u32; 3]>,
}

impl DecoratedGraph {
    pub fn new(graph: Graph, triangles: Vec<[u32; 3]>) -> Result<Self, GraphError> {
        for t in &triangles {
            let (a, b, c) = (t[0] as usize, t[1] as usize, t[2] as usize);
            if a >= graph.n() || b >= graph.n() || c >= graph.n() {
                return Err(GraphError::VertexOutOfRange(
                    *[a, b, c].iter().find(|&&v| v >= graph.n()).unwrap(),
                    graph.n(),
                ));
            }
            if !(graph.has_edge(a, b) && graph.has_edge(b, c) && graph.has_edge(a, c)) {
                return Err(GraphError::NotATriangle(a, b, c));
            }
        }
        Ok(DecoratedGraph { graph, triangles })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }
}

/// Assignment of every vertex to one of `k` classes; empty classes are legal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "raw::PartitionJson", into = "raw::PartitionJson")]
pub struct Partition {
    k: usize,
    class_of: Vec<u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("class index {0} out of range (k = {1})")]
    ClassOutOfRange(usize, usize),
}

impl Partition {
    pub fn new(k: usize, class_of: Vec<u32>) -> Result<Self, PartitionError> {
        if let Some(&c) = class_of.iter().find(|&&c| c as usize >= k) {
            return Err(PartitionError::ClassOutOfRange(c as usize, k));
        }
        Ok(Partition { k, class_of })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v] as usize
    }

    pub fn classes(&self) -> &[u32] {
        &self.class_of
    }

    /// Vertices of each class, in vertex order.
    pub fn class_members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(v);
        }
        out
    }
}

mod raw {
    use super::*;

    /// Wire schema shared by `Graph` and `DecoratedGraph`:
    /// `{"n": int, "edges": [[u,v],...], "labels": [...]?, "triangles": [[a,b,c],...]?}`.
    #[derive(Serialize, Deserialize)]
    pub struct GraphJson {
        pub n: usize,
        pub edges: Vec<(usize, usize)>,
        #[serde(skip_serializing_if = "Option::is_none")]
        pub labels: Option<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        pub triangles: Option<Vec<[u32; 3]>>,
    }

    impl TryFrom<GraphJson> for Graph {
        type Error = GraphError;
        fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
            match j.labels {
                Some(labels) => Graph::with_labels(j.n, &j.edges, labels),
                None => build_graph(j.n, &j.edges),
            }
        }
    }

    impl From<Graph> for GraphJson {
        fn from(g: Graph) -> Self {
            GraphJson {
                n: g.n,
                edges: g.edges.iter().map(|&(u, v)| (u as usize, v as usize)).collect(),
                labels: Some(g.labels),
                triangles: None,
            }
        }
    }

    impl TryFrom<GraphJson> for DecoratedGraph {
        type Error = GraphError;
        fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
            let triangles = j.triangles.clone().unwrap_or_default();
            let graph = Graph::try_from(j)?;
            DecoratedGraph::new(graph, triangles)
        }
    }

    impl From<DecoratedGraph> for GraphJson {
        fn from(d: DecoratedGraph) -> Self {
            let mut j = GraphJson::from(d.graph);
            j.triangles = Some(d.triangles);
            j
        }
    }

    /// `{"k": int, "class_of": [int,...]}`.
    #[derive(Serialize, Deserialize)]
    pub struct PartitionJson {
        pub k: usize,
        pub class_of: Vec<u32>,
    }

    impl TryFrom<PartitionJson> for Partition {
        type Error = PartitionError;
        fn try_from(j: PartitionJson) -> Result<Self, Self::Error> {
            Partition::new(j.k, j.class_of)
        }
    }

    impl From<Partition> for PartitionJson {
        fn from(p: Partition) -> Self {
            PartitionJson { k: p.k, class_of: p.class_of }
        }
    }
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build_graph(n, &edges).unwrap()
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
    build_graph(n, &edges).unwrap()
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|u| (u - 1, u)).collect();
    build_graph(n, &edges).unwrap()
}

/// Wheel: a hub joined to a cycle on `n - 1` vertices.
pub fn wheel(n: usize) -> Graph {
    assert!(n >= 4);
    let mut edges: Vec<_> = (0..n - 1).map(|u| (u, (u + 1) % (n - 1))).collect();
    edges.extend((0..n - 1).map(|u| (u, n - 1)));
    build_graph(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_self_loop() {
        assert_eq!(build_graph(2, &[(0, 0)]).unwrap_err(), GraphError::SelfLoop(0));
    }

    #[test]
    fn build_rejects_duplicate_edge() {
        assert_eq!(
            build_graph(4, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert_eq!(
            build_graph(2, &[(0, 5)]).unwrap_err(),
            GraphError::EndpointOutOfRange(5, 2)
        );
    }

    #[test]
    fn k3_is_complete() {
        let g = build_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(g.same_structure(&complete(3)));
    }

    #[test]
    fn degree_stats_examples() {
        assert_eq!(degree_stats(&complete(4)).unwrap(), (3, 3));
        // star K_{1,3}
        let star = build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(degree_stats(&star).unwrap(), (1, 3));
        assert_eq!(degree_stats(&build_graph(1, &[]).unwrap()).unwrap(), (0, 0));
        assert_eq!(degree_stats(&build_graph(0, &[]).unwrap()).unwrap_err(), GraphError::EmptyGraph);
    }

    #[test]
    fn join_of_cliques_is_clique() {
        assert!(join(&complete(2), &complete(2)).same_structure(&complete(4)));
        assert!(join(&complete(1), &complete(1)).same_structure(&complete(2)));
    }

    #[test]
    fn join_edge_count_formula() {
        let g = join(&cycle(4), &complete(1));
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 4 + 4);
    }

    #[test]
    fn disjoint_union_counts() {
        let g = disjoint_union(&complete(3), &complete(3));
        assert_eq!((g.n(), g.edge_count()), (6, 6));
        let h = disjoint_union(&complete(1), &complete(1));
        assert_eq!((h.n(), h.edge_count()), (2, 0));
        let i = disjoint_union(&complete(2), &complete(3));
        assert_eq!((i.n(), i.edge_count()), (5, 4));
    }

    #[test]
    fn join_associativity_on_structure() {
        let a = cycle(4);
        let b = path(3);
        let c = complete(2);
        let left = join(&join(&a, &b), &c);
        let right = join(&a, &join(&b, &c));
        assert!(left.same_structure(&right));
    }

    #[test]
    fn dominating_set_examples() {
        let c4 = cycle(4);
        assert!(is_dominating_set(&c4, &[0, 2]).unwrap());
        assert!(!is_dominating_set(&c4, &[0]).unwrap());
        assert!(is_dominating_set(&c4, &[0, 1, 2, 3]).unwrap());
        assert_eq!(
            is_dominating_set(&c4, &[9]).unwrap_err(),
            GraphError::VertexOutOfRange(9, 4)
        );
    }

    #[test]
    fn dominating_set_agrees_with_double_loop_on_small_graphs() {
        // every D on every graph over a fixed small family
        let graphs = [complete(3), complete(5), cycle(5), path(4), build_graph(5, &[(0, 1), (2, 3)]).unwrap()];
        for g in &graphs {
            for mask in 0u32..(1 << g.n()) {
                let d: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
                let naive = (0..g.n()).all(|u| {
                    d.contains(&u) || d.iter().any(|&v| g.has_edge(u, v))
                });
                assert_eq!(is_dominating_set(g, &d).unwrap(), naive);
            }
        }
    }

    #[test]
    fn isolated_and_bipartite_predicates() {
        assert_eq!(
            (has_isolated_vertex(&complete(3)), is_two_colorable(&complete(3))),
            (false, false)
        );
        assert_eq!((has_isolated_vertex(&path(3)), is_two_colorable(&path(3))), (false, true));
        let k1_k2 = disjoint_union(&complete(1), &complete(2));
        assert_eq!((has_isolated_vertex(&k1_k2), is_two_colorable(&k1_k2)), (true, true));
    }

    #[test]
    fn decorated_graph_validates_triangles() {
        let g = complete(3);
        assert!(DecoratedGraph::new(g.clone(), vec![[0, 1, 2]]).is_ok());
        let p = path(3);
        assert_eq!(
            DecoratedGraph::new(p, vec![[0, 1, 2]]).unwrap_err(),
            GraphError::NotATriangle(0, 1, 2)
        );
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Graph>();
        assert_send_sync::<DecoratedGraph>();
        assert_send_sync::<Partition>();
    }

    #[test]
    fn graph_json_round_trip() {
        let g = wheel(5);
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn partition_json_schema() {
        let p = Partition::new(2, vec![0, 1, 0]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"k":2,"class_of":[0,1,0]}"#);
    }
}
