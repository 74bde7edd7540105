//! Finite weighted multigraphs.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::length::Length;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("nonpositive length on edge {edge}")]
    NonPositiveLength { edge: String },
    #[error("edge {edge} has undeclared endpoint {vertex}")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("graph is empty")]
    Empty,
    #[error("malformed graph json: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<L> {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub len: L,
}

impl<L> Edge<L> {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite `x`; `x` must be an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }
}

/// A finite multigraph with strictly positive edge lengths.
///
/// Vertices and edges carry string ids and are addressed internally by their
/// insertion index. Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<L = f64> {
    vertex_ids: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge<L>>,
    edge_index: HashMap<String, usize>,
    // edge indices per vertex, ascending; a loop is listed once
    incidence: Vec<Vec<usize>>,
}

impl<L: Length> Default for WeightedGraph<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Length> WeightedGraph<L> {
    pub fn new() -> Self {
        WeightedGraph {
            vertex_ids: Vec::new(),
            vertex_index: HashMap::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
            incidence: Vec::new(),
        }
    }

    /// Graph on vertices `v0..v{n-1}` with edges `e0..` given by index triples.
    pub fn from_edges(n: usize, edges: &[(usize, usize, L)]) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(format!("v{i}"))?;
        }
        for (k, (u, v, len)) in edges.iter().enumerate() {
            let (u, v) = (format!("v{u}"), format!("v{v}"));
            g.add_edge(format!("e{k}"), &u, &v, len.clone())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize, GraphError> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) {
            return Err(GraphError::DuplicateId(id));
        }
        let ix = self.vertex_ids.len();
        self.vertex_index.insert(id.clone(), ix);
        self.vertex_ids.push(id);
        self.incidence.push(Vec::new());
        Ok(ix)
    }

    /// Index of `id`, adding the vertex if it is new.
    pub fn ensure_vertex(&mut self, id: &str) -> usize {
        match self.vertex_index.get(id) {
            Some(&ix) => ix,
            None => self.add_vertex(id).expect("fresh id"),
        }
    }

    pub fn add_edge(&mut self, id: impl Into<String>, u: &str, v: &str, len: L) -> Result<usize, GraphError> {
        let id = id.into();
        if self.edge_index.contains_key(&id) {
            return Err(GraphError::DuplicateId(id));
        }
        if !len.is_positive() {
            return Err(GraphError::NonPositiveLength { edge: id });
        }
        let lookup = |x: &str| {
            self.vertex_index.get(x).copied().ok_or_else(|| GraphError::DanglingEndpoint {
                edge: id.clone(),
                vertex: x.to_string(),
            })
        };
        let (ui, vi) = (lookup(u)?, lookup(v)?);
        Ok(self.push_edge(id, ui, vi, len))
    }

    fn push_edge(&mut self, id: String, u: usize, v: usize, len: L) -> usize {
        let ix = self.edges.len();
        self.edge_index.insert(id.clone(), ix);
        self.edges.push(Edge { id, u, v, len });
        self.incidence[u].push(ix);
        if u != v {
            self.incidence[v].push(ix);
        }
        ix
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_ids.is_empty()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn vertex_or_err(&self, id: &str) -> Result<usize, GraphError> {
        self.vertex(id).ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, e: usize) -> &Edge<L> {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge<L>] {
        &self.edges
    }

    pub fn edge_ix(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn edge_or_err(&self, id: &str) -> Result<usize, GraphError> {
        self.edge_ix(id).ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    /// Edges at `v`, ascending by index; loops appear once.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].iter().map(|&e| if self.edges[e].is_loop() { 2 } else { 1 }).sum()
    }

    pub fn total_length(&self) -> L {
        crate::length::sum(self.edges.iter().map(|e| e.len.clone()))
    }

    pub fn min_edge_length(&self) -> Option<L> {
        self.edges.iter().map(|e| e.len.clone()).reduce(L::min_len)
    }

    /// Component label per vertex, labels numbered in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        self.components_avoiding(|_| false, |_| false)
    }

    /// Components of the graph with some vertices and edges deleted; deleted
    /// vertices get label `usize::MAX`.
    pub fn components_avoiding(&self, skip_vertex: impl Fn(usize) -> bool, skip_edge: impl Fn(usize) -> bool) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX || skip_vertex(s) {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &e in &self.incidence[x] {
                    if skip_edge(e) {
                        continue;
                    }
                    let y = self.edges[e].other(x);
                    if label[y] == usize::MAX && !skip_vertex(y) {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Same graph with every length replaced by `f(edge)`.
    pub fn map_lengths<M: Length>(&self, mut f: impl FnMut(&Edge<L>) -> M) -> Result<WeightedGraph<M>, GraphError> {
        let mut out = WeightedGraph::<M>::new();
        for id in &self.vertex_ids {
            out.add_vertex(id.clone())?;
        }
        for e in &self.edges {
            let len = f(e);
            if !len.is_positive() {
                return Err(GraphError::NonPositiveLength { edge: e.id.clone() });
            }
            out.push_edge(e.id.clone(), e.u, e.v, len);
        }
        Ok(out)
    }

    /// True if every vertex and edge of `self` is in `other` with the same
    /// endpoints and length.
    pub fn is_subgraph_of(&self, other: &WeightedGraph<L>) -> bool {
        self.vertex_ids.iter().all(|v| other.vertex(v).is_some())
            && self.edges.iter().all(|e| match other.edge_ix(&e.id) {
                None => false,
                Some(f) => {
                    let f = other.edge(f);
                    let ends = (self.vertex_id(e.u), self.vertex_id(e.v));
                    let oends = (other.vertex_id(f.u), other.vertex_id(f.v));
                    ends == oends && e.len == f.len
                }
            })
    }

    /// Graphviz rendering with a `len` attribute per edge.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in &self.vertex_ids {
            let _ = writeln!(s, "  {};", dot_quote(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -- {} [id={}, len={}];",
                dot_quote(&self.vertex_ids[e.u]),
                dot_quote(&self.vertex_ids[e.v]),
                dot_quote(&e.id),
                format_len(e.len.to_f64())
            );
        }
        s.push_str("}\n");
        s
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Decimal rendering with 17 significant digits, enough to round-trip any f64.
pub fn format_len(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VertexSpec {
    pub id: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EdgeSpec {
    pub id: String,
    pub u: String,
    pub v: String,
    pub len: f64,
}

/// Plain description of a graph, the shape of the JSON interchange format.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

/// Validate a description and build the graph.
pub fn build_graph(spec: &GraphSpec) -> Result<WeightedGraph<f64>, GraphError> {
    let mut g = WeightedGraph::new();
    for v in &spec.vertices {
        g.add_vertex(v.id.clone())?;
    }
    for e in &spec.edges {
        if !e.len.is_finite() {
            return Err(GraphError::NonPositiveLength { edge: e.id.clone() });
        }
        g.add_edge(e.id.clone(), &e.u, &e.v, e.len)?;
    }
    Ok(g)
}

impl WeightedGraph<f64> {
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertex_ids.iter().map(|id| VertexSpec { id: id.clone() }).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    u: self.vertex_ids[e.u].clone(),
                    v: self.vertex_ids[e.v].clone(),
                    len: e.len,
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let spec: GraphSpec = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        build_graph(&spec)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.to_json()).expect("own output is valid json")
    }

    /// Pretty JSON with lengths at 17 significant digits.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            vertices: Vec<VertexSpec>,
            edges: Vec<OutEdge<'a>>,
        }
        #[derive(Serialize)]
        struct OutEdge<'a> {
            id: &'a str,
            u: &'a str,
            v: &'a str,
            len: Box<RawValue>,
        }
        let out = Out {
            vertices: self.vertex_ids.iter().map(|id| VertexSpec { id: id.clone() }).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| OutEdge {
                    id: &e.id,
                    u: &self.vertex_ids[e.u],
                    v: &self.vertex_ids[e.v],
                    len: RawValue::from_string(format_len(e.len)).expect("numeric literal"),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&out).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::length::Rational;

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap()
    }

    #[test]
    fn triangle_shape() {
        let g = triangle();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert!(g.edges().iter().all(|e| e.len == 1.0));
        assert_eq!(g.total_length(), 3.0);
        assert!(g.is_connected());
    }

    #[test]
    fn zero_length_rejected() {
        let err = WeightedGraph::from_edges(2, &[(0, 1, 0.0)]).unwrap_err();
        assert_eq!(err, GraphError::NonPositiveLength { edge: "e0".into() });
        let err = WeightedGraph::<Rational>::from_edges(2, &[(0, 1, Rational::from_integer(-1))]).unwrap_err();
        assert!(matches!(err, GraphError::NonPositiveLength { .. }));
    }

    #[test]
    fn dangling_endpoint_rejected() {
        let spec = GraphSpec {
            vertices: vec![VertexSpec { id: "a".into() }],
            edges: vec![EdgeSpec { id: "e".into(), u: "a".into(), v: "b".into(), len: 1.0 }],
        };
        assert_eq!(
            build_graph(&spec).unwrap_err(),
            GraphError::DanglingEndpoint { edge: "e".into(), vertex: "b".into() }
        );
    }

    #[test]
    fn loops_and_parallels() {
        let g = WeightedGraph::from_edges(2, &[(0, 0, 1.0), (0, 1, 2.0), (0, 1, 3.0)]).unwrap();
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.incident(0), &[0, 1, 2]);
    }

    #[test]
    fn json_round_trip_preserves_lengths() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 0.1), (1, 2, 1.0 / 3.0), (2, 2, 1e-300)]).unwrap();
        let back = WeightedGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(WeightedGraph::from_json("{\"vertices\": ["), Err(GraphError::Parse(_))));
        assert!(matches!(WeightedGraph::from_json("{\"vertices\": [], \"edges\": [], \"x\": 1}"), Err(GraphError::Parse(_))));
    }

    #[test]
    fn dot_has_len_attribute() {
        let dot = triangle().to_dot();
        assert!(dot.contains("len=1.0000000000000000e0"));
        assert_eq!(dot.matches("--").count(), 3);
    }

    #[test]
    fn components_with_deletions() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let c = g.components_avoiding(|v| v == 1, |_| false);
        assert_eq!(c, vec![0, usize::MAX, 1, 1]);
        let c = g.components_avoiding(|_| false, |e| e == 2);
        assert_eq!(c, vec![0, 0, 0, 1]);
    }
}
