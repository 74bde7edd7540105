//! The line graph functor with induced lengths.

use crate::graph::{GraphError, WeightedGraph};
use crate::length::Length;

/// Id of the line-graph edge joining edges `e` and `d` through vertex `y`.
pub fn line_edge_id(e: &str, d: &str, y: &str) -> String {
    format!("{e}~{d}@{y}")
}

/// Line graph of `g`.
///
/// Vertices are the edge ids of `g`. Two edges sharing a vertex `y` are
/// joined by one line-graph edge per shared vertex, of length
/// `(len(e) + len(d)) / 2`; parallel edges therefore become joined twice. A
/// loop never becomes adjacent to itself.
pub fn line_graph<L: Length>(g: &WeightedGraph<L>) -> Result<WeightedGraph<L>, GraphError> {
    if g.edge_count() == 0 {
        return Err(GraphError::Empty);
    }
    let mut out = WeightedGraph::new();
    for e in g.edges() {
        out.add_vertex(e.id.clone())?;
    }
    for y in 0..g.vertex_count() {
        let inc = g.incident(y);
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                let (ea, eb) = (g.edge(a), g.edge(b));
                let len = (ea.len.clone() + eb.len.clone()).half();
                out.add_edge(line_edge_id(&ea.id, &eb.id, g.vertex_id(y)), &ea.id, &eb.id, len)?;
            }
        }
    }
    Ok(out)
}
