//! Ends of a lazily generated graph, seen one separator at a time.
//!
//! The separator at level `n` is the core `G_c` with `c = ceil(n/2)`: its
//! vertex set in vertex mode, its edge set in edge mode. The components of
//! `G_n` minus the separator that still gain vertices at level `n + 1` are
//! the end candidates. At `n = 1` the core is all of `G_1`, so the
//! decomposition is empty; meaningful separators start at `n = 2`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::generators::{LazyGraph, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndMode {
    Edge,
    Vertex,
}

impl std::str::FromStr for EndMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edge" => Ok(EndMode::Edge),
            "vertex" => Ok(EndMode::Vertex),
            _ => Err(format!("unknown end mode {s}; expected edge or vertex")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndComponent {
    pub vertices: Vec<String>,
    /// A path from a vertex next to the separator out to a vertex of the
    /// newest level: a finite prefix of a ray into this end.
    pub ray: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndDecomposition {
    pub level: usize,
    pub mode: EndMode,
    pub core_level: usize,
    /// Deleted vertex ids (vertex mode) or edge ids (edge mode).
    pub separator: Vec<String>,
    pub components: Vec<EndComponent>,
}

impl EndDecomposition {
    pub fn end_count(&self) -> usize {
        self.components.len()
    }

    /// Index of the component containing vertex `id`.
    pub fn component_of(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.iter().any(|v| v == id))
    }
}

pub fn core_level(n: usize) -> usize {
    n.div_ceil(2)
}

pub fn ends(g: &dyn LazyGraph, n: usize, mode: EndMode) -> EndDecomposition {
    assert!(n >= 1, "ends need level at least 1");
    let c = core_level(n);
    let core = g.truncate(c);
    let t = g.truncate(n);
    let next = g.truncate(n + 1);
    ends_from(&core, &t, &next, mode)
}

/// Same as [`ends`] with the three truncations supplied by the caller.
pub fn ends_from(core: &Truncation, t: &Truncation, next: &Truncation, mode: EndMode) -> EndDecomposition {
    let graph = &t.graph;
    let in_core_v = |v: usize| core.graph.vertex(graph.vertex_id(v)).is_some();
    let in_core_e = |e: usize| core.graph.edge_ix(&graph.edge(e).id).is_some();
    let (label, separator) = match mode {
        EndMode::Vertex => (
            graph.components_avoiding(in_core_v, |_| false),
            core.graph.vertex_ids().to_vec(),
        ),
        EndMode::Edge => (
            graph.components_avoiding(|_| false, in_core_e),
            core.graph.edges().iter().map(|e| e.id.clone()).collect(),
        ),
    };
    // a component grows if some level-(n+1) edge touches it outside the separator
    let mut grows = vec![false; graph.vertex_count()];
    for (e, &lvl) in next.graph.edges().iter().zip(&next.edge_level) {
        if lvl != t.level + 1 {
            continue;
        }
        for x in [e.u, e.v] {
            if let Some(ix) = graph.vertex(next.graph.vertex_id(x)) {
                if label[ix] != usize::MAX {
                    grows[label[ix]] = true;
                }
            }
        }
    }
    let count = label.iter().filter(|&&l| l != usize::MAX).max().map_or(0, |m| m + 1);
    let mut components = Vec::new();
    for comp in 0..count {
        if !grows[comp] {
            continue;
        }
        let members: Vec<usize> = (0..graph.vertex_count()).filter(|&v| label[v] == comp).collect();
        components.push(EndComponent {
            vertices: members.iter().map(|&v| graph.vertex_id(v).to_string()).collect(),
            ray: ray_prefix(t, &label, comp, &members),
        });
    }
    EndDecomposition { level: t.level, mode, core_level: core.level, separator, components }
}

/// Hop-shortest path inside the component from its oldest vertex to its
/// first vertex of the newest level present.
fn ray_prefix(t: &Truncation, label: &[usize], comp: usize, members: &[usize]) -> Vec<String> {
    let graph = &t.graph;
    let start = *members.iter().min_by_key(|&&v| (t.vertex_level[v], v)).expect("nonempty");
    let goal = *members.iter().max_by_key(|&&v| (t.vertex_level[v], std::cmp::Reverse(v))).expect("nonempty");
    let mut prev = vec![usize::MAX; graph.vertex_count()];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == goal {
            break;
        }
        for &e in graph.incident(x) {
            let y = graph.edge(e).other(x);
            if label[y] == comp && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![goal];
    let mut cur = goal;
    while cur != start {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path.into_iter().map(|v| graph.vertex_id(v).to_string()).collect()
}
