//! Euler tours by circuit insertion, and their transformation into
//! Hamilton cycles of the line graph.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclespace::{circuit_decomposition, CycleSpaceElement};
use crate::generators::Truncation;
use crate::graph::{GraphError, WeightedGraph};
use crate::length::Length;
use crate::linegraph::{line_edge_id, line_graph};
use crate::metric::order_cycle;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TourError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has no edges")]
    Empty,
    #[error("vertex {vertex} has odd degree {degree}; its incident edges form an odd cut")]
    OddDegree { vertex: String, degree: usize },
    #[error("graph is disconnected; vertex {vertex} is not reachable")]
    Disconnected { vertex: String },
    #[error("not an Euler tour: {0}")]
    InvalidTour(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

/// Parity verdict; the set of edges at a vertex of odd degree is an odd cut.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParityVerdict {
    pub pass: bool,
    pub witness: Option<String>,
    pub odd_vertices: Vec<String>,
}

pub fn odd_cut_check<L: Length>(g: &WeightedGraph<L>) -> ParityVerdict {
    let odd: Vec<String> = (0..g.vertex_count()).filter(|&v| g.degree(v) % 2 == 1).map(|v| g.vertex_id(v).to_string()).collect();
    ParityVerdict { pass: odd.is_empty(), witness: odd.first().cloned(), odd_vertices: odd }
}

/// Parity of a truncation: interior vertices decide, frontier vertices
/// (whose degree is still incomplete) are reported on their own.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationParity {
    pub interior: ParityVerdict,
    pub frontier_odd: Vec<String>,
    pub frontier_even: Vec<String>,
}

pub fn odd_cut_check_truncation(t: &Truncation) -> TruncationParity {
    let g = &t.graph;
    let frontier: BTreeSet<usize> = t.frontier.iter().copied().collect();
    let interior_odd: Vec<String> =
        (0..g.vertex_count()).filter(|v| !frontier.contains(v) && g.degree(*v) % 2 == 1).map(|v| g.vertex_id(v).to_string()).collect();
    let (odd, even): (Vec<usize>, Vec<usize>) = frontier.iter().partition(|&&v| g.degree(v) % 2 == 1);
    let ids = |s: Vec<usize>| s.into_iter().map(|v| g.vertex_id(v).to_string()).collect();
    TruncationParity {
        interior: ParityVerdict { pass: interior_odd.is_empty(), witness: interior_odd.first().cloned(), odd_vertices: interior_odd },
        frontier_odd: ids(odd),
        frontier_even: ids(even),
    }
}

/// A closed tour, as written to and read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Tour {
    Euler { edges: Vec<String>, start: String },
    Hamilton { vertices: Vec<String> },
}

/// One circuit spliced into the tour.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Insertion {
    pub vertex: String,
    /// Position in the tour's edge list where the circuit starts.
    pub position: usize,
    pub circuit: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerTour {
    pub start: usize,
    /// Edge `edges[i]` leads from `vertices[i]` to `vertices[i+1]`; the
    /// last vertex equals the first.
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    pub log: Vec<Insertion>,
}

impl EulerTour {
    pub fn to_tour<L: Length>(&self, g: &WeightedGraph<L>) -> Tour {
        Tour::Euler { edges: self.edges.iter().map(|&e| g.edge(e).id.clone()).collect(), start: g.vertex_id(self.start).to_string() }
    }
}

fn check_eulerian<L: Length>(g: &WeightedGraph<L>) -> Result<(), TourError> {
    if g.edge_count() == 0 {
        return Err(TourError::Empty);
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(TourError::OddDegree { vertex: g.vertex_id(v).to_string(), degree: g.degree(v) });
    }
    if let Some(v) = g.components().iter().position(|&c| c != 0) {
        return Err(TourError::Disconnected { vertex: g.vertex_id(v).to_string() });
    }
    Ok(())
}

/// A circuit as a closed walk starting and ending at `at`.
fn circuit_walk<L: Length>(g: &WeightedGraph<L>, c: &CycleSpaceElement<L>, at: usize) -> (Vec<usize>, Vec<usize>) {
    let order = order_cycle(g, &c.edge_list()).expect("decomposition yields cycles");
    let k = order.vertices.len();
    let i = order.vertices.iter().position(|&v| v == at).expect("attachment vertex lies on the circuit");
    let edges: Vec<usize> = (0..k).map(|j| order.edges[(i + j) % k]).collect();
    let vertices: Vec<usize> = (0..=k).map(|j| order.vertices[(i + j) % k]).collect();
    (edges, vertices)
}

/// Euler tour of a connected graph with all degrees even.
///
/// The edge set is split into circuits; the tour starts as the first of
/// them, and the remaining circuits are spliced in one at a time: the
/// first circuit (in decomposition order) meeting the tour, attached at the
/// earliest tour vertex it contains.
pub fn euler_tour<L: Length>(g: &WeightedGraph<L>) -> Result<EulerTour, TourError> {
    check_eulerian(g)?;
    let mut all = FixedBitSet::with_capacity(g.edge_count());
    all.insert_range(..);
    let z = CycleSpaceElement::from_set(g, all);
    let mut circuits = circuit_decomposition(g, &z).expect("degrees are even").circuits;
    let first = circuits.remove(0);
    let start = g.edge(first.edge_list()[0]).u;
    let (mut edges, mut vertices) = circuit_walk(g, &first, start);
    let mut log = Vec::new();
    while !circuits.is_empty() {
        let mut on_tour = vec![usize::MAX; g.vertex_count()];
        for (pos, &v) in vertices.iter().enumerate().rev() {
            on_tour[v] = pos;
        }
        let (ci, pos) = circuits
            .iter()
            .enumerate()
            .find_map(|(ci, c)| {
                c.edges.ones().flat_map(|e| [g.edge(e).u, g.edge(e).v]).filter(|&v| on_tour[v] != usize::MAX).map(|v| on_tour[v]).min().map(|p| (ci, p))
            })
            .expect("connected graph: some circuit meets the tour");
        let c = circuits.remove(ci);
        let at = vertices[pos];
        let (ce, cv) = circuit_walk(g, &c, at);
        log.push(Insertion {
            vertex: g.vertex_id(at).to_string(),
            position: pos,
            circuit: ce.iter().map(|&e| g.edge(e).id.clone()).collect(),
        });
        edges.splice(pos..pos, ce);
        vertices.splice(pos..pos, cv[..cv.len() - 1].iter().copied());
    }
    Ok(EulerTour { start, edges, vertices, log })
}

/// Checks that `edges`, walked from `start`, is a closed walk using every
/// edge exactly once; returns the visited vertex sequence.
pub fn verify_euler<L: Length>(g: &WeightedGraph<L>, edges: &[usize], start: usize) -> Result<Vec<usize>, TourError> {
    let mut used = vec![false; g.edge_count()];
    let mut vertices = vec![start];
    let mut cur = start;
    for (i, &e) in edges.iter().enumerate() {
        if e >= g.edge_count() {
            return Err(TourError::InvalidTour(format!("unknown edge #{e}")));
        }
        let ed = g.edge(e);
        if used[e] {
            return Err(TourError::InvalidTour(format!("edge {} traversed twice", ed.id)));
        }
        used[e] = true;
        if ed.u != cur && ed.v != cur {
            return Err(TourError::InvalidTour(format!("step {i}: edge {} does not meet {}", ed.id, g.vertex_id(cur))));
        }
        cur = ed.other(cur);
        vertices.push(cur);
    }
    if cur != start {
        return Err(TourError::InvalidTour("walk is not closed".into()));
    }
    if let Some(e) = used.iter().position(|u| !u) {
        return Err(TourError::InvalidTour(format!("edge {} never traversed", g.edge(e).id)));
    }
    Ok(vertices)
}

/// Resolves a tour given by ids.
pub fn euler_from_tour<L: Length>(g: &WeightedGraph<L>, t: &Tour) -> Result<(Vec<usize>, usize), TourError> {
    match t {
        Tour::Euler { edges, start } => {
            let e = edges.iter().map(|id| g.edge_or_err(id)).collect::<Result<Vec<_>, _>>()?;
            Ok((e, g.vertex_or_err(start)?))
        }
        Tour::Hamilton { .. } => Err(TourError::InvalidTour("expected an Euler tour".into())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonCycle<L> {
    pub line_graph: WeightedGraph<L>,
    /// Vertices of the line graph in cycle order (edge ids of `g`).
    pub vertices: Vec<String>,
    /// Line-graph edges used, `edges[i]` joining `vertices[i]` and
    /// `vertices[(i+1) % m]`.
    pub edges: Vec<String>,
    pub length: L,
}

impl<L> HamiltonCycle<L> {
    pub fn to_tour(&self) -> Tour {
        Tour::Hamilton { vertices: self.vertices.clone() }
    }
}

/// The edge sequence of an Euler tour, read as a cycle of the line graph:
/// each passage `e, y, e'` through a vertex `y` uses the line-graph edge
/// joining `e` and `e'` at `y`. Its length telescopes to the total length
/// of `g`.
pub fn euler_to_hamilton<L: Length>(g: &WeightedGraph<L>, edges: &[usize], start: usize) -> Result<HamiltonCycle<L>, TourError> {
    let walk = verify_euler(g, edges, start)?;
    let m = edges.len();
    if m == 1 {
        return Err(TourError::Degenerate("a single loop has a one-vertex line graph without edges".into()));
    }
    let l = line_graph(g)?;
    let mut used = BTreeSet::new();
    let mut l_edges = Vec::with_capacity(m);
    for i in 0..m {
        let (a, b) = (edges[i], edges[(i + 1) % m]);
        let y = walk[i + 1];
        let (lo, hi) = (a.min(b), a.max(b));
        let id = line_edge_id(&g.edge(lo).id, &g.edge(hi).id, g.vertex_id(y));
        if l.edge_ix(&id).is_none() {
            return Err(TourError::InvalidTour(format!("line graph has no edge {id}")));
        }
        if !used.insert(id.clone()) {
            return Err(TourError::Degenerate(format!("passage {id} would be used twice")));
        }
        l_edges.push(id);
    }
    let length = crate::length::sum(l_edges.iter().map(|id| l.edge(l.edge_ix(id).unwrap()).len.clone()));
    Ok(HamiltonCycle {
        vertices: edges.iter().map(|&e| g.edge(e).id.clone()).collect(),
        edges: l_edges,
        line_graph: l,
        length,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UnknownVertex,
    Injectivity,
    Coverage,
    Adjacency,
    Closure,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamiltonVerdict {
    pub valid: bool,
    pub violation: Option<(ViolationKind, String)>,
}

/// Checks that `vertices` lists every vertex of `h` once, consecutive
/// vertices are adjacent and the last is adjacent to the first. For one or
/// two vertices the closing step needs a loop or a second parallel edge.
pub fn hamilton_verify<L: Length>(h: &WeightedGraph<L>, vertices: &[String]) -> HamiltonVerdict {
    let fail = |k: ViolationKind, s: String| HamiltonVerdict { valid: false, violation: Some((k, s)) };
    let mut ix = Vec::with_capacity(vertices.len());
    for v in vertices {
        match h.vertex(v) {
            Some(i) => ix.push(i),
            None => return fail(ViolationKind::UnknownVertex, v.clone()),
        }
    }
    let mut seen = vec![false; h.vertex_count()];
    for &v in &ix {
        if std::mem::replace(&mut seen[v], true) {
            return fail(ViolationKind::Injectivity, format!("{} occurs twice", h.vertex_id(v)));
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return fail(ViolationKind::Coverage, format!("{} is missing", h.vertex_id(v)));
    }
    let joins = |a: usize, b: usize| h.incident(a).iter().filter(|&&e| h.edge(e).other(a) == b).count();
    let k = ix.len();
    for w in ix.windows(2) {
        if joins(w[0], w[1]) == 0 {
            return fail(ViolationKind::Adjacency, format!("{} and {} are not adjacent", h.vertex_id(w[0]), h.vertex_id(w[1])));
        }
    }
    let closes = match k {
        0 => false,
        1 => joins(ix[0], ix[0]) >= 1,
        2 => joins(ix[0], ix[1]) >= 2,
        _ => joins(ix[k - 1], ix[0]) >= 1,
    };
    if !closes {
        return fail(ViolationKind::Closure, format!("cannot close from {}", vertices.last().map_or("", String::as_str)));
    }
    HamiltonVerdict { valid: true, violation: None }
}
