//! The cycle space over GF(2) of a finite graph: bases, thin sums, circuit
//! decompositions and generation by geodetic cycles.

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph};
use crate::length::Length;
use crate::metric::{is_geodetic_cycle_with, order_cycle, DistanceMatrix, Geodecity, MetricError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CycleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {vertex} has odd degree in the edge set")]
    OddDegree { vertex: String },
    #[error("member {index} is not a circuit: {reason}")]
    NotACircuit { index: usize, reason: String },
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// An edge set of even degree everywhere, with its total length.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleSpaceElement<L> {
    pub edges: FixedBitSet,
    pub length: L,
}

impl<L: Length> CycleSpaceElement<L> {
    /// The edge set `edges` (duplicates cancel); not checked for parity.
    pub fn from_edges(g: &WeightedGraph<L>, edges: &[usize]) -> Self {
        let mut set = FixedBitSet::with_capacity(g.edge_count());
        for &e in edges {
            set.toggle(e);
        }
        Self::from_set(g, set)
    }

    pub fn from_ids(g: &WeightedGraph<L>, ids: &[impl AsRef<str>]) -> Result<Self, GraphError> {
        let edges: Vec<usize> = ids.iter().map(|id| g.edge_or_err(id.as_ref())).collect::<Result<_, _>>()?;
        Ok(Self::from_edges(g, &edges))
    }

    pub fn from_set(g: &WeightedGraph<L>, set: FixedBitSet) -> Self {
        let length = crate::length::sum(set.ones().map(|e| g.edge(e).len.clone()));
        CycleSpaceElement { edges: set, length }
    }

    pub fn empty(g: &WeightedGraph<L>) -> Self {
        CycleSpaceElement { edges: FixedBitSet::with_capacity(g.edge_count()), length: L::zero() }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_clear()
    }

    pub fn edge_list(&self) -> Vec<usize> {
        self.edges.ones().collect()
    }

    pub fn ids(&self, g: &WeightedGraph<L>) -> Vec<String> {
        self.edges.ones().map(|e| g.edge(e).id.clone()).collect()
    }

    pub fn sum(&self, other: &Self, g: &WeightedGraph<L>) -> Self {
        let mut set = self.edges.clone();
        set.symmetric_difference_with(&other.edges);
        Self::from_set(g, set)
    }

    /// First vertex of odd degree, if any; `None` certifies membership.
    pub fn odd_vertex(&self, g: &WeightedGraph<L>) -> Option<usize> {
        let mut deg = vec![0usize; g.vertex_count()];
        for e in self.edges.ones() {
            let ed = g.edge(e);
            deg[ed.u] += 1;
            deg[ed.v] += 1;
        }
        deg.iter().position(|d| d % 2 == 1)
    }

    pub fn check_even(&self, g: &WeightedGraph<L>) -> Result<(), CycleError> {
        match self.odd_vertex(g) {
            Some(v) => Err(CycleError::OddDegree { vertex: g.vertex_id(v).to_string() }),
            None => Ok(()),
        }
    }
}

/// Serializable view of an element.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElementReport {
    pub edges: Vec<String>,
    pub length: f64,
}

impl ElementReport {
    pub fn new<L: Length>(g: &WeightedGraph<L>, z: &CycleSpaceElement<L>) -> Self {
        ElementReport { edges: z.ids(g), length: z.length.to_f64() }
    }
}

/// An ordered family of circuits.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitFamily<L> {
    pub circuits: Vec<CycleSpaceElement<L>>,
}

impl<L: Length> CircuitFamily<L> {
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// Number of members containing each edge.
    pub fn occurrences(&self, edge_count: usize) -> Vec<usize> {
        let mut occ = vec![0; edge_count];
        for c in &self.circuits {
            for e in c.edges.ones() {
                occ[e] += 1;
            }
        }
        occ
    }

    pub fn total_length(&self) -> L {
        crate::length::sum(self.circuits.iter().map(|c| c.length.clone()))
    }

    /// Symmetric difference of all members.
    pub fn fold(&self, g: &WeightedGraph<L>) -> CycleSpaceElement<L> {
        let mut set = FixedBitSet::with_capacity(g.edge_count());
        for c in &self.circuits {
            set.symmetric_difference_with(&c.edges);
        }
        CycleSpaceElement::from_set(g, set)
    }
}

/// Whether `set` is the edge set of a cycle (a loop counts).
pub fn is_circuit<L: Length>(g: &WeightedGraph<L>, set: &FixedBitSet) -> Result<(), String> {
    let edges: Vec<usize> = set.ones().collect();
    order_cycle(g, &edges).map(|_| ()).map_err(|e| e.to_string())
}

/// Fundamental cycles of a breadth-first spanning forest; the non-tree
/// edges are taken in index order.
pub fn cycle_basis<L: Length>(g: &WeightedGraph<L>) -> Vec<CycleSpaceElement<L>> {
    let n = g.vertex_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = FixedBitSet::with_capacity(g.edge_count());
    for s in 0..n {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &e in g.incident(x) {
                let y = g.edge(e).other(x);
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some((e, x));
                    tree.insert(e);
                    q.push_back(y);
                }
            }
        }
    }
    let mut basis = Vec::new();
    for e in 0..g.edge_count() {
        if tree.contains(e) {
            continue;
        }
        let mut edges = vec![e];
        let (mut a, mut b) = (g.edge(e).u, g.edge(e).v);
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let (pe, pa) = parent[a].expect("non-root has a parent");
            edges.push(pe);
            a = pa;
        }
        basis.push(CycleSpaceElement::from_edges(g, &edges));
    }
    basis
}

/// Result of a thin sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinSum<L> {
    pub sum: CycleSpaceElement<L>,
    /// Occurrence count per edge id, for edges occurring at all.
    pub occurrences: BTreeMap<String, usize>,
    /// Total length of the family counted with multiplicity; finite for
    /// every finite family.
    pub total_length: L,
    pub thin: bool,
}

/// Sum of a family of circuits: the edges lying in an odd number of members.
pub fn thin_sum<L: Length>(g: &WeightedGraph<L>, fam: &CircuitFamily<L>) -> Result<ThinSum<L>, CycleError> {
    for (index, c) in fam.circuits.iter().enumerate() {
        is_circuit(g, &c.edges).map_err(|reason| CycleError::NotACircuit { index, reason })?;
    }
    let occ = fam.occurrences(g.edge_count());
    let occurrences = occ.iter().enumerate().filter(|(_, &k)| k > 0).map(|(e, &k)| (g.edge(e).id.clone(), k)).collect();
    Ok(ThinSum { sum: fam.fold(g), occurrences, total_length: fam.total_length(), thin: true })
}

/// Pairwise edge-disjoint cycles whose union is `z`. Peels from the lowest
/// remaining edge, always continuing along the lowest unused edge and
/// cutting off a cycle as soon as the walk revisits a vertex.
pub fn circuit_decomposition<L: Length>(g: &WeightedGraph<L>, z: &CycleSpaceElement<L>) -> Result<CircuitFamily<L>, CycleError> {
    z.check_even(g)?;
    let mut remaining = z.edges.clone();
    let mut circuits = Vec::new();
    while let Some(first) = remaining.ones().next() {
        let start = g.edge(first).u;
        // walk: vertices[i] --edges[i]--> vertices[i+1]
        let mut vertices = vec![start];
        let mut edges: Vec<usize> = Vec::new();
        let mut pos_of = vec![usize::MAX; g.vertex_count()];
        pos_of[start] = 0;
        let mut next_edge = Some(first);
        loop {
            let cur = *vertices.last().unwrap();
            let e = match next_edge.take() {
                Some(e) => e,
                None => g.incident(cur).iter().copied().find(|&e| remaining.contains(e)).expect("even degrees never strand the walk"),
            };
            remaining.set(e, false);
            let y = g.edge(e).other(cur);
            if pos_of[y] != usize::MAX {
                let p = pos_of[y];
                let mut cyc: Vec<usize> = edges.split_off(p);
                cyc.push(e);
                for v in vertices.drain(p + 1..) {
                    pos_of[v] = usize::MAX;
                }
                circuits.push(CycleSpaceElement::from_edges(g, &cyc));
                // back at the start with nothing left there: begin afresh
                if edges.is_empty() && g.incident(y).iter().all(|&f| !remaining.contains(f)) {
                    break;
                }
            } else {
                pos_of[y] = vertices.len();
                vertices.push(y);
                edges.push(e);
            }
        }
    }
    Ok(CircuitFamily { circuits })
}

/// One splitting step of [`geodetic_generate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Split<L> {
    pub parent: Vec<usize>,
    pub parent_length: L,
    pub x: usize,
    pub y: usize,
    pub path: Vec<usize>,
    pub children: Vec<Vec<usize>>,
    pub child_lengths: Vec<L>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodeticFamily<L> {
    pub family: CircuitFamily<L>,
    pub trace: Vec<Split<L>>,
}

/// Geodetic cycles summing to `z`.
///
/// `z` is decomposed into cycles; a cycle `C` that is not geodetic has
/// vertices `x, y` joined by a path `P` shorter than both arcs `A1, A2`, and
/// is replaced by the cycles of `A1 + P` and `A2 + P`. These sum to `C` and
/// each is strictly shorter than `C`, so the process ends. Cycles that end
/// up in the family an even number of times cancel.
pub fn geodetic_generate<L: Length>(g: &WeightedGraph<L>, z: &CycleSpaceElement<L>) -> Result<GeodeticFamily<L>, CycleError> {
    let dm = DistanceMatrix::new(g);
    geodetic_generate_with(g, z, &dm)
}

pub fn geodetic_generate_with<L: Length>(g: &WeightedGraph<L>, z: &CycleSpaceElement<L>, dm: &DistanceMatrix<L>) -> Result<GeodeticFamily<L>, CycleError> {
    let mut work: VecDeque<CycleSpaceElement<L>> = circuit_decomposition(g, z)?.circuits.into();
    let mut out: Vec<CycleSpaceElement<L>> = Vec::new();
    let mut trace = Vec::new();
    while let Some(c) = work.pop_front() {
        match is_geodetic_cycle_with(g, &c.edge_list(), dm)? {
            Geodecity::Geodetic => out.push(c),
            Geodecity::Violation { x, y, arcs, path, .. } => {
                let mut children = Vec::new();
                for arc in &arcs {
                    let mut both = arc.clone();
                    both.extend_from_slice(&path);
                    let part = CycleSpaceElement::from_edges(g, &both);
                    children.extend(circuit_decomposition(g, &part)?.circuits);
                }
                trace.push(Split {
                    parent: c.edge_list(),
                    parent_length: c.length.clone(),
                    x,
                    y,
                    path,
                    children: children.iter().map(|k| k.edge_list()).collect(),
                    child_lengths: children.iter().map(|k| k.length.clone()).collect(),
                });
                work.extend(children);
            }
        }
    }
    // cancel pairs of equal cycles, keeping first-occurrence order
    let mut keep: Vec<CycleSpaceElement<L>> = Vec::new();
    for c in out {
        match keep.iter().position(|k| k.edges == c.edges) {
            Some(p) => {
                keep.remove(p);
            }
            None => keep.push(c),
        }
    }
    Ok(GeodeticFamily { family: CircuitFamily { circuits: keep }, trace })
}

/// Every cycle of `g`, found among the elements of the cycle space.
/// Intended for small graphs: the space has `2^dim` elements.
pub fn all_cycles<L: Length>(g: &WeightedGraph<L>) -> Vec<CycleSpaceElement<L>> {
    let basis = cycle_basis(g);
    assert!(basis.len() <= 24, "cycle space too large to enumerate");
    let mut out = Vec::new();
    let mut cur = FixedBitSet::with_capacity(g.edge_count());
    // Gray code walk over all nonzero combinations
    for i in 1u64..(1u64 << basis.len()) {
        let flip = i.trailing_zeros() as usize;
        cur.symmetric_difference_with(&basis[flip].edges);
        if is_circuit(g, &cur).is_ok() {
            out.push(CycleSpaceElement::from_set(g, cur.clone()));
        }
    }
    out
}

/// Rank over GF(2) of a set of edge vectors.
pub fn gf2_rank(vectors: &[FixedBitSet]) -> usize {
    let mut rows: Vec<FixedBitSet> = vectors.to_vec();
    let mut rank = 0;
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].contains(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.contains(col) {
                row.symmetric_difference_with(&pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// `|E| - |V| + #components`.
pub fn cycle_space_dimension<L: Length>(g: &WeightedGraph<L>) -> usize {
    let comps = g.components().into_iter().max().map_or(0, |m| m + 1);
    g.edge_count() + comps - g.vertex_count()
}
