//! The length metric: shortest-path distances between vertices and points
//! inside edges, limits over exhaustions, tolerance-stamped quotients,
//! geodecity of cycles, midpoints and curve lengths.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;
use thiserror::Error;

use crate::generators::LazyGraph;
use crate::graph::{GraphError, WeightedGraph};
use crate::length::Length;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("offset on edge {edge} must lie strictly inside the edge")]
    BadOffset { edge: String },
    #[error("points are in different components")]
    Disconnected,
    #[error("edge set is not a cycle: {0}")]
    NotACycle(String),
}

/// A point of the graph viewed as a 1-complex.
#[derive(Debug, Clone, PartialEq)]
pub enum Point<L> {
    Vertex(usize),
    /// `offset` is measured from the edge's `u` end.
    OnEdge { edge: usize, offset: L },
}

/// A distance, with unreachability as an explicit value.
#[derive(Debug, Clone, PartialEq)]
pub enum Distance<L> {
    Finite(L),
    Infinite,
}

impl<L: Length> Distance<L> {
    pub fn finite(&self) -> Option<&L> {
        match self {
            Distance::Finite(x) => Some(x),
            Distance::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.finite().map_or(f64::INFINITY, L::to_f64)
    }
}

/// A piece of an edge traversed from offset `from` to offset `to`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment<L> {
    pub edge: usize,
    pub from: L,
    pub to: L,
}

impl<L: Length> Segment<L> {
    pub fn length(&self) -> L {
        self.from.abs_diff(&self.to)
    }

    fn full(g: &WeightedGraph<L>, edge: usize, start: usize) -> Self {
        let e = g.edge(edge);
        if e.u == start {
            Segment { edge, from: L::zero(), to: e.len.clone() }
        } else {
            Segment { edge, from: e.len.clone(), to: L::zero() }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceResult<L> {
    pub value: Distance<L>,
    /// Consecutive pieces of a path realizing `value`; empty when the points
    /// coincide or are unreachable.
    pub witness: Vec<Segment<L>>,
}

impl<L: Length> DistanceResult<L> {
    pub fn witness_length(&self) -> L {
        crate::length::sum(self.witness.iter().map(Segment::length))
    }

    /// Edges of the witness in traversal order.
    pub fn witness_edges(&self) -> Vec<usize> {
        self.witness.iter().map(|s| s.edge).collect()
    }
}

struct Entry<L> {
    d: L,
    v: usize,
}

impl<L: Length> PartialEq for Entry<L> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<L: Length> Eq for Entry<L> {}
impl<L: Length> PartialOrd for Entry<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<L: Length> Ord for Entry<L> {
    // reversed so the std max-heap pops the nearest vertex first
    fn cmp(&self, other: &Self) -> Ordering {
        other.d.cmp_len(&self.d).then_with(|| other.v.cmp(&self.v))
    }
}

/// Result of a multi-source Dijkstra run.
#[derive(Debug, Clone)]
pub struct ShortestPaths<L> {
    pub dist: Vec<Option<L>>,
    /// `(edge, previous vertex)` on a shortest path; `None` at seeds.
    pub pred: Vec<Option<(usize, usize)>>,
    /// Seed index that each settled vertex was reached from.
    pub origin: Vec<Option<usize>>,
}

impl<L: Length> ShortestPaths<L> {
    /// Edges from the seed to `v`, in traversal order, as `(edge, from)`.
    pub fn path_to(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some((e, prev)) = self.pred[cur] {
            out.push((e, prev));
            cur = prev;
        }
        out.reverse();
        out
    }
}

/// Dijkstra from weighted seeds.
///
/// Stops early once every vertex in `targets` is settled (if `targets` is
/// nonempty) and never settles vertices beyond `limit`. Among equally short
/// predecessors the edge with the smaller id wins, so witnesses are
/// deterministic.
pub fn shortest_paths<L: Length>(
    g: &WeightedGraph<L>,
    seeds: &[(usize, L)],
    targets: &[usize],
    limit: Option<&L>,
) -> ShortestPaths<L> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<L>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut origin = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for (i, (v, d)) in seeds.iter().enumerate() {
        let better = dist[*v].as_ref().is_none_or(|cur| d.cmp_len(cur) == Ordering::Less);
        if better {
            dist[*v] = Some(d.clone());
            origin[*v] = Some(i);
            heap.push(Entry { d: d.clone(), v: *v });
        }
    }
    let mut remaining = targets.len();
    let mut is_target = vec![false; if targets.is_empty() { 0 } else { n }];
    for &t in targets {
        if !is_target[t] {
            is_target[t] = true;
        } else {
            remaining -= 1;
        }
    }
    while let Some(Entry { d, v }) = heap.pop() {
        if done[v] {
            continue;
        }
        if dist[v].as_ref().is_some_and(|cur| cur.cmp_len(&d) == Ordering::Less) {
            continue;
        }
        done[v] = true;
        if !is_target.is_empty() && is_target[v] {
            remaining -= 1;
            if remaining == 0 {
                break;
            }
        }
        for &e in g.incident(v) {
            let edge = g.edge(e);
            let w = edge.other(v);
            if done[w] {
                continue;
            }
            let nd = d.clone() + edge.len.clone();
            if limit.is_some_and(|lim| lim.cmp_len(&nd) == Ordering::Less) {
                continue;
            }
            let take = match &dist[w] {
                None => true,
                Some(cur) => match nd.cmp_len(cur) {
                    Ordering::Less => true,
                    Ordering::Equal => pred[w].is_some_and(|(pe, _): (usize, usize)| edge.id < g.edge(pe).id),
                    Ordering::Greater => false,
                },
            };
            if take {
                let improved = dist[w].as_ref().is_none_or(|cur| nd.cmp_len(cur) == Ordering::Less);
                dist[w] = Some(nd.clone());
                pred[w] = Some((e, v));
                origin[w] = origin[v];
                if improved {
                    heap.push(Entry { d: nd, v: w });
                }
            }
        }
    }
    ShortestPaths { dist, pred, origin }
}

/// Distances from one vertex to all others.
pub fn single_source<L: Length>(g: &WeightedGraph<L>, s: usize) -> Vec<Option<L>> {
    shortest_paths(g, &[(s, L::zero())], &[], None).dist
}

/// All-pairs vertex distances; `None` marks unreachable pairs.
#[derive(Debug, Clone)]
pub struct DistanceMatrix<L> {
    pub rows: Vec<Vec<Option<L>>>,
}

impl<L: Length> DistanceMatrix<L> {
    pub fn new(g: &WeightedGraph<L>) -> Self {
        DistanceMatrix { rows: (0..g.vertex_count()).map(|s| single_source(g, s)).collect() }
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&L> {
        self.rows[x][y].as_ref()
    }
}

fn check_point<L: Length>(g: &WeightedGraph<L>, p: &Point<L>) -> Result<(), MetricError> {
    match p {
        Point::Vertex(v) if *v < g.vertex_count() => Ok(()),
        Point::Vertex(v) => Err(GraphError::UnknownVertex(format!("#{v}")).into()),
        Point::OnEdge { edge, offset } => {
            if *edge >= g.edge_count() {
                return Err(GraphError::UnknownEdge(format!("#{edge}")).into());
            }
            let e = g.edge(*edge);
            if offset.is_positive() && offset.clearly_lt(&e.len) {
                Ok(())
            } else {
                Err(MetricError::BadOffset { edge: e.id.clone() })
            }
        }
    }
}

/// Vertices a point attaches to, with the connecting segment oriented away
/// from the point (`outgoing`) or towards it.
fn attachments<L: Length>(g: &WeightedGraph<L>, p: &Point<L>, outgoing: bool) -> Vec<(usize, L, Option<Segment<L>>)> {
    match p {
        Point::Vertex(v) => vec![(*v, L::zero(), None)],
        Point::OnEdge { edge, offset } => {
            let e = g.edge(*edge);
            let to_u = offset.clone();
            let to_v = e.len.clone() - offset.clone();
            let seg = |end: L| {
                if outgoing {
                    Segment { edge: *edge, from: offset.clone(), to: end }
                } else {
                    Segment { edge: *edge, from: end, to: offset.clone() }
                }
            };
            let a = (e.u, to_u, Some(seg(L::zero())));
            let b = (e.v, to_v, Some(seg(e.len.clone())));
            if e.is_loop() {
                vec![if b.1.cmp_len(&a.1) == Ordering::Less { b } else { a }]
            } else {
                vec![a, b]
            }
        }
    }
}

/// Exact shortest-path distance between two points, with a witness path.
pub fn dist<L: Length>(g: &WeightedGraph<L>, x: &Point<L>, y: &Point<L>) -> Result<DistanceResult<L>, MetricError> {
    check_point(g, x)?;
    check_point(g, y)?;
    let sources = attachments(g, x, true);
    let sinks = attachments(g, y, false);
    let seeds: Vec<(usize, L)> = sources.iter().map(|(v, d, _)| (*v, d.clone())).collect();
    let targets: Vec<usize> = sinks.iter().map(|(v, _, _)| *v).collect();
    let sp = shortest_paths(g, &seeds, &targets, None);

    let mut best: Option<(L, Vec<Segment<L>>)> = None;
    let mut consider = |len: L, witness: &dyn Fn() -> Vec<Segment<L>>| {
        if best.as_ref().is_none_or(|(b, _)| len.cmp_len(b) == Ordering::Less) {
            best = Some((len, witness()));
        }
    };
    if let (Point::OnEdge { edge: e1, offset: t1 }, Point::OnEdge { edge: e2, offset: t2 }) = (x, y) {
        if e1 == e2 {
            consider(t1.abs_diff(t2), &|| vec![Segment { edge: *e1, from: t1.clone(), to: t2.clone() }]);
        }
    }
    for (w, extra, tail) in &sinks {
        let Some(d) = &sp.dist[*w] else { continue };
        let total = d.clone() + extra.clone();
        consider(total, &|| {
            let mut segs = Vec::new();
            if let Some(o) = sp.origin[*w] {
                if let Some(head) = &sources[o].2 {
                    segs.push(head.clone());
                }
            }
            for (e, from) in sp.path_to(*w) {
                segs.push(Segment::full(g, e, from));
            }
            if let Some(t) = tail {
                segs.push(t.clone());
            }
            segs
        });
    }
    Ok(match best {
        None => DistanceResult { value: Distance::Infinite, witness: Vec::new() },
        Some((d, w)) => {
            let witness = if x == y { Vec::new() } else { w };
            DistanceResult { value: Distance::Finite(d), witness }
        }
    })
}

/// Distance between two vertices given by id.
pub fn dist_ids<L: Length>(g: &WeightedGraph<L>, x: &str, y: &str) -> Result<DistanceResult<L>, MetricError> {
    let (x, y) = (g.vertex_or_err(x)?, g.vertex_or_err(y)?);
    dist(g, &Point::Vertex(x), &Point::Vertex(y))
}

/// Distance at one level of an exhaustion.
#[derive(Debug, Clone, Serialize)]
pub struct LevelDistance {
    pub level: usize,
    /// `None` when unreachable or skipped.
    pub value: Option<f64>,
    pub witness: Vec<String>,
    pub note: Option<String>,
}

/// Distances between two vertices in successive truncations. The sequence
/// is nonincreasing since every truncation contains the previous one.
pub fn dist_limit(g: &dyn LazyGraph, x: &str, y: &str, levels: &[usize]) -> Vec<LevelDistance> {
    levels
        .iter()
        .map(|&level| {
            let t = g.truncate(level);
            match dist_ids(&t.graph, x, y) {
                Err(e) => LevelDistance { level, value: None, witness: Vec::new(), note: Some(format!("skipped: {e}")) },
                Ok(r) => LevelDistance {
                    level,
                    value: r.value.finite().copied(),
                    witness: r.witness.iter().map(|s| t.graph.edge(s.edge).id.clone()).collect(),
                    note: r.value.finite().is_none().then(|| "unreachable".to_string()),
                },
            }
        })
        .collect()
}

/// Vertex classes of a truncation at a distance tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientPartition {
    pub level: usize,
    pub tau: f64,
    pub classes: Vec<Vec<String>>,
    /// Per class: some pair of members got strictly closer one level deeper.
    pub shrinking: Vec<bool>,
    /// A positive lower bound on the distance between any two distinct
    /// vertices of the whole graph, when the generator declares one; if it
    /// exceeds `tau`, separation of distinct classes is certified.
    pub separation_bound: Option<f64>,
}

impl QuotientPartition {
    pub fn class_of(&self, id: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.iter().any(|v| v == id))
    }

    pub fn separation_certified(&self) -> bool {
        self.separation_bound.is_some_and(|b| b > self.tau)
    }
}

/// Transitive closure of "distance at most `tau` in `G_level`".
pub fn quotient(g: &dyn LazyGraph, level: usize, tau: f64) -> QuotientPartition {
    assert!(tau > 0.0, "tolerance must be positive");
    let t = g.truncate(level);
    let deeper = g.truncate(level + 1);
    let graph = &t.graph;
    let n = graph.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for s in 0..n {
        let sp = shortest_paths(graph, &[(s, 0.0)], &[], Some(&tau));
        for (w, d) in sp.dist.iter().enumerate() {
            if d.is_some() {
                let (a, b) = (find(&mut parent, s), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut class_index = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        if class_index[r] == usize::MAX {
            class_index[r] = members.len();
            members.push(Vec::new());
        }
        members[class_index[r]].push(v);
    }
    let shrinking = members
        .iter()
        .map(|class| {
            class.len() > 1
                && class.iter().any(|&a| {
                    let here = single_source(graph, a);
                    let da = deeper.graph.vertex(graph.vertex_id(a)).expect("monotone");
                    let there = single_source(&deeper.graph, da);
                    class.iter().any(|&b| {
                        let db = deeper.graph.vertex(graph.vertex_id(b)).expect("monotone");
                        match (&here[b], &there[db]) {
                            (Some(x), Some(y)) => y.clearly_lt(x),
                            (None, Some(_)) => true,
                            _ => false,
                        }
                    })
                })
        })
        .collect();
    QuotientPartition {
        level,
        tau,
        classes: members.iter().map(|c| c.iter().map(|&v| graph.vertex_id(v).to_string()).collect()).collect(),
        shrinking,
        separation_bound: g.schedule().min_length,
    }
}

/// A cycle given in traversal order: edge `edges[i]` joins `vertices[i]`
/// and `vertices[(i+1) % k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleOrder {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Order the edges of a simple cycle, starting at its smallest edge.
pub fn order_cycle<L: Length>(g: &WeightedGraph<L>, edges: &[usize]) -> Result<CycleOrder, MetricError> {
    let mut es = edges.to_vec();
    es.sort_unstable();
    es.dedup();
    if es.is_empty() {
        return Err(MetricError::NotACycle("empty".into()));
    }
    if es.len() != edges.len() {
        return Err(MetricError::NotACycle("repeated edge".into()));
    }
    if let Some(&e) = es.iter().find(|&&e| e >= g.edge_count()) {
        return Err(GraphError::UnknownEdge(format!("#{e}")).into());
    }
    let mut deg = std::collections::HashMap::new();
    for &e in &es {
        let ed = g.edge(e);
        *deg.entry(ed.u).or_insert(0) += 1;
        *deg.entry(ed.v).or_insert(0) += 1;
    }
    if let Some((&v, _)) = deg.iter().filter(|(_, &d)| d != 2).min_by_key(|(&v, _)| v) {
        return Err(MetricError::NotACycle(format!("vertex {} has degree {}", g.vertex_id(v), deg[&v])));
    }
    let first = g.edge(es[0]);
    let mut order = CycleOrder { vertices: vec![first.u], edges: vec![es[0]] };
    let mut used = vec![false; es.len()];
    used[0] = true;
    let mut cur = first.v;
    while cur != first.u {
        let next = es
            .iter()
            .enumerate()
            .find(|(i, &e)| !used[*i] && (g.edge(e).u == cur || g.edge(e).v == cur))
            .map(|(i, &e)| (i, e));
        let Some((i, e)) = next else {
            return Err(MetricError::NotACycle("not closed".into()));
        };
        used[i] = true;
        order.vertices.push(cur);
        order.edges.push(e);
        cur = g.edge(e).other(cur);
    }
    if used.iter().any(|u| !u) {
        return Err(MetricError::NotACycle("disconnected".into()));
    }
    Ok(order)
}

/// Outcome of a geodecity test.
#[derive(Debug, Clone, PartialEq)]
pub enum Geodecity<L> {
    Geodetic,
    /// Vertices `x, y` on the cycle whose distance is strictly below both
    /// arcs between them; `path` is a shortest `x`-`y` path.
    Violation { x: usize, y: usize, arcs: [Vec<usize>; 2], arc_lengths: [L; 2], path: Vec<usize>, distance: L },
}

impl<L> Geodecity<L> {
    pub fn is_geodetic(&self) -> bool {
        matches!(self, Geodecity::Geodetic)
    }
}

/// Whether for every pair of cycle vertices the shorter arc realizes their
/// distance in `g`.
pub fn is_geodetic_cycle<L: Length>(g: &WeightedGraph<L>, cycle: &[usize]) -> Result<Geodecity<L>, MetricError> {
    let order = order_cycle(g, cycle)?;
    let rows: Vec<Vec<Option<L>>> = order.vertices.iter().map(|&v| single_source(g, v)).collect();
    Ok(geodecity_with(g, &order, |i, y| rows[i][y].clone()))
}

/// Geodecity test with distances from a precomputed matrix.
pub fn is_geodetic_cycle_with<L: Length>(g: &WeightedGraph<L>, cycle: &[usize], dm: &DistanceMatrix<L>) -> Result<Geodecity<L>, MetricError> {
    let order = order_cycle(g, cycle)?;
    Ok(geodecity_with(g, &order, |i, y| dm.get(order.vertices[i], y).cloned()))
}

fn geodecity_with<L: Length>(g: &WeightedGraph<L>, order: &CycleOrder, d: impl Fn(usize, usize) -> Option<L>) -> Geodecity<L> {
    let k = order.vertices.len();
    // prefix[i] = length of the arc vertices[0] .. vertices[i]
    let mut prefix = vec![L::zero()];
    for &e in &order.edges {
        let last = prefix.last().unwrap().clone();
        prefix.push(last + g.edge(e).len.clone());
    }
    let total = prefix[k].clone();
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (order.vertices[i], order.vertices[j]);
            let a = prefix[j].clone() - prefix[i].clone();
            let b = total.clone() - a.clone();
            let shorter = a.clone().min_len(b.clone());
            let dxy = d(i, y).expect("cycle vertices are connected");
            if dxy.clearly_lt(&shorter) {
                let path = match dist(g, &Point::Vertex(x), &Point::Vertex(y)) {
                    Ok(r) => r.witness_edges(),
                    Err(_) => unreachable!("vertices are valid"),
                };
                let arc_a = order.edges[i..j].to_vec();
                let arc_b = order.edges[j..].iter().chain(&order.edges[..i]).copied().collect();
                return Geodecity::Violation { x, y, arcs: [arc_a, arc_b], arc_lengths: [a, b], path, distance: dxy };
            }
        }
    }
    Geodecity::Geodetic
}

/// A midpoint together with its two distances.
#[derive(Debug, Clone, PartialEq)]
pub struct Midpoint<L> {
    pub point: Point<L>,
    /// Length of the path the point was taken from.
    pub path_length: L,
}

/// A point `z` on a shortest `x`-`y` path with `d(x,z) = d(z,y) = d(x,y)/2`.
///
/// The path is an exact shortest path, so the returned point satisfies the
/// midpoint conditions with slack `eps` for every `eps >= 0` (up to float
/// rounding when `L = f64`).
pub fn approximate_midpoint<L: Length>(g: &WeightedGraph<L>, x: &Point<L>, y: &Point<L>, eps: f64) -> Result<Midpoint<L>, MetricError> {
    assert!(eps >= 0.0, "eps must be nonnegative");
    let r = dist(g, x, y)?;
    let Distance::Finite(h) = r.value else {
        return Err(MetricError::Disconnected);
    };
    if r.witness.is_empty() {
        return Ok(Midpoint { point: x.clone(), path_length: h });
    }
    let target = h.half();
    let mut acc = L::zero();
    for seg in &r.witness {
        let len = seg.length();
        let end = acc.clone() + len.clone();
        if target.cmp_len(&end) != Ordering::Greater {
            let into = target - acc;
            let offset = if seg.from.cmp_len(&seg.to) != Ordering::Greater { seg.from.clone() + into } else { seg.from.clone() - into };
            return Ok(Midpoint { point: normalize(g, seg.edge, offset), path_length: h });
        }
        acc = end;
    }
    let last = r.witness.last().unwrap();
    Ok(Midpoint { point: normalize(g, last.edge, last.to.clone()), path_length: h })
}

/// Turns an edge offset at an end into the vertex there.
pub fn normalize<L: Length>(g: &WeightedGraph<L>, edge: usize, offset: L) -> Point<L> {
    let e = g.edge(edge);
    if !offset.is_positive() {
        Point::Vertex(e.u)
    } else if !offset.clearly_lt(&e.len) {
        Point::Vertex(e.v)
    } else {
        Point::OnEdge { edge, offset }
    }
}

/// Sum of distances between consecutive sample points, a lower bound for
/// the length of any curve through them in this order. With `closed` the
/// last point is joined back to the first.
pub fn curve_length<L: Length>(g: &WeightedGraph<L>, samples: &[Point<L>], closed: bool) -> Result<Distance<L>, MetricError> {
    let mut total = L::zero();
    let pairs = samples.windows(2).map(|w| (&w[0], &w[1]));
    let wrap = (closed && samples.len() > 1).then(|| (&samples[samples.len() - 1], &samples[0]));
    for (a, b) in pairs.chain(wrap) {
        match dist(g, a, b)?.value {
            Distance::Finite(d) => total = total + d,
            Distance::Infinite => return Ok(Distance::Infinite),
        }
    }
    Ok(Distance::Finite(total))
}

/// One row of the small-tail diagnostic.
#[derive(Debug, Clone, Serialize)]
pub struct TailRow {
    pub eps: f64,
    /// Least level `n` such that any two vertices joined outside `G_n`
    /// are closer than `eps` (measured in `G_depth`).
    pub level: Option<usize>,
}

/// For each level `n <= max_level`, the largest `G_depth`-distance between
/// two vertices in one component of `G_depth - V(G_n)`.
pub fn tail_diameters(g: &dyn LazyGraph, max_level: usize, depth: usize) -> Vec<f64> {
    assert!(depth > max_level, "depth must exceed the levels");
    let deep = g.truncate(depth);
    let graph = &deep.graph;
    (0..=max_level)
        .map(|n| {
            let inside = |v: usize| deep.vertex_level[v] <= n;
            let comp = graph.components_avoiding(inside, |_| false);
            let mut worst = 0.0f64;
            for v in 0..graph.vertex_count() {
                if comp[v] == usize::MAX {
                    continue;
                }
                let d = single_source(graph, v);
                for w in 0..graph.vertex_count() {
                    if comp[w] == comp[v] {
                        worst = worst.max(d[w].unwrap_or(f64::INFINITY));
                    }
                }
            }
            worst
        })
        .collect()
}

/// The least level whose tail diameter drops below each `eps`. The reported
/// level is nonincreasing in `eps` by construction.
pub fn small_tail_report(g: &dyn LazyGraph, max_level: usize, depth: usize, eps: &[f64]) -> Vec<TailRow> {
    let diam = tail_diameters(g, max_level, depth);
    eps.iter().map(|&e| TailRow { eps: e, level: diam.iter().position(|&d| d < e) }).collect()
}
