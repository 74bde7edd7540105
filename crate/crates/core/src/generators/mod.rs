//! Lazily generated infinite graphs, exposed through finite truncations.
//!
//! A generator emits its graph level by level: [`LazyGraph::emit`] returns
//! the vertices and edges that first appear at level `n`, and the truncation
//! `G_n` is the union of levels `0..=n`. Emitted edges never change length.
//! The frontier `F_n` consists of the vertices of `G_n` incident with an
//! edge of level `n + 1`.

mod antares;
mod basic;
mod fan;
mod hyperbolic;

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

pub use antares::Antares;
pub use basic::{BinaryTree, DoubleRay, Grid, LadderStrip};
pub use fan::Fan;
pub use hyperbolic::HyperbolicStrip;

use crate::completion::lind::{LindGraph, LindSample};
use crate::graph::{EdgeSpec, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("unknown generator {0}")]
    Unknown(String),
    #[error("generator {0} is not available")]
    Unavailable(String),
    #[error("bad parameter {param} for {generator}: {reason}")]
    BadParam { generator: String, param: String, reason: String },
    #[error("{0}")]
    Io(String),
}

/// Everything that first appears at one level.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Emission {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

impl Emission {
    pub fn vertex(&mut self, id: impl Into<String>) {
        self.vertices.push(id.into());
    }

    pub fn edge(&mut self, id: impl Into<String>, u: impl Into<String>, v: impl Into<String>, len: f64) {
        self.edges.push(EdgeSpec { id: id.into(), u: u.into(), v: v.into(), len });
    }

    pub fn length(&self) -> f64 {
        self.edges.iter().map(|e| e.len).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Summability {
    Converging { limit: Option<f64> },
    Diverging,
    Unknown,
}

/// What a generator declares about its lengths without enumerating them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Schedule {
    pub summability: Summability,
    /// A positive lower bound on every edge length, when one exists.
    pub min_length: Option<f64>,
}

/// A finite member of the exhaustion.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub level: usize,
    pub graph: WeightedGraph<f64>,
    pub frontier: Vec<usize>,
    /// Level at which each vertex was emitted.
    pub vertex_level: Vec<usize>,
    /// Level at which each edge was emitted.
    pub edge_level: Vec<usize>,
    /// True when the generator has nothing beyond this truncation.
    pub complete: bool,
}

impl Truncation {
    pub fn frontier_ids(&self) -> Vec<String> {
        self.frontier.iter().map(|&v| self.graph.vertex_id(v).to_string()).collect()
    }
}

pub trait LazyGraph: Send + Sync {
    fn name(&self) -> &'static str;

    /// Parameters as `(name, value)` pairs, in a fixed order.
    fn params(&self) -> Vec<(&'static str, String)>;

    /// Level `n`, or `None` once a finite generator is exhausted.
    fn emit(&self, n: usize) -> Option<Emission>;

    fn schedule(&self) -> Schedule;

    /// Natural basepoint for hop distances.
    fn basepoint(&self) -> Option<String> {
        None
    }

    /// Whether hop distances inside every truncation equal those of the
    /// whole graph, which holds when each `G_n` is a retract of `G_{n+1}`
    /// under a map that never stretches edges.
    fn hop_exact(&self) -> bool {
        false
    }

    /// Canonical `name?param=value&...` string.
    fn invocation(&self) -> String {
        let params = self.params();
        if params.is_empty() {
            return self.name().to_string();
        }
        let mut ser = form_urlencoded::Serializer::new(String::new());
        for (k, v) in params {
            ser.append_pair(k, &v);
        }
        format!("{}?{}", self.name(), ser.finish())
    }

    fn truncate(&self, n: usize) -> Truncation {
        default_truncate(self, n)
    }
}

pub(crate) fn default_truncate<G: LazyGraph + ?Sized>(gen: &G, n: usize) -> Truncation {
    let mut graph = WeightedGraph::new();
    let mut vertex_level = Vec::new();
    let mut edge_level = Vec::new();
    let mut complete = false;
    for k in 0..=n {
        let Some(em) = gen.emit(k) else {
            complete = true;
            break;
        };
        for v in em.vertices {
            graph.add_vertex(v).unwrap_or_else(|e| panic!("{} level {k}: {e}", gen.name()));
            vertex_level.push(k);
        }
        for e in em.edges {
            graph
                .add_edge(e.id, &e.u, &e.v, e.len)
                .unwrap_or_else(|err| panic!("{} level {k}: {err}", gen.name()));
            edge_level.push(k);
        }
    }
    let mut frontier = Vec::new();
    if !complete {
        match gen.emit(n + 1) {
            None => complete = true,
            Some(next) => {
                let mut seen = HashSet::new();
                for e in &next.edges {
                    for x in [&e.u, &e.v] {
                        if let Some(ix) = graph.vertex(x) {
                            if seen.insert(ix) {
                                frontier.push(ix);
                            }
                        }
                    }
                }
                frontier.sort_unstable();
            }
        }
    }
    Truncation { level: n, graph, frontier, vertex_level, edge_level, complete }
}

/// Per-level and partial sums of edge lengths plus the declared verdict.
#[derive(Debug, Clone, Serialize)]
pub struct LengthProfile {
    pub per_level: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub verdict: Summability,
}

pub fn length_profile(g: &dyn LazyGraph, n: usize) -> LengthProfile {
    let mut per_level = Vec::new();
    for k in 0..=n {
        match g.emit(k) {
            Some(em) => per_level.push(em.length()),
            None => break,
        }
    }
    let partial_sums = per_level
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    LengthProfile { per_level, partial_sums, verdict: g.schedule().summability }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamDoc {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub available: bool,
    pub doc: &'static str,
    pub params: Vec<ParamDoc>,
}

fn p(name: &'static str, default: &'static str, doc: &'static str) -> ParamDoc {
    ParamDoc { name, default, doc }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "ladder-strip",
            available: true,
            doc: "Ladder a_k, b_k; level k adds rung a_k b_k of length ratio^k and rails to level k-1 of length ratio^(k-1).",
            params: vec![p("ratio", "0.5", "geometric decay per rung")],
        },
        CatalogEntry {
            name: "double-ray",
            available: true,
            doc: "Double ray d_j; level k adds d_-k and d_k joined to their inner neighbours by edges of length ratio^(k-1).",
            params: vec![p("ratio", "0.5", "geometric decay per level")],
        },
        CatalogEntry {
            name: "hyperbolic-strip",
            available: true,
            doc: "Level i is a path P_i of 2^i unit edges; vertex j of P_(i-1) joins vertices 2j and 2j+1 of P_i.",
            params: vec![],
        },
        CatalogEntry {
            name: "antares",
            available: true,
            doc: "Wild circle: outer double ray L plus one double ray per binary string, joined by thin edges of length c*2^-level.",
            params: vec![p("c", "1", "thin edge scale"), p("s", "1.5", "total length of the thick double rays")],
        },
        CatalogEntry {
            name: "fan",
            available: true,
            doc: "Ray v_0 v_1 ... with hubs x and y joined to every v_k; hub edges have length leg^k, ray edges ray^k.",
            params: vec![p("leg", "0.5", "decay of hub edges"), p("ray", "0.5", "decay of ray edges")],
        },
        CatalogEntry {
            name: "grid",
            available: true,
            doc: "Quarter-plane grid; level n adds the vertices with max coordinate n, edges of length ratio^(n-1).",
            params: vec![p("ratio", "1", "decay per level")],
        },
        CatalogEntry {
            name: "binary-tree",
            available: true,
            doc: "Rooted binary tree; level n adds depth-n vertices, edges of length ratio^(n-1).",
            params: vec![p("ratio", "0.5", "decay per level")],
        },
        CatalogEntry {
            name: "lind",
            available: true,
            doc: "Columns of rays over a finite metric sample; row n holds the first n points, rows are joined by edges of length 2^-n.",
            params: vec![p("metric", "", "path to a sample metric json file")],
        },
        CatalogEntry {
            name: "monster-ltop",
            available: false,
            doc: "Not available: no numeric lengths are known for this family.",
            params: vec![],
        },
    ]
}

/// Split `name?k=v&...` into the name and decoded pairs.
pub fn parse_invocation(s: &str) -> (String, Vec<(String, String)>) {
    match s.split_once('?') {
        None => (s.to_string(), Vec::new()),
        Some((name, query)) => (
            name.to_string(),
            form_urlencoded::parse(query.as_bytes()).map(|(k, v)| (k.into_owned(), v.into_owned())).collect(),
        ),
    }
}

pub(crate) struct Params<'a> {
    generator: &'a str,
    pairs: Vec<(String, String)>,
}

impl Params<'_> {
    pub(crate) fn f64(&mut self, name: &str, default: f64) -> Result<f64, GenError> {
        match self.take(name) {
            None => Ok(default),
            Some(v) => v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| self.bad(name, "not a finite number")),
        }
    }

    pub(crate) fn take(&mut self, name: &str) -> Option<String> {
        let i = self.pairs.iter().position(|(k, _)| k == name)?;
        Some(self.pairs.remove(i).1)
    }

    pub(crate) fn bad(&self, name: &str, reason: &str) -> GenError {
        GenError::BadParam { generator: self.generator.to_string(), param: name.to_string(), reason: reason.to_string() }
    }

    fn finish(self) -> Result<(), GenError> {
        match self.pairs.first() {
            None => Ok(()),
            Some((k, _)) => Err(self.bad(k, "unknown parameter")),
        }
    }
}

/// Build a generator from its invocation string.
pub fn build(invocation: &str) -> Result<Box<dyn LazyGraph>, GenError> {
    let (name, pairs) = parse_invocation(invocation);
    let mut ps = Params { generator: &name, pairs };
    let g: Box<dyn LazyGraph> = match name.as_str() {
        "ladder-strip" => Box::new(LadderStrip::new(ps.f64("ratio", 0.5)?).map_err(|r| ps.bad("ratio", r))?),
        "double-ray" => Box::new(DoubleRay::new(ps.f64("ratio", 0.5)?).map_err(|r| ps.bad("ratio", r))?),
        "grid" => Box::new(Grid::new(ps.f64("ratio", 1.0)?).map_err(|r| ps.bad("ratio", r))?),
        "binary-tree" => Box::new(BinaryTree::new(ps.f64("ratio", 0.5)?).map_err(|r| ps.bad("ratio", r))?),
        "hyperbolic-strip" => Box::new(HyperbolicStrip),
        "fan" => {
            let (leg, ray) = (ps.f64("leg", 0.5)?, ps.f64("ray", 0.5)?);
            Box::new(Fan::new(leg, ray).map_err(|r| ps.bad("leg", r))?)
        }
        "antares" => {
            let (c, s) = (ps.f64("c", 1.0)?, ps.f64("s", 1.5)?);
            Box::new(Antares::new(c, s).map_err(|r| ps.bad("c", r))?)
        }
        "lind" => {
            let path = ps.take("metric").ok_or_else(|| ps.bad("metric", "required"))?;
            let text = std::fs::read_to_string(&path).map_err(|e| GenError::Io(format!("{path}: {e}")))?;
            let sample = LindSample::from_json(&text).map_err(|e| ps.bad("metric", &e.to_string()))?;
            Box::new(LindGraph::new(sample).map_err(|e| ps.bad("metric", &e.to_string()))?)
        }
        other => {
            return Err(match catalog().iter().find(|c| c.name == other) {
                Some(_) => GenError::Unavailable(other.to_string()),
                None => GenError::Unknown(other.to_string()),
            })
        }
    };
    ps.finish()?;
    Ok(g)
}

/// `base^k` as used by the geometric builders.
pub(crate) fn geometric(base: f64, k: usize) -> f64 {
    base.powi(k as i32)
}

pub(crate) fn check_ratio(r: f64) -> Result<f64, &'static str> {
    if r > 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err("must be positive")
    }
}

pub(crate) fn geometric_schedule(ratio: f64, terms_per_level: f64) -> Schedule {
    if ratio < 1.0 {
        Schedule {
            summability: Summability::Converging { limit: Some(terms_per_level / (1.0 - ratio)) },
            min_length: None,
        }
    } else {
        Schedule { summability: Summability::Diverging, min_length: Some(1.0) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn all_invocations() -> Vec<&'static str> {
        vec![
            "ladder-strip",
            "ladder-strip?ratio=1",
            "double-ray",
            "hyperbolic-strip",
            "antares",
            "fan",
            "fan?leg=1&ray=1",
            "grid",
            "binary-tree",
        ]
    }

    #[test]
    fn truncations_are_monotone_with_stable_lengths() {
        for inv in all_invocations() {
            let g = build(inv).unwrap();
            let mut prev = g.truncate(0);
            for n in 1..6 {
                let next = g.truncate(n);
                assert!(prev.graph.is_subgraph_of(&next.graph), "{inv} level {n}");
                prev = next;
            }
        }
    }

    #[test]
    fn frontier_touches_next_level() {
        for inv in all_invocations() {
            let g = build(inv).unwrap();
            for n in 0..5 {
                let t = g.truncate(n);
                let next = g.truncate(n + 1);
                let mut expect: Vec<usize> = (0..t.graph.vertex_count())
                    .filter(|&v| {
                        let id = t.graph.vertex_id(v);
                        let w = next.graph.vertex(id).unwrap();
                        next.graph.incident(w).iter().any(|&e| next.edge_level[e] == n + 1)
                    })
                    .collect();
                expect.sort_unstable();
                assert_eq!(t.frontier, expect, "{inv} level {n}");
                assert!(!t.frontier.is_empty());
            }
        }
    }

    #[test]
    fn invocation_round_trips() {
        for inv in all_invocations() {
            let g = build(inv).unwrap();
            let again = build(&g.invocation()).unwrap();
            assert_eq!(g.invocation(), again.invocation());
            assert_eq!(g.truncate(3).graph, again.truncate(3).graph);
        }
    }

    #[test]
    fn unknown_and_unavailable() {
        assert_eq!(build("nope").err(), Some(GenError::Unknown("nope".into())));
        assert_eq!(build("monster-ltop").err(), Some(GenError::Unavailable("monster-ltop".into())));
        assert!(matches!(build("fan?leg=x").err(), Some(GenError::BadParam { .. })));
        assert!(matches!(build("fan?bogus=1").err(), Some(GenError::BadParam { .. })));
        assert!(matches!(build("ladder-strip?ratio=0").err(), Some(GenError::BadParam { .. })));
    }

    #[test]
    fn constant_ladder_diverges_linearly() {
        let g = build("ladder-strip?ratio=1").unwrap();
        let prof = length_profile(g.as_ref(), 10);
        assert_eq!(prof.verdict, Summability::Diverging);
        assert_eq!(prof.per_level[0], 1.0);
        assert!(prof.per_level[1..].iter().all(|&x| x == 3.0));
        assert_eq!(prof.partial_sums[10], 31.0);
    }

    #[test]
    fn halving_ladder_converges_to_declared_limit() {
        let g = build("ladder-strip").unwrap();
        let prof = length_profile(g.as_ref(), 60);
        let Summability::Converging { limit: Some(lim) } = prof.verdict else { panic!() };
        assert!((prof.partial_sums[60] - lim).abs() < 1e-12);
    }

    #[test]
    fn catalog_lists_every_buildable_name() {
        for c in catalog() {
            if c.name == "lind" {
                continue;
            }
            assert_eq!(build(c.name).is_ok(), c.available, "{}", c.name);
        }
    }
}
