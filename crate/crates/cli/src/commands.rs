//! One function per subcommand. Each returns the echoed inputs and the
//! results; `run` wraps them in a report and writes everything at the end,
//! so a failing command leaves no output behind.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use ltop_core::completion::boundary::{boundary_profile, default_eps};
use ltop_core::completion::floyd::{floyd_lengths, hop_distances, Decay};
use ltop_core::completion::lind::{LindGraph, LindSample};
use ltop_core::completion::nst::nst_lengths;
use ltop_core::cyclespace::{cycle_basis, cycle_space_dimension, geodetic_generate, is_circuit, CycleSpaceElement, ElementReport};
use ltop_core::generators::{build, catalog, LazyGraph};
use ltop_core::length::{exact_f64, Length};
use ltop_core::linegraph::line_graph;
use ltop_core::metric::{dist, dist_limit, is_geodetic_cycle, quotient, DistanceResult, Point};
use ltop_core::tours::{euler_from_tour, euler_to_hamilton, euler_tour, hamilton_verify, Tour};
use ltop_core::WeightedGraph;
use num_rational::BigRational;

use crate::error::CliError;
use crate::report::{emit, resolve_out, Report};
use crate::{Cli, Command, GraphSource};

struct Outcome {
    inputs: Value,
    results: Value,
    /// Extra files beside the report, as `(path, contents)`.
    side: Vec<(PathBuf, Vec<u8>)>,
}

impl Outcome {
    fn new(inputs: Value, results: Value) -> Self {
        Outcome { inputs, results, side: Vec::new() }
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dist { .. } => "dist",
        Command::Quotient { .. } => "quotient",
        Command::Boundary { .. } => "boundary",
        Command::Floyd { .. } => "floyd",
        Command::Nst { .. } => "nst",
        Command::Lind { .. } => "lind",
        Command::Cyclebasis { .. } => "cyclebasis",
        Command::Geodetic { .. } => "geodetic",
        Command::Euler { .. } => "euler",
        Command::HamiltonFromEuler { .. } => "hamilton-from-euler",
        Command::Linegraph { .. } => "linegraph",
        Command::GenList => "gen-list",
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let name = command_name(&cli.command);
    let target = resolve_out(cli.out.as_deref(), name);
    let outcome = match &cli.command {
        Command::Dist { source, from, to, levels } => cmd_dist(source, from, to, levels.as_deref())?,
        Command::Quotient { generator, level, tau } => cmd_quotient(generator, *level, *tau)?,
        Command::Boundary { generator, floyd, basepoint, levels, depth, eps, csv } => {
            let mut o = cmd_boundary(generator, floyd.as_deref(), basepoint.as_deref(), levels, *depth, eps.as_deref())?;
            let csv_path = csv.clone().or_else(|| target.as_ref().map(|p| p.with_extension("csv")));
            if let Some(p) = csv_path {
                let text = o.results["csv"].as_str().expect("csv text").as_bytes().to_vec();
                o.side.push((p, text));
            }
            o
        }
        Command::Floyd { generator, decay, basepoint, level } => cmd_floyd(generator, decay, basepoint.as_deref(), *level)?,
        Command::Nst { source, root } => cmd_nst(source, root.as_deref())?,
        Command::Lind { metric, depth } => cmd_lind(metric, *depth)?,
        Command::Cyclebasis { source } => cmd_cyclebasis(source)?,
        Command::Geodetic { source, element } => cmd_geodetic(source, element)?,
        Command::Euler { source, log } => cmd_euler(source, *log)?,
        Command::HamiltonFromEuler { source, tour } => cmd_hamilton(source, tour.as_deref())?,
        Command::Linegraph { source } => cmd_linegraph(source)?,
        Command::GenList => Outcome::new(json!({}), json!({ "generators": catalog() })),
    };
    let report = Report::new(name, outcome.inputs, outcome.results, cli.seed);
    for (path, bytes) in &outcome.side {
        crate::report::write_atomic(path, bytes)?;
    }
    emit(target.as_deref(), &report.to_bytes())
}

fn read_file(path: &Path) -> Result<(String, String), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let digest: String = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    Ok((text, digest))
}

fn generator(invocation: &str) -> Result<Box<dyn LazyGraph>, CliError> {
    Ok(build(invocation)?)
}

/// Loads the finite graph and describes where it came from. Files are
/// identified by content hash so reports do not depend on paths.
fn load(source: &GraphSource) -> Result<(WeightedGraph<f64>, Value), CliError> {
    match (&source.graph, &source.generator, source.level) {
        (Some(_), Some(_), _) => Err(CliError::Inconsistent("--graph and --gen are mutually exclusive".into())),
        (Some(_), None, Some(_)) => Err(CliError::Inconsistent("--level only applies to --gen".into())),
        (Some(path), None, None) => {
            let (text, digest) = read_file(path)?;
            let g = WeightedGraph::from_json(&text)?;
            Ok((g, json!({ "graph_sha256": digest })))
        }
        (None, Some(_), None) => Err(CliError::Usage("--gen needs --level".into())),
        (None, Some(inv), Some(level)) => {
            let gen = generator(inv)?;
            let t = gen.truncate(level);
            Ok((t.graph, json!({ "gen": gen.invocation(), "level": level })))
        }
        (None, None, _) => Err(CliError::Usage("one of --graph or --gen is required".into())),
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

/// `edge:ID@OFFSET` or a vertex id.
fn parse_point(g: &WeightedGraph<f64>, s: &str) -> Result<Point<f64>, CliError> {
    if let Some(rest) = s.strip_prefix("edge:") {
        let (id, off) = rest.rsplit_once('@').ok_or_else(|| CliError::Usage(format!("point {s}: expected edge:ID@OFFSET")))?;
        let offset: f64 = off.parse().map_err(|_| CliError::Usage(format!("point {s}: offset {off} is not a number")))?;
        let edge = g.edge_or_err(id)?;
        let len = g.edge(edge).len;
        if !(offset > 0.0 && offset < len) {
            return Err(CliError::Inconsistent(format!("point {s}: offset must lie strictly between 0 and {len}")));
        }
        return Ok(Point::OnEdge { edge, offset });
    }
    Ok(Point::Vertex(g.vertex_or_err(s)?))
}

fn distance_json(g: &WeightedGraph<f64>, r: &DistanceResult<f64>) -> Value {
    json!({
        "value": r.value.finite(),
        "reachable": r.value.finite().is_some(),
        "witness": r.witness.iter().map(|s| json!({ "edge": g.edge(s.edge).id, "from": s.from, "to": s.to })).collect::<Vec<_>>(),
    })
}

fn cmd_dist(source: &GraphSource, from: &str, to: &str, levels: Option<&[usize]>) -> Result<Outcome, CliError> {
    let pts = json!({ "from": from, "to": to });
    if let Some(levels) = levels {
        let inv = match (&source.generator, &source.graph, source.level) {
            (Some(inv), None, None) => inv,
            _ => return Err(CliError::Inconsistent("--levels needs --gen and excludes --graph and --level".into())),
        };
        let gen = generator(inv)?;
        let rows = dist_limit(gen.as_ref(), from, to, levels);
        let inputs = merge(json!({ "gen": gen.invocation(), "levels": levels }), pts);
        return Ok(Outcome::new(inputs, json!({ "levels": rows })));
    }
    let (g, src) = load(source)?;
    let (x, y) = (parse_point(&g, from)?, parse_point(&g, to)?);
    let r = dist(&g, &x, &y)?;
    Ok(Outcome::new(merge(src, pts), distance_json(&g, &r)))
}

fn cmd_quotient(inv: &str, level: usize, tau: f64) -> Result<Outcome, CliError> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(CliError::Usage(format!("--tau must be positive, got {tau}")));
    }
    let gen = generator(inv)?;
    let q = quotient(gen.as_ref(), level, tau);
    let certified = q.separation_certified();
    Ok(Outcome::new(
        json!({ "gen": gen.invocation(), "level": level, "tau": tau }),
        json!({ "partition": q, "separation_certified": certified }),
    ))
}

fn with_floyd(base: Box<dyn LazyGraph>, decay: Option<&str>, basepoint: Option<&str>, deepest: usize) -> Result<Box<dyn LazyGraph>, CliError> {
    match decay {
        None => Ok(base),
        Some(d) => {
            let decay = Decay::parse(d)?;
            Ok(Box::new(floyd_lengths(base, basepoint, decay, deepest)?))
        }
    }
}

fn cmd_boundary(inv: &str, floyd: Option<&str>, basepoint: Option<&str>, levels: &[usize], depth: usize, eps: Option<&[f64]>) -> Result<Outcome, CliError> {
    if let Some(&max) = levels.iter().max() {
        if depth <= max {
            return Err(CliError::Inconsistent(format!("--depth {depth} must exceed every level (largest is {max})")));
        }
    }
    let eps = eps.map(<[f64]>::to_vec).unwrap_or_else(default_eps);
    let g = with_floyd(generator(inv)?, floyd, basepoint, depth)?;
    let profile = boundary_profile(g.as_ref(), levels, depth, &eps)?;
    let csv = profile.csv();
    let inputs = json!({
        "gen": g.invocation(),
        "floyd": floyd.map(|f| Decay::parse(f).expect("parsed above").name()),
        "levels": levels,
        "depth": depth,
        "eps": eps,
    });
    Ok(Outcome::new(inputs, json!({ "profile": profile, "csv": csv })))
}

fn cmd_floyd(inv: &str, decay: &str, basepoint: Option<&str>, level: usize) -> Result<Outcome, CliError> {
    let decay = Decay::parse(decay)?;
    let g = floyd_lengths(generator(inv)?, basepoint, decay, level)?;
    let t = g.truncate(level);
    let p = t.graph.vertex(g.basepoint_id()).expect("basepoint is in every truncation");
    let hops: BTreeMap<&str, Option<usize>> = hop_distances(&t.graph, p).into_iter().enumerate().map(|(v, h)| (t.graph.vertex_id(v), h)).collect();
    Ok(Outcome::new(
        json!({ "gen": inv, "decay": decay.name(), "basepoint": g.basepoint_id(), "level": level }),
        json!({
            "admissibility": g.admissibility(),
            "hops": hops,
            "total_length": t.graph.total_length(),
            "graph": t.graph.to_json_value(),
        }),
    ))
}

fn cmd_nst(source: &GraphSource, root: Option<&str>) -> Result<Outcome, CliError> {
    let (g, src) = load(source)?;
    let r = match root {
        Some(id) => g.vertex_or_err(id)?,
        None if g.vertex_count() > 0 => 0,
        None => return Err(CliError::Compute("graph has no vertices".into())),
    };
    let a = nst_lengths::<f64, f64>(&g, r)?;
    let relengthed = a.apply(&g);
    let levels: BTreeMap<&str, usize> = (0..g.vertex_count()).map(|v| (g.vertex_id(v), a.level[v])).collect();
    let lengths: BTreeMap<&str, f64> = g.edges().iter().zip(&a.lengths).map(|(e, &l)| (e.id.as_str(), l)).collect();
    Ok(Outcome::new(
        merge(src, json!({ "root": g.vertex_id(r) })),
        json!({
            "levels": levels,
            "tree_edges": a.tree_edges.iter().map(|&e| &g.edge(e).id).collect::<Vec<_>>(),
            "lengths": lengths,
            "graph": relengthed.to_json_value(),
        }),
    ))
}

fn cmd_lind(metric: &Path, depth: usize) -> Result<Outcome, CliError> {
    let (text, digest) = read_file(metric)?;
    let sample = LindSample::from_json(&text)?;
    let k = sample.len();
    if depth + 1 < k {
        return Err(CliError::Inconsistent(format!("--depth {depth} too small for {k} points; need at least {}", k - 1)));
    }
    let g = LindGraph::new(sample)?;
    let rows: Vec<Value> = g
        .column_distances(depth)
        .into_iter()
        .map(|(i, j, dx, deep)| {
            let pts = &g.sample().points;
            json!({ "a": pts[i], "b": pts[j], "d_x": dx, "distance": deep, "deviation": (deep - dx).abs() })
        })
        .collect();
    let worst = rows.iter().filter_map(|r| r["deviation"].as_f64()).fold(0.0f64, f64::max);
    Ok(Outcome::new(json!({ "metric_sha256": digest, "depth": depth }), json!({ "pairs": rows, "max_deviation": worst })))
}

fn cmd_cyclebasis(source: &GraphSource) -> Result<Outcome, CliError> {
    let (g, src) = load(source)?;
    let basis: Vec<ElementReport> = cycle_basis(&g).iter().map(|b| ElementReport::new(&g, b)).collect();
    Ok(Outcome::new(src, json!({ "dimension": cycle_space_dimension(&g), "basis": basis })))
}

fn exact(g: &WeightedGraph<f64>) -> WeightedGraph<BigRational> {
    g.map_lengths(|e| exact_f64(e.len).expect("validated lengths are finite")).expect("lengths stay positive")
}

fn cmd_geodetic(source: &GraphSource, element: &[String]) -> Result<Outcome, CliError> {
    let (g, src) = load(source)?;
    // exact arithmetic, so that ties between paths and arcs are decided exactly
    let q = exact(&g);
    let z = CycleSpaceElement::from_ids(&q, element)?;
    let fam = geodetic_generate(&q, &z)?;
    let ids = |es: &[usize]| es.iter().map(|&e| q.edge(e).id.clone()).collect::<Vec<_>>();
    let members: Vec<Value> = fam
        .family
        .circuits
        .iter()
        .map(|c| {
            let geodetic = is_circuit(&q, &c.edges).is_ok() && is_geodetic_cycle(&q, &c.edge_list()).map(|d| d.is_geodetic()).unwrap_or(false);
            json!({ "edges": c.ids(&q), "length": c.length.to_f64(), "geodetic": geodetic })
        })
        .collect();
    let trace: Vec<Value> = fam
        .trace
        .iter()
        .map(|s| {
            json!({
                "parent": ids(&s.parent),
                "parent_length": s.parent_length.to_f64(),
                "x": q.vertex_id(s.x),
                "y": q.vertex_id(s.y),
                "path": ids(&s.path),
                "children": s.children.iter().map(|c| ids(c)).collect::<Vec<_>>(),
                "child_lengths": s.child_lengths.iter().map(Length::to_f64).collect::<Vec<_>>(),
            })
        })
        .collect();
    let sum_ok = fam.family.fold(&q).edges == z.edges;
    Ok(Outcome::new(
        merge(src, json!({ "element": element })),
        json!({ "element_length": z.length.to_f64(), "family": members, "sums_to_element": sum_ok, "trace": trace }),
    ))
}

fn cmd_euler(source: &GraphSource, log: bool) -> Result<Outcome, CliError> {
    let (g, src) = load(source)?;
    let t = euler_tour(&g)?;
    let mut results = json!({
        "tour": t.to_tour(&g),
        "vertices": t.vertices.iter().map(|&v| g.vertex_id(v)).collect::<Vec<_>>(),
    });
    if log {
        results["log"] = json!(t.log);
    }
    Ok(Outcome::new(merge(src, json!({ "log": log })), results))
}

fn cmd_hamilton(source: &GraphSource, tour: Option<&Path>) -> Result<Outcome, CliError> {
    let (g, src) = load(source)?;
    let (edges, start, tour_digest) = match tour {
        Some(path) => {
            let (text, digest) = read_file(path)?;
            let t: Tour = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            let (edges, start) = euler_from_tour(&g, &t)?;
            (edges, start, Some(digest))
        }
        None => {
            let t = euler_tour(&g)?;
            (t.edges, t.start, None)
        }
    };
    let euler = Tour::Euler { edges: edges.iter().map(|&e| g.edge(e).id.clone()).collect(), start: g.vertex_id(start).to_string() };
    let h = euler_to_hamilton(&g, &edges, start)?;
    let verdict = hamilton_verify(&h.line_graph, &h.vertices);
    Ok(Outcome::new(
        merge(src, json!({ "tour_sha256": tour_digest })),
        json!({
            "euler": euler,
            "hamilton": h.to_tour(),
            "line_graph_edges": h.edges,
            "length": h.length,
            "total_length": g.total_length(),
            "verdict": verdict,
        }),
    ))
}

fn cmd_linegraph(source: &GraphSource) -> Result<Outcome, CliError> {
    let (g, src) = load(source)?;
    let l = line_graph(&g)?;
    Ok(Outcome::new(src, json!({ "graph": l.to_json_value() })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph() -> WeightedGraph<f64> {
        WeightedGraph::from_edges(2, &[(0, 1, 2.0)]).unwrap()
    }

    #[test]
    fn points_parse() {
        let g = path_graph();
        let e = g.edge(0).id.clone();
        assert_eq!(parse_point(&g, g.vertex_id(1)).unwrap(), Point::Vertex(1));
        assert_eq!(parse_point(&g, &format!("edge:{e}@0.5")).unwrap(), Point::OnEdge { edge: 0, offset: 0.5 });
        assert_eq!(parse_point(&g, &format!("edge:{e}@2")).unwrap_err().code(), 5);
        assert_eq!(parse_point(&g, &format!("edge:{e}")).unwrap_err().code(), 2);
        assert_eq!(parse_point(&g, "edge:nope@1").unwrap_err().code(), 5);
    }

    #[test]
    fn graph_source_flags() {
        let s = |graph: Option<&str>, gen: Option<&str>, level| GraphSource { graph: graph.map(PathBuf::from), generator: gen.map(String::from), level };
        assert_eq!(load(&s(None, None, None)).unwrap_err().code(), 2);
        assert_eq!(load(&s(None, Some("fan"), None)).unwrap_err().code(), 2);
        assert_eq!(load(&s(Some("g.json"), Some("fan"), Some(1))).unwrap_err().code(), 5);
        let (g, inputs) = load(&s(None, Some("fan"), Some(2))).unwrap();
        assert!(g.vertex_count() > 0);
        assert_eq!(inputs["level"], 2);
    }
}
