//! Finite comb/star extraction for a vertex sequence.
//!
//! Consecutive sequence vertices are joined by shortest paths in a
//! truncation; a breadth-first spanning tree `T` of the union of these paths
//! is then searched for the best star (a center with many branches reaching
//! the sequence) and the best comb (a spine whose vertices carry many
//! disjoint teeth ending in the sequence). A finite search cannot decide the
//! infinite dichotomy, so a result below the requested size is reported as
//! inconclusive instead of guessed.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::generators::LazyGraph;
use crate::graph::WeightedGraph;
use crate::metric::shortest_paths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CombKind {
    Comb,
    Star,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombOrStar {
    pub kind: CombKind,
    /// Spine of a comb, in order.
    pub spine: Vec<String>,
    /// Center of a star.
    pub center: Option<String>,
    /// Teeth (first vertex on the spine) or leaf paths (first vertex the
    /// center); each ends at a sequence vertex.
    pub paths: Vec<Vec<String>>,
    /// Truncation level searched.
    pub budget_used: usize,
    pub star_score: usize,
    pub comb_score: usize,
    pub diagnostics: Vec<String>,
}

impl CombOrStar {
    fn inconclusive(budget: usize, diagnostics: Vec<String>) -> Self {
        CombOrStar {
            kind: CombKind::Inconclusive,
            spine: Vec::new(),
            center: None,
            paths: Vec::new(),
            budget_used: budget,
            star_score: 0,
            comb_score: 0,
            diagnostics,
        }
    }
}

/// Adjacency of the search tree; `tree[v]` lists tree neighbours.
struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// BFS over `T` from `from`, not entering `blocked` vertices; returns
    /// predecessor links (`usize::MAX` = unreached).
    fn bfs(&self, from: usize, blocked: &dyn Fn(usize) -> bool) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.adj.len()];
        prev[from] = from;
        let mut q = VecDeque::from([from]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if prev[y] == usize::MAX && !blocked(y) {
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        prev
    }

    fn walk_back(prev: &[usize], to: usize) -> Vec<usize> {
        let mut path = vec![to];
        let mut cur = to;
        while prev[cur] != cur {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Path from `root` through `first` into the subtree behind `first`
    /// (not crossing `blocked`) to the earliest sequence vertex found there.
    fn reach_sequence(&self, root: usize, first: usize, blocked: &dyn Fn(usize) -> bool, in_seq: &[Option<usize>]) -> Option<Vec<usize>> {
        let block = |v: usize| v == root || blocked(v);
        let prev = self.bfs(first, &block);
        let target = (0..self.adj.len()).filter(|&v| prev[v] != usize::MAX && in_seq[v].is_some()).min_by_key(|&v| in_seq[v])?;
        let mut path = vec![root];
        path.extend(Self::walk_back(&prev, target));
        Some(path)
    }
}

/// Search a comb or star through `vseq` inside `G_budget`; results with
/// fewer than `min_k` teeth or leaves are inconclusive.
pub fn comb_or_star(g: &dyn LazyGraph, vseq: &[String], budget: usize, min_k: usize) -> CombOrStar {
    let t = g.truncate(budget);
    comb_or_star_in(&t.graph, vseq, budget, min_k)
}

pub fn comb_or_star_in(graph: &WeightedGraph<f64>, vseq: &[String], budget: usize, min_k: usize) -> CombOrStar {
    let mut idx = Vec::new();
    let mut missing = Vec::new();
    for v in vseq {
        match graph.vertex(v) {
            Some(i) => idx.push(i),
            None => missing.push(format!("vertex {v} not emitted by level {budget}")),
        }
    }
    if !missing.is_empty() {
        return CombOrStar::inconclusive(budget, missing);
    }
    if idx.is_empty() {
        return CombOrStar::inconclusive(budget, vec!["empty sequence".into()]);
    }
    // union of consecutive shortest paths
    let mut h_edges = BTreeSet::new();
    for w in idx.windows(2) {
        let sp = shortest_paths(graph, &[(w[0], 0.0)], &[w[1]], None);
        if sp.dist[w[1]].is_none() {
            return CombOrStar::inconclusive(
                budget,
                vec![format!("{} and {} are not connected at level {budget}", graph.vertex_id(w[0]), graph.vertex_id(w[1]))],
            );
        }
        h_edges.extend(sp.path_to(w[1]).into_iter().map(|(e, _)| e));
    }
    let n = graph.vertex_count();
    let mut h_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in &h_edges {
        let ed = graph.edge(e);
        if !ed.is_loop() {
            h_adj[ed.u].push((e, ed.v));
            h_adj[ed.v].push((e, ed.u));
        }
    }
    // BFS spanning tree of H from the first sequence vertex
    let mut tree = Tree { adj: vec![Vec::new(); n] };
    let mut seen = vec![false; n];
    seen[idx[0]] = true;
    let mut q = VecDeque::from([idx[0]]);
    while let Some(x) = q.pop_front() {
        for &(_, y) in &h_adj[x] {
            if !seen[y] {
                seen[y] = true;
                tree.adj[x].push(y);
                tree.adj[y].push(x);
                q.push_back(y);
            }
        }
    }
    let mut in_seq: Vec<Option<usize>> = vec![None; n];
    for (pos, &v) in idx.iter().enumerate() {
        in_seq[v].get_or_insert(pos);
    }
    let tree_vertices: Vec<usize> = (0..n).filter(|&v| seen[v]).collect();
    let seq_vertices: Vec<usize> = {
        let mut s: Vec<usize> = idx.clone();
        s.sort_unstable_by_key(|&v| in_seq[v]);
        s.dedup();
        s
    };

    // best star
    let mut star: (usize, Option<usize>, Vec<Vec<usize>>) = (0, None, Vec::new());
    for &c in &tree_vertices {
        let no_block = |_: usize| false;
        let leaves: Vec<Vec<usize>> = tree.adj[c].iter().filter_map(|&w| tree.reach_sequence(c, w, &no_block, &in_seq)).collect();
        if leaves.len() > star.0 {
            star = (leaves.len(), Some(c), leaves);
        }
    }

    // best comb over spines between two sequence vertices
    let mut comb: (usize, Vec<usize>, Vec<Vec<usize>>) = (0, Vec::new(), Vec::new());
    for (i, &a) in seq_vertices.iter().enumerate() {
        let prev = tree.bfs(a, &|_| false);
        for &b in &seq_vertices[i..] {
            let spine = Tree::walk_back(&prev, b);
            let mut on_spine = vec![false; n];
            for &s in &spine {
                on_spine[s] = true;
            }
            let blocked = |v: usize| on_spine[v];
            let mut teeth = Vec::new();
            for &s in &spine {
                if in_seq[s].is_some() {
                    teeth.push(vec![s]);
                    continue;
                }
                if let Some(p) = tree.adj[s].iter().filter(|&&w| !on_spine[w]).find_map(|&w| tree.reach_sequence(s, w, &blocked, &in_seq)) {
                    teeth.push(p);
                }
            }
            if teeth.len() > comb.0 {
                comb = (teeth.len(), spine, teeth);
            }
        }
    }

    let name = |p: &[usize]| p.iter().map(|&v| graph.vertex_id(v).to_string()).collect::<Vec<_>>();
    let (star_score, comb_score) = (star.0, comb.0);
    let best = star_score.max(comb_score);
    if best < min_k {
        return CombOrStar {
            star_score,
            comb_score,
            ..CombOrStar::inconclusive(
                budget,
                vec![format!("best star has {star_score} leaves and best comb {comb_score} teeth; {min_k} requested")],
            )
        };
    }
    if comb_score >= star_score {
        CombOrStar {
            kind: CombKind::Comb,
            spine: name(&comb.1),
            center: None,
            paths: comb.2.iter().map(|p| name(p)).collect(),
            budget_used: budget,
            star_score,
            comb_score,
            diagnostics: Vec::new(),
        }
    } else {
        CombOrStar {
            kind: CombKind::Star,
            spine: Vec::new(),
            center: star.1.map(|c| graph.vertex_id(c).to_string()),
            paths: star.2.iter().map(|p| name(p)).collect(),
            budget_used: budget,
            star_score,
            comb_score,
            diagnostics: Vec::new(),
        }
    }
}

fn is_path(graph: &WeightedGraph<f64>, p: &[String]) -> Result<Vec<usize>, String> {
    let ix: Vec<usize> = p.iter().map(|v| graph.vertex(v).ok_or_else(|| format!("unknown vertex {v}"))).collect::<Result<_, _>>()?;
    let distinct: BTreeSet<_> = ix.iter().collect();
    if distinct.len() != ix.len() {
        return Err(format!("path {p:?} repeats a vertex"));
    }
    for w in ix.windows(2) {
        if !graph.incident(w[0]).iter().any(|&e| graph.edge(e).other(w[0]) == w[1]) {
            return Err(format!("{} and {} are not adjacent", graph.vertex_id(w[0]), graph.vertex_id(w[1])));
        }
    }
    Ok(ix)
}

/// Checks the certificate of a comb or star against `graph` and the
/// sequence: paths are paths of the graph ending in the sequence; comb
/// teeth are disjoint and meet the spine exactly in their first vertex;
/// star paths pairwise share exactly the center.
pub fn verify(graph: &WeightedGraph<f64>, c: &CombOrStar, vseq: &[String]) -> Result<(), String> {
    let seq: BTreeSet<&String> = vseq.iter().collect();
    for p in &c.paths {
        is_path(graph, p)?;
        if !seq.contains(p.last().ok_or("empty path")?) {
            return Err(format!("path {p:?} does not end in the sequence"));
        }
    }
    match c.kind {
        CombKind::Inconclusive => Ok(()),
        CombKind::Comb => {
            is_path(graph, &c.spine)?;
            let spine: BTreeSet<&String> = c.spine.iter().collect();
            let mut used = BTreeSet::new();
            for p in &c.paths {
                if !spine.contains(&p[0]) || p[1..].iter().any(|v| spine.contains(v)) {
                    return Err(format!("tooth {p:?} must meet the spine exactly in its first vertex"));
                }
                for v in p {
                    if !used.insert(v) {
                        return Err(format!("teeth share vertex {v}"));
                    }
                }
            }
            Ok(())
        }
        CombKind::Star => {
            let center = c.center.as_ref().ok_or("star without center")?;
            let mut used = BTreeSet::new();
            for p in &c.paths {
                if &p[0] != center {
                    return Err(format!("leaf path {p:?} does not start at the center"));
                }
                for v in &p[1..] {
                    if !used.insert(v) {
                        return Err(format!("leaf paths share vertex {v}"));
                    }
                }
            }
            Ok(())
        }
    }
}
