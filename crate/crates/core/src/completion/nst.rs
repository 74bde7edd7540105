//! Lengths from a normal spanning tree: with `r` the tree level, an edge
//! `uv` with `r(u) < r(v)` gets `sum_{r(u) < n <= r(v)} 2^-n`.
//!
//! Depth-first trees of finite graphs are normal, so the tree used here is
//! the DFS tree from the root, exploring incident edges in index order.

use thiserror::Error;

use crate::graph::{GraphError, WeightedGraph};
use crate::length::Length;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NstError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is disconnected; vertex {0} is not reachable from the root")]
    Disconnected(String),
    #[error("loop {0} joins a vertex to itself and would get length 0")]
    Loop(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NstAssignment<L> {
    pub root: usize,
    pub level: Vec<usize>,
    /// Tree edge to the parent, `None` at the root.
    pub parent_edge: Vec<Option<usize>>,
    pub tree_edges: Vec<usize>,
    /// New length per edge index.
    pub lengths: Vec<L>,
}

/// `sum_{a < n <= b} 2^-n`.
pub fn level_sum<L: Length>(a: usize, b: usize) -> L {
    crate::length::sum((a + 1..=b).map(|n| L::dyadic(n as u32)))
}

pub fn nst_lengths<L: Length, M: Length>(g: &WeightedGraph<M>, root: usize) -> Result<NstAssignment<L>, NstError> {
    if root >= g.vertex_count() {
        return Err(GraphError::UnknownVertex(format!("#{root}")).into());
    }
    if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
        return Err(NstError::Loop(e.id.clone()));
    }
    let n = g.vertex_count();
    let mut level = vec![usize::MAX; n];
    let mut parent_edge = vec![None; n];
    let mut tree_edges = Vec::new();
    level[root] = 0;
    // stack of (vertex, position in its incidence list)
    let mut stack = vec![(root, 0usize)];
    while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
        let inc = g.incident(v);
        if *pos == inc.len() {
            stack.pop();
            continue;
        }
        let e = inc[*pos];
        *pos += 1;
        let w = g.edge(e).other(v);
        if level[w] == usize::MAX {
            level[w] = level[v] + 1;
            parent_edge[w] = Some(e);
            tree_edges.push(e);
            stack.push((w, 0));
        }
    }
    if let Some(v) = level.iter().position(|&l| l == usize::MAX) {
        return Err(NstError::Disconnected(g.vertex_id(v).to_string()));
    }
    let lengths = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (level[e.u].min(level[e.v]), level[e.u].max(level[e.v]));
            level_sum(a, b)
        })
        .collect();
    Ok(NstAssignment { root, level, parent_edge, tree_edges, lengths })
}

impl<L: Length> NstAssignment<L> {
    /// `g` with the assigned lengths.
    pub fn apply<M: Length>(&self, g: &WeightedGraph<M>) -> WeightedGraph<L> {
        let mut i = 0;
        g.map_lengths(|_| {
            i += 1;
            self.lengths[i - 1].clone()
        })
        .expect("assigned lengths are positive")
    }

    /// Tree path from `v` up to the root, as edge indices.
    pub fn path_to_root<M: Length>(&self, g: &WeightedGraph<M>, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some(e) = self.parent_edge[v] {
            out.push(e);
            v = g.edge(e).other(v);
        }
        out
    }

    /// Length of the tree path between `x` and `y`, in closed form:
    /// `2^-r(lca) - 2^-r(x) + 2^-r(lca) - 2^-r(y)`.
    pub fn tree_distance<M: Length>(&self, g: &WeightedGraph<M>, x: usize, y: usize) -> L {
        let up_x = self.path_to_root(g, x);
        let up_y = self.path_to_root(g, y);
        // common suffix of the two root paths is above the lowest common ancestor
        let common = up_x.iter().rev().zip(up_y.iter().rev()).take_while(|(a, b)| a == b).count();
        let lca_level = self.level[x] - (up_x.len() - common);
        level_sum::<L>(lca_level, self.level[x]) + level_sum::<L>(lca_level, self.level[y])
    }
}
