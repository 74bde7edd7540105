//! Brute-force reference implementations shared by the integration tests.
//! They work on plain edge lists and share no code with the library.

#![allow(dead_code)]

use ltop_core::metric::Point;
use ltop_core::{Rational, WeightedGraph};
use num_traits::Zero;
use rand::Rng;

pub type Edges = Vec<(usize, usize)>;

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp[a] = b;
    }
    let r = find(&mut comp, 0);
    (0..n).all(|x| find(&mut comp, x) == r)
}

/// Every connected simple graph on the labelled vertex set `0..n`.
pub fn connected_simple_graphs(n: usize) -> Vec<Edges> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|m| pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect::<Edges>())
        .filter(|e| connected(n, e))
        .collect()
}

pub fn lens(g: &WeightedGraph<Rational>) -> Vec<Rational> {
    g.edges().iter().map(|e| e.len).collect()
}

pub fn floyd_warshall(n: usize, edges: &[(usize, usize)], lens: &[Rational]) -> Vec<Vec<Option<Rational>>> {
    let mut d = vec![vec![None; n]; n];
    for (x, row) in d.iter_mut().enumerate() {
        row[x] = Some(Rational::zero());
    }
    for (&(u, v), &l) in edges.iter().zip(lens) {
        for (a, b) in [(u, v), (v, u)] {
            if d[a][b].is_none_or(|c| l < c) {
                d[a][b] = Some(l);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

pub fn mask(edges: &[usize]) -> u64 {
    edges.iter().fold(0, |m, &e| m ^ (1 << e))
}

pub fn gf2_rank_u64(vs: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Vertices of a simple cycle in order, with the edge after each vertex.
fn walk_cycle(edges: &[(usize, usize)], cyc: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut left: Vec<usize> = cyc.to_vec();
    let first = left.remove(0);
    let (start, mut cur) = edges[first];
    let (mut vs, mut es) = (vec![start], vec![first]);
    while cur != start {
        let i = left.iter().position(|&e| edges[e].0 == cur || edges[e].1 == cur)?;
        let e = left.remove(i);
        vs.push(cur);
        es.push(e);
        cur = if edges[e].0 == cur { edges[e].1 } else { edges[e].0 };
    }
    let mut distinct = vs.clone();
    distinct.sort_unstable();
    distinct.dedup();
    (left.is_empty() && distinct.len() == vs.len()).then_some((vs, es))
}

/// Every pair of cycle vertices has an arc of length equal to its distance.
pub fn oracle_is_geodetic(edges: &[(usize, usize)], lens: &[Rational], fw: &[Vec<Option<Rational>>], cyc: &[usize]) -> bool {
    let Some((vs, es)) = walk_cycle(edges, cyc) else {
        return false;
    };
    let k = vs.len();
    let total: Rational = es.iter().map(|&e| lens[e]).sum();
    for i in 0..k {
        let mut arc = Rational::zero();
        for j in i + 1..k {
            arc += lens[es[j - 1]];
            let shorter = if arc < total - arc { arc } else { total - arc };
            if fw[vs[i]][vs[j]] != Some(shorter) {
                return false;
            }
        }
    }
    true
}

/// Multigraph given by a random closed walk with `min..=max` steps.
pub fn random_closed_walk_graph(rng: &mut impl Rng, min: usize, max: usize) -> (usize, Edges) {
    let m = rng.gen_range(min..=max);
    let k = rng.gen_range(1..=6);
    let mut walk: Vec<usize> = (0..m).map(|_| rng.gen_range(0..k)).collect();
    walk.push(walk[0]);
    let mut label = vec![usize::MAX; k];
    let mut n = 0;
    for &v in &walk {
        if label[v] == usize::MAX {
            label[v] = n;
            n += 1;
        }
    }
    let edges = walk.windows(2).map(|w| (label[w[0]], label[w[1]])).collect();
    (n, edges)
}

pub fn oracle_euler_ok(edges: &[(usize, usize)], tour: &[usize], start: usize) -> bool {
    let mut seen = vec![0; edges.len()];
    let mut cur = start;
    for &e in tour {
        seen[e] += 1;
        let (u, v) = edges[e];
        cur = if u == cur {
            v
        } else if v == cur {
            u
        } else {
            return false;
        };
    }
    cur == start && seen.iter().all(|&c| c == 1)
}

/// `vertices` are edge ids `e{k}` of the host graph; `l_edges[i]` must be
/// `a~b@y` joining `vertices[i]` and the next one through a common end `y`.
pub fn oracle_hamilton_ok(edges: &[(usize, usize)], vertices: &[String], l_edges: &[String]) -> bool {
    let m = edges.len();
    let ix: Vec<usize> = vertices.iter().filter_map(|v| v.strip_prefix('e')?.parse().ok()).collect();
    let mut sorted = ix.clone();
    sorted.sort_unstable();
    if sorted != (0..m).collect::<Vec<_>>() || l_edges.len() != m {
        return false;
    }
    let mut ids = l_edges.to_vec();
    ids.sort();
    ids.dedup();
    if ids.len() != m {
        return false;
    }
    (0..m).all(|i| {
        let (a, b) = (ix[i], ix[(i + 1) % m]);
        let Some((pair, y)) = l_edges[i].split_once('@') else { return false };
        let Some(y) = y.strip_prefix('v').and_then(|s| s.parse::<usize>().ok()) else { return false };
        let want = format!("e{}~e{}", a.min(b), a.max(b));
        let touches = |e: usize| edges[e].0 == y || edges[e].1 == y;
        pair == want && touches(a) && touches(b)
    })
}

/// Exhaustive minimum over simple paths.
pub fn simple_path_distances(n: usize, edges: &[(usize, usize)], lens: &[Rational]) -> Vec<Vec<Rational>> {
    fn go(x: usize, acc: Rational, edges: &[(usize, usize)], lens: &[Rational], on: &mut Vec<bool>, best: &mut Vec<Option<Rational>>) {
        if best[x].is_none_or(|b| acc < b) {
            best[x] = Some(acc);
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            let y = if u == x {
                v
            } else if v == x {
                u
            } else {
                continue;
            };
            if !on[y] {
                on[y] = true;
                go(y, acc + lens[e], edges, lens, on, best);
                on[y] = false;
            }
        }
    }
    (0..n)
        .map(|s| {
            let mut best = vec![None; n];
            let mut on = vec![false; n];
            on[s] = true;
            go(s, Rational::zero(), edges, lens, &mut on, &mut best);
            best.into_iter().map(|b| b.expect("connected")).collect()
        })
        .collect()
}

/// Distances from vertices `x` and `y` to a point.
pub fn point_distances(edges: &[(usize, usize)], lens: &[Rational], d: &[Vec<Rational>], p: &Point<Rational>, x: usize, y: usize) -> (Rational, Rational) {
    let to = |s: usize| match p {
        Point::Vertex(w) => d[s][*w],
        Point::OnEdge { edge, offset } => {
            let (u, v) = edges[*edge];
            let a = d[s][u] + offset;
            let b = d[s][v] + (lens[*edge] - offset);
            if a < b {
                a
            } else {
                b
            }
        }
    };
    (to(x), to(y))
}

/// Random tree plus a few extra edges (parallel edges allowed, no loops).
pub fn random_connected_graph(rng: &mut impl Rng, n: usize) -> Edges {
    let mut edges: Edges = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=2 * n) {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u, v));
        }
    }
    // shuffle so edge order is unrelated to the tree
    for i in (1..edges.len()).rev() {
        let j = rng.gen_range(0..=i);
        edges.swap(i, j);
    }
    edges
}

/// Recursive depth-first search taking edges in index order.
pub fn dfs_levels(n: usize, edges: &[(usize, usize)], root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    fn go(x: usize, edges: &[(usize, usize)], level: &mut Vec<usize>, parent: &mut Vec<Option<usize>>) {
        for &(u, v) in edges {
            let y = if u == x {
                v
            } else if v == x {
                u
            } else {
                continue;
            };
            if level[y] == usize::MAX {
                level[y] = level[x] + 1;
                parent[y] = Some(x);
                go(y, edges, level, parent);
            }
        }
    }
    let mut level = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    level[root] = 0;
    go(root, edges, &mut level, &mut parent);
    (level, parent)
}

pub fn is_ancestor(parent: &[Option<usize>], a: usize, mut b: usize) -> bool {
    loop {
        if a == b {
            return true;
        }
        match parent[b] {
            Some(p) => b = p,
            None => return false,
        }
    }
}
