//! Frontier clusterings as a finite stand-in for the boundary.
//!
//! At level `n` the frontier `F_n` is clustered with distances taken in a
//! deeper truncation `G_m`: distances between frontier vertices only shrink
//! as more of the graph appears, so `G_n` itself would overestimate them.
//!
//! Clusters are nested greedy `eps`-nets. Scanning `F_n` in emission order,
//! a vertex becomes a new center if it is at distance at least `eps` from
//! every center chosen so far, the centers of coarser resolutions included;
//! every vertex then joins its nearest center. Centers are pairwise at least
//! `eps` apart and the count can only grow as `eps` shrinks. The number of
//! single-linkage components (closure of "distance `< eps`") is reported as
//! well; on a boundary that is an interval it stays at 1 even though the net
//! size keeps growing, which is why nets are the primary count.

use serde::Serialize;
use thiserror::Error;

use crate::completion::ends::core_level;
use crate::generators::{LazyGraph, Summability};
use crate::metric::shortest_paths;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundaryError {
    #[error("no levels given")]
    NoLevels,
    #[error("depth {depth} must exceed every level (largest is {level})")]
    DepthTooSmall { depth: usize, level: usize },
    #[error("resolution {0} must be positive")]
    BadEps(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clustering {
    pub eps: f64,
    pub cluster_count: usize,
    pub centers: Vec<String>,
    pub clusters: Vec<Vec<String>>,
    /// Distances in `G_m` between centers; `None` when unreachable.
    pub center_distances: Vec<Vec<Option<f64>>>,
    pub linkage_components: usize,
    /// Per cluster, the end candidate holding all of its members outside
    /// the core, if there is exactly one.
    pub cluster_end: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelProfile {
    pub level: usize,
    pub frontier: Vec<String>,
    /// Largest finite distance in `G_m` between frontier vertices.
    pub diameter: f64,
    /// Frontier vertices grouped by component of `G_m` minus the vertices of
    /// the core `G_c`, `c = ceil(level/2)`; core vertices are left out.
    pub end_candidates: Vec<Vec<String>>,
    /// Shortest edge of `G_m` with exactly one end in the core.
    pub core_exit: Option<f64>,
    /// Clusters of resolution at most this value are guaranteed to lie in a
    /// single end candidate (twice `core_exit`).
    pub consistency_eps: Option<f64>,
    pub clusterings: Vec<Clustering>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryProfile {
    pub generator: String,
    pub depth: usize,
    pub summability: Summability,
    pub levels: Vec<LevelProfile>,
}

impl BoundaryProfile {
    pub fn level(&self, n: usize) -> Option<&LevelProfile> {
        self.levels.iter().find(|l| l.level == n)
    }

    /// Cluster counts for `level`, in the order of the requested resolutions.
    pub fn counts(&self, n: usize) -> Vec<usize> {
        self.level(n).map(|l| l.clusterings.iter().map(|c| c.cluster_count).collect()).unwrap_or_default()
    }

    /// Table with columns `level,eps,cluster_count`.
    pub fn csv(&self) -> String {
        let mut out = String::from("level,eps,cluster_count\n");
        for l in &self.levels {
            for c in &l.clusterings {
                out.push_str(&format!("{},{},{}\n", l.level, c.eps, c.cluster_count));
            }
        }
        out
    }
}

/// Default resolutions `2^-1, ..., 2^-10`.
pub fn default_eps() -> Vec<f64> {
    (1..=10).map(|k| (-(k as f64)).exp2()).collect()
}

pub fn boundary_profile(g: &dyn LazyGraph, levels: &[usize], depth: usize, eps: &[f64]) -> Result<BoundaryProfile, BoundaryError> {
    let &max_level = levels.iter().max().ok_or(BoundaryError::NoLevels)?;
    if depth <= max_level {
        return Err(BoundaryError::DepthTooSmall { depth, level: max_level });
    }
    if let Some(&e) = eps.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(BoundaryError::BadEps(e));
    }
    let deep = g.truncate(depth);
    let gm = &deep.graph;
    let mut out = Vec::new();
    for &n in levels {
        let t = g.truncate(n);
        let frontier: Vec<usize> = t.frontier.iter().map(|&v| gm.vertex(t.graph.vertex_id(v)).expect("truncations are monotone")).collect();
        let k = frontier.len();
        let dist: Vec<Vec<Option<f64>>> = frontier
            .iter()
            .map(|&s| {
                let sp = shortest_paths(gm, &[(s, 0.0)], &frontier, None);
                frontier.iter().map(|&v| sp.dist[v]).collect()
            })
            .collect();
        let diameter = dist.iter().flatten().flatten().copied().fold(0.0, f64::max);

        // end candidates: components of G_m minus the core vertex set
        let core = g.truncate(core_level(n));
        let in_core = |v: usize| core.graph.vertex(gm.vertex_id(v)).is_some();
        let label = gm.components_avoiding(in_core, |_| false);
        let mut cand_of_label: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut candidate = vec![None; k];
        for (i, &v) in frontier.iter().enumerate() {
            if label[v] == usize::MAX {
                continue;
            }
            let pos = match cand_of_label.iter().position(|(l, _)| *l == label[v]) {
                Some(p) => p,
                None => {
                    cand_of_label.push((label[v], Vec::new()));
                    cand_of_label.len() - 1
                }
            };
            cand_of_label[pos].1.push(i);
            candidate[i] = Some(pos);
        }
        let core_exit = gm.edges().iter().filter(|e| in_core(e.u) != in_core(e.v)).map(|e| e.len).reduce(f64::min);

        let mut order: Vec<usize> = (0..eps.len()).collect();
        order.sort_by(|&a, &b| eps[b].total_cmp(&eps[a]));
        let mut centers: Vec<usize> = Vec::new();
        let mut clusterings = vec![None; eps.len()];
        let far = |a: usize, b: usize, e: f64| dist[a][b].is_none_or(|d| d >= e);
        for &ix in &order {
            let e = eps[ix];
            for i in 0..k {
                if !centers.contains(&i) && centers.iter().all(|&c| far(i, c, e)) {
                    centers.push(i);
                }
            }
            let mut members = vec![Vec::new(); centers.len()];
            for i in 0..k {
                let best = (0..centers.len())
                    .min_by(|&a, &b| {
                        let da = dist[i][centers[a]].unwrap_or(f64::INFINITY);
                        let db = dist[i][centers[b]].unwrap_or(f64::INFINITY);
                        da.total_cmp(&db).then(a.cmp(&b))
                    })
                    .expect("frontier vertices are centers or covered");
                members[best].push(i);
            }
            let cluster_end = members
                .iter()
                .map(|m| {
                    let mut ends = m.iter().filter_map(|&i| candidate[i]);
                    let first = ends.next()?;
                    ends.all(|c| c == first).then_some(first)
                })
                .collect();
            clusterings[ix] = Some(Clustering {
                eps: e,
                cluster_count: centers.len(),
                centers: centers.iter().map(|&c| gm.vertex_id(frontier[c]).to_string()).collect(),
                clusters: members.iter().map(|m| m.iter().map(|&i| gm.vertex_id(frontier[i]).to_string()).collect()).collect(),
                center_distances: centers.iter().map(|&a| centers.iter().map(|&b| dist[a][b]).collect()).collect(),
                linkage_components: linkage_count(&dist, e),
                cluster_end,
            });
        }
        out.push(LevelProfile {
            level: n,
            frontier: frontier.iter().map(|&v| gm.vertex_id(v).to_string()).collect(),
            diameter,
            end_candidates: cand_of_label.iter().map(|(_, m)| m.iter().map(|&i| gm.vertex_id(frontier[i]).to_string()).collect()).collect(),
            core_exit,
            consistency_eps: core_exit.map(|m| 2.0 * m),
            clusterings: clusterings.into_iter().map(|c| c.expect("every eps processed")).collect(),
        });
    }
    Ok(BoundaryProfile { generator: g.invocation(), depth, summability: g.schedule().summability, levels: out })
}

fn linkage_count(dist: &[Vec<Option<f64>>], eps: f64) -> usize {
    let k = dist.len();
    let mut seen = vec![false; k];
    let mut count = 0;
    for s in 0..k {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for b in 0..k {
                if !seen[b] && dist[a][b].is_some_and(|d| d < eps) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{DoubleRay, LadderStrip};

    #[test]
    fn depth_must_exceed_levels() {
        let g = LadderStrip { ratio: 0.5 };
        assert_eq!(boundary_profile(&g, &[3, 5], 5, &[0.5]), Err(BoundaryError::DepthTooSmall { depth: 5, level: 5 }));
        assert_eq!(boundary_profile(&g, &[], 5, &[0.5]), Err(BoundaryError::NoLevels));
        assert_eq!(boundary_profile(&g, &[2], 5, &[0.0]), Err(BoundaryError::BadEps(0.0)));
    }

    #[test]
    fn summable_ladder_has_one_cluster() {
        let g = LadderStrip { ratio: 0.5 };
        let p = boundary_profile(&g, &[10], 14, &[0.1, 0.01, 0.004]).unwrap();
        assert_eq!(p.counts(10), vec![1, 1, 1]);
        assert!(p.level(10).unwrap().diameter < 0.004);
    }

    #[test]
    fn double_ray_with_unit_lengths_separates_both_ends() {
        let g = DoubleRay { ratio: 1.0 };
        let p = boundary_profile(&g, &[4], 8, &[0.5]).unwrap();
        let l = p.level(4).unwrap();
        assert_eq!(l.frontier.len(), 2);
        assert_eq!(l.end_candidates.len(), 2);
        let c = &l.clusterings[0];
        assert_eq!(c.cluster_count, 2);
        assert_eq!(c.linkage_components, 2);
        assert_eq!(c.cluster_end, vec![Some(0), Some(1)]);
    }

    #[test]
    fn counts_are_nonincreasing_in_eps_and_centers_separated() {
        let g = crate::generators::build("grid?ratio=0.8").unwrap();
        let eps = default_eps();
        let p = boundary_profile(g.as_ref(), &[5], 9, &eps).unwrap();
        let l = p.level(5).unwrap();
        for w in l.clusterings.windows(2) {
            assert!(w[0].cluster_count <= w[1].cluster_count);
        }
        for c in &l.clusterings {
            for (i, row) in c.center_distances.iter().enumerate() {
                for (j, d) in row.iter().enumerate() {
                    if i != j {
                        assert!(d.is_none_or(|d| d >= c.eps));
                    }
                }
            }
            let covered: usize = c.clusters.iter().map(Vec::len).sum();
            assert_eq!(covered, l.frontier.len());
        }
        assert_eq!(p.csv().lines().count(), 1 + eps.len());
    }
}
