use super::{check_ratio, geometric, geometric_schedule, Emission, LazyGraph, Schedule, Summability};

/// Ladder with rungs `a_k b_k`. Level 0 is the single rung 0; level `k`
/// adds `a_k, b_k`, the rung (length `ratio^k`) and the two rails back to
/// level `k-1` (length `ratio^(k-1)`).
#[derive(Debug, Clone)]
pub struct LadderStrip {
    pub ratio: f64,
}

impl LadderStrip {
    pub fn new(ratio: f64) -> Result<Self, &'static str> {
        Ok(LadderStrip { ratio: check_ratio(ratio)? })
    }
}

impl LazyGraph for LadderStrip {
    fn name(&self) -> &'static str {
        "ladder-strip"
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("ratio", self.ratio.to_string())]
    }
    fn emit(&self, k: usize) -> Option<Emission> {
        let mut em = Emission::default();
        em.vertex(format!("a{k}"));
        em.vertex(format!("b{k}"));
        em.edge(format!("r{k}"), format!("a{k}"), format!("b{k}"), geometric(self.ratio, k));
        if k > 0 {
            let len = geometric(self.ratio, k - 1);
            em.edge(format!("ra{k}"), format!("a{}", k - 1), format!("a{k}"), len);
            em.edge(format!("rb{k}"), format!("b{}", k - 1), format!("b{k}"), len);
        }
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        geometric_schedule(self.ratio, 3.0)
    }
    fn basepoint(&self) -> Option<String> {
        Some("a0".into())
    }
    fn hop_exact(&self) -> bool {
        true
    }
}

/// Double ray `... d_-1 d0 d1 ...`; level `k` adds `d_-k` and `d_k`.
#[derive(Debug, Clone)]
pub struct DoubleRay {
    pub ratio: f64,
}

impl DoubleRay {
    pub fn new(ratio: f64) -> Result<Self, &'static str> {
        Ok(DoubleRay { ratio: check_ratio(ratio)? })
    }
}

impl LazyGraph for DoubleRay {
    fn name(&self) -> &'static str {
        "double-ray"
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("ratio", self.ratio.to_string())]
    }
    fn emit(&self, k: usize) -> Option<Emission> {
        let mut em = Emission::default();
        if k == 0 {
            em.vertex("d0");
            return Some(em);
        }
        let (k, len) = (k as i64, geometric(self.ratio, k - 1));
        em.vertex(format!("d{}", -k));
        em.vertex(format!("d{k}"));
        em.edge(format!("s{}", -k), format!("d{}", -k), format!("d{}", 1 - k), len);
        em.edge(format!("s{k}"), format!("d{}", k - 1), format!("d{k}"), len);
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        geometric_schedule(self.ratio, 2.0)
    }
    fn basepoint(&self) -> Option<String> {
        Some("d0".into())
    }
    fn hop_exact(&self) -> bool {
        true
    }
}

/// Quarter-plane grid `g{i}_{j}`; level `n` adds the vertices with
/// `max(i, j) = n` and the edges between them and the previous box, each of
/// length `ratio^(n-1)`.
#[derive(Debug, Clone)]
pub struct Grid {
    pub ratio: f64,
}

impl Grid {
    pub fn new(ratio: f64) -> Result<Self, &'static str> {
        Ok(Grid { ratio: check_ratio(ratio)? })
    }
}

impl LazyGraph for Grid {
    fn name(&self) -> &'static str {
        "grid"
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("ratio", self.ratio.to_string())]
    }
    fn emit(&self, n: usize) -> Option<Emission> {
        let mut em = Emission::default();
        let id = |i: usize, j: usize| format!("g{i}_{j}");
        if n == 0 {
            em.vertex(id(0, 0));
            return Some(em);
        }
        let len = geometric(self.ratio, n - 1);
        // the new L-shaped layer: (n, 0..=n) then (0..n, n)
        let layer: Vec<(usize, usize)> = (0..=n).map(|j| (n, j)).chain((0..n).map(|i| (i, n))).collect();
        for &(i, j) in &layer {
            em.vertex(id(i, j));
        }
        for &(i, j) in &layer {
            // edges to the left and below, which are either older or earlier in the layer
            if i > 0 && (i == n || j == n) {
                em.edge(format!("h{}_{j}", i - 1), id(i - 1, j), id(i, j), len);
            }
            if j > 0 {
                em.edge(format!("w{i}_{}", j - 1), id(i, j - 1), id(i, j), len);
            }
        }
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        if self.ratio < 1.0 {
            Schedule { summability: Summability::Converging { limit: None }, min_length: None }
        } else {
            Schedule { summability: Summability::Diverging, min_length: Some(1.0) }
        }
    }
    fn basepoint(&self) -> Option<String> {
        Some("g0_0".into())
    }
    fn hop_exact(&self) -> bool {
        true
    }
}

/// Rooted binary tree; vertex ids spell the path from the root (`t`, `t0`,
/// `t01`, ...). Level `n` adds the depth-`n` vertices with parent edges of
/// length `ratio^(n-1)`.
#[derive(Debug, Clone)]
pub struct BinaryTree {
    pub ratio: f64,
}

impl BinaryTree {
    pub fn new(ratio: f64) -> Result<Self, &'static str> {
        Ok(BinaryTree { ratio: check_ratio(ratio)? })
    }
}

impl LazyGraph for BinaryTree {
    fn name(&self) -> &'static str {
        "binary-tree"
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("ratio", self.ratio.to_string())]
    }
    fn emit(&self, n: usize) -> Option<Emission> {
        let mut em = Emission::default();
        if n == 0 {
            em.vertex("t");
            return Some(em);
        }
        let len = geometric(self.ratio, n - 1);
        for code in 0..(1u64 << n) {
            let path = format!("{code:0n$b}");
            let child = format!("t{path}");
            let parent = format!("t{}", &path[..n - 1]);
            em.vertex(child.clone());
            em.edge(format!("b{path}"), parent, child, len);
        }
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        if 2.0 * self.ratio < 1.0 {
            let r = 2.0 * self.ratio;
            Schedule { summability: Summability::Converging { limit: Some(2.0 / (1.0 - r)) }, min_length: None }
        } else {
            Schedule { summability: Summability::Diverging, min_length: if self.ratio >= 1.0 { Some(1.0) } else { None } }
        }
    }
    fn basepoint(&self) -> Option<String> {
        Some("t".into())
    }
    fn hop_exact(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_base_case() {
        let t = LadderStrip::new(0.5).unwrap().truncate(0);
        assert_eq!((t.graph.vertex_count(), t.graph.edge_count()), (2, 1));
        assert_eq!(t.frontier_ids(), vec!["a0", "b0"]);
    }

    #[test]
    fn ladder_lengths() {
        let t = LadderStrip::new(0.5).unwrap().truncate(3);
        let g = &t.graph;
        assert_eq!(g.edge(g.edge_ix("r3").unwrap()).len, 0.125);
        assert_eq!(g.edge(g.edge_ix("ra3").unwrap()).len, 0.25);
        assert_eq!(t.frontier_ids(), vec!["a3", "b3"]);
    }

    #[test]
    fn grid_layers() {
        let g = Grid::new(1.0).unwrap();
        for n in 0..6 {
            let t = g.truncate(n);
            let side = n + 1;
            assert_eq!(t.graph.vertex_count(), side * side);
            assert_eq!(t.graph.edge_count(), 2 * side * (side - 1));
        }
    }

    #[test]
    fn binary_tree_counts() {
        let t = BinaryTree::new(0.5).unwrap().truncate(4);
        assert_eq!(t.graph.vertex_count(), 31);
        assert_eq!(t.graph.edge_count(), 30);
        assert_eq!(t.frontier.len(), 16);
    }

    #[test]
    fn double_ray_is_a_path() {
        let t = DoubleRay::new(1.0).unwrap().truncate(3);
        assert_eq!(t.graph.vertex_count(), 7);
        assert_eq!(t.graph.edge_count(), 6);
        assert!(t.graph.is_connected());
        assert_eq!(t.frontier_ids(), vec!["d-3", "d3"]);
    }
}
