use super::{Emission, LazyGraph, Schedule, Summability};

/// Hyperbolic strip with unit lengths.
///
/// Level `i` is the path `P_i` on vertices `h{i}_{j}`, `0 <= j <= 2^i`, so
/// it has `2^i` edges `p{i}_{j}`. Each vertex `j` of `P_(i-1)` is joined to
/// vertex `2j` of `P_i` (edge `s{i}_{j}`) and, for `j < 2^(i-1)`, to vertex
/// `2j+1` (edge `d{i}_{j}`). The outermost vertices `j = 0` and `j = 2^i`
/// form the top and bottom rays.
///
/// Projecting `h{i}_{j}` to `h{i-1}_{j/2}` never stretches an edge, so hop
/// distances inside a truncation are those of the whole graph.
#[derive(Debug, Clone, Copy)]
pub struct HyperbolicStrip;

impl HyperbolicStrip {
    pub fn vertex_id(i: usize, j: u64) -> String {
        format!("h{i}_{j}")
    }
}

impl LazyGraph for HyperbolicStrip {
    fn name(&self) -> &'static str {
        "hyperbolic-strip"
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        Vec::new()
    }
    fn emit(&self, i: usize) -> Option<Emission> {
        let id = Self::vertex_id;
        let width = 1u64 << i;
        let mut em = Emission::default();
        for j in 0..=width {
            em.vertex(id(i, j));
        }
        for j in 0..width {
            em.edge(format!("p{i}_{j}"), id(i, j), id(i, j + 1), 1.0);
        }
        if i > 0 {
            for j in 0..=width / 2 {
                em.edge(format!("s{i}_{j}"), id(i - 1, j), id(i, 2 * j), 1.0);
                if j < width / 2 {
                    em.edge(format!("d{i}_{j}"), id(i - 1, j), id(i, 2 * j + 1), 1.0);
                }
            }
        }
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        Schedule { summability: Summability::Diverging, min_length: Some(1.0) }
    }
    fn basepoint(&self) -> Option<String> {
        Some(Self::vertex_id(0, 0))
    }
    fn hop_exact(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_three_has_perpendicular_path_of_eight_edges() {
        let t = HyperbolicStrip.truncate(3);
        let g = &t.graph;
        let p3: Vec<_> = g.edges().iter().filter(|e| e.id.starts_with("p3_")).collect();
        assert_eq!(p3.len(), 8);
        // the edges form a path h3_0 .. h3_8
        for (j, e) in p3.iter().enumerate() {
            assert_eq!(g.vertex_id(e.u), format!("h3_{j}"));
            assert_eq!(g.vertex_id(e.v), format!("h3_{}", j + 1));
        }
        assert_eq!(t.frontier.len(), 9);
    }

    #[test]
    fn counts() {
        let t = HyperbolicStrip.truncate(4);
        let vertices: usize = (0..=4).map(|i| (1usize << i) + 1).sum();
        assert_eq!(t.graph.vertex_count(), vertices);
        assert!(t.graph.is_connected());
    }
}
