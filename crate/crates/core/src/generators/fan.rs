use super::{check_ratio, geometric, Emission, LazyGraph, Schedule, Summability};

/// A ray `v0 v1 ...` (with `v0` playing the role of `z`) and two hubs `x`,
/// `y` adjacent to every ray vertex.
///
/// Level 0 holds `x, y, v0` with the edges `xv0, yv0`; level `k` adds `v_k`,
/// the ray edge `r{k} = v_(k-1) v_k` of length `ray^(k-1)` and the hub edges
/// `xv{k}, yv{k}` of length `leg^k`. With `leg < 1` the hubs are at distance
/// zero in the limit; with all lengths 1 they stay two apart.
#[derive(Debug, Clone)]
pub struct Fan {
    pub leg: f64,
    pub ray: f64,
}

impl Fan {
    pub fn new(leg: f64, ray: f64) -> Result<Self, &'static str> {
        Ok(Fan { leg: check_ratio(leg)?, ray: check_ratio(ray)? })
    }
}

impl LazyGraph for Fan {
    fn name(&self) -> &'static str {
        "fan"
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("leg", self.leg.to_string()), ("ray", self.ray.to_string())]
    }
    fn emit(&self, k: usize) -> Option<Emission> {
        let mut em = Emission::default();
        if k == 0 {
            em.vertex("x");
            em.vertex("y");
        }
        let v = format!("v{k}");
        em.vertex(v.clone());
        if k > 0 {
            em.edge(format!("r{k}"), format!("v{}", k - 1), v.clone(), geometric(self.ray, k - 1));
        }
        let leg = geometric(self.leg, k);
        em.edge(format!("xv{k}"), "x", v.clone(), leg);
        em.edge(format!("yv{k}"), "y", v, leg);
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        let summability = if self.leg < 1.0 && self.ray < 1.0 {
            Summability::Converging { limit: Some(2.0 / (1.0 - self.leg) + 1.0 / (1.0 - self.ray)) }
        } else {
            Summability::Diverging
        };
        let min_length = (self.leg >= 1.0 && self.ray >= 1.0).then_some(1.0);
        Schedule { summability, min_length }
    }
    fn basepoint(&self) -> Option<String> {
        Some("v0".into())
    }
    fn hop_exact(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frontier_is_hubs_and_ray_tip() {
        let t = Fan::new(0.5, 0.5).unwrap().truncate(3);
        assert_eq!(t.frontier_ids(), vec!["x", "y", "v3"]);
        assert_eq!(t.graph.edge_count(), 3 * 3 + 2);
    }
}
