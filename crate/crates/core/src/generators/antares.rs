//! The wild circle: infinitely many thick double rays ordered like the
//! dyadic rationals, held together by thin edges.
//!
//! Rays: the outer double ray `L` (level 0), and one double ray `D_t` for
//! every binary string `t` (level `|t| + 1`), standing for the dyadic point
//! `q(t) = 0.t1` in binary. A ray of level `k` shows its offsets
//! `|j| <= n - k` in `G_n`.
//!
//! Thin edges: the left tail of `D_s` (offset `-k`) is joined to `D_{s01^(k-1)}`
//! and its right tail (offset `+k`) to `D_{s10^(k-1)}`, always at offset 0 of
//! the target; for `L` the targets are `D_{0^k}` and `D_{1^k}`. Every
//! nonempty `t` is thereby reached from both of its dyadic neighbours, by two
//! thin edges of length `c * 2^-(|t|+1)`. The total thin length per level is
//! `c`, so the graph as a whole has infinite total length.
//!
//! Thick edges: a ray with weight `w` gives the edge between offsets `j` and
//! `j+1` the length `w * 2^-(m+2)` with `m = j` for `j >= 0` and `m = -j-1`
//! otherwise, so each tail sums to `w/2`. `L` has weight `2s/3` and `D_t`
//! weight `(2s/3) * 4^-(|t|+1)`: the thick edges sum to `s`, two thirds of
//! it on `L`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Emission, LazyGraph, Schedule, Summability};
use crate::length::{exact_f64, Length};

#[derive(Debug, Clone)]
pub struct Antares {
    pub c: f64,
    pub s: f64,
}

/// A ray: `None` is `L`, `Some(t)` is `D_t`.
type Ray<'a> = Option<&'a str>;

fn ray_name(r: Ray) -> String {
    match r {
        None => "L".into(),
        Some(t) => format!("D{t}"),
    }
}

fn vertex(r: Ray, j: i64) -> String {
    format!("{}:{j}", ray_name(r))
}

fn ray_level(r: Ray) -> usize {
    r.map_or(0, |t| t.len() + 1)
}

/// Binary strings of length `len`, in increasing numeric order.
fn strings(len: usize) -> impl Iterator<Item = String> {
    (0..1u64 << len).map(move |code| if len == 0 { String::new() } else { format!("{code:0len$b}") })
}

/// The ray and offset whose thin edge reaches `D_t` from the left-chain
/// side (`t = s01^(k-1)`, or `t = 1^k` from `L`).
fn left_chain_parent(t: &str) -> (Option<String>, i64) {
    let trimmed = t.trim_end_matches('1');
    let ones = (t.len() - trimmed.len()) as i64;
    match trimmed.strip_suffix('0') {
        Some(s) => (Some(s.to_string()), -(ones + 1)),
        None => (None, ones),
    }
}

/// Same for the right-chain side (`t = s10^(k-1)`, or `t = 0^k` from `L`).
fn right_chain_parent(t: &str) -> (Option<String>, i64) {
    let trimmed = t.trim_end_matches('0');
    let zeros = (t.len() - trimmed.len()) as i64;
    match trimmed.strip_suffix('1') {
        Some(s) => (Some(s.to_string()), zeros + 1),
        None => (None, -zeros),
    }
}

impl Antares {
    pub fn new(c: f64, s: f64) -> Result<Self, &'static str> {
        if c > 0.0 && s > 0.0 && c.is_finite() && s.is_finite() {
            Ok(Antares { c, s })
        } else {
            Err("c and s must be positive")
        }
    }

    fn weight(&self, r: Ray) -> f64 {
        let base = self.s * 2.0 / 3.0;
        match r {
            None => base,
            Some(t) => base * f64::dyadic(2 * t.len() as u32 + 2),
        }
    }

    fn thick_len(&self, r: Ray, j: i64) -> f64 {
        let m = if j >= 0 { j } else { -j - 1 };
        self.weight(r) * f64::dyadic(m as u32 + 2)
    }

    pub fn thick_edge_id(r: Ray, j: i64) -> String {
        format!("k{}:{j}", ray_name(r))
    }

    pub fn is_thick(edge_id: &str) -> bool {
        edge_id.starts_with('k')
    }

    /// Emits the offsets of ray `r` that first appear at level `n`.
    fn emit_ray(&self, em: &mut Emission, r: Ray, n: usize) {
        let lvl = ray_level(r);
        if n < lvl {
            return;
        }
        let reach = (n - lvl) as i64;
        if reach == 0 {
            em.vertex(vertex(r, 0));
            return;
        }
        em.vertex(vertex(r, -reach));
        em.vertex(vertex(r, reach));
        em.edge(Self::thick_edge_id(r, -reach), vertex(r, -reach), vertex(r, 1 - reach), self.thick_len(r, -reach));
        em.edge(Self::thick_edge_id(r, reach - 1), vertex(r, reach - 1), vertex(r, reach), self.thick_len(r, reach - 1));
    }

    /// Exact total length of the thick edges not yet visible in `G_n`,
    /// from the closed form of the weights.
    pub fn declared_thick_tail(&self, n: usize) -> BigRational {
        let s = exact_f64(self.s).expect("finite");
        let base = s * BigRational::new(BigInt::from(2), BigInt::from(3));
        // rays of level k <= n have reach n-k and an invisible tail of w * 2^-(n-k)
        let mut tail = base.clone() * BigRational::dyadic(n as u32);
        for k in 1..=n {
            let count = BigRational::from_integer(BigInt::from(1u64) << (k - 1));
            let w = base.clone() * BigRational::dyadic(2 * k as u32);
            tail += count * w * BigRational::dyadic((n - k) as u32);
        }
        // rays of level > n are invisible: sum over k > n of 2^(k-1) * base * 4^-k
        tail += base * BigRational::dyadic(n as u32 + 1);
        tail
    }

    /// Exact sum of the thick edge lengths in `G_n`.
    pub fn visible_thick_length(&self, n: usize) -> BigRational {
        let t = self.truncate(n);
        t.graph
            .edges()
            .iter()
            .filter(|e| Self::is_thick(&e.id))
            .map(|e| exact_f64(e.len).expect("finite"))
            .fold(<BigRational as Zero>::zero(), |a, b| a + b)
    }

    /// Vertices of the thick rays in `G_n`, in cyclic order around the
    /// circle: the bottom rays by increasing dyadic point, each from left to
    /// right tail, then `L` from right to left.
    pub fn circle_samples(&self, n: usize) -> Vec<String> {
        let mut rays: Vec<(u128, String)> = Vec::new();
        for k in 1..=n {
            for t in strings(k - 1) {
                // q(t) = (2 t + 1) / 2^k, scaled to the common denominator 2^(n+1)
                let code = if t.is_empty() { 0 } else { u128::from_str_radix(&t, 2).unwrap() };
                rays.push(((2 * code + 1) << (n + 1 - k), t));
            }
        }
        rays.sort();
        let mut out = Vec::new();
        for (_, t) in &rays {
            let reach = (n - ray_level(Some(t))) as i64;
            out.extend((-reach..=reach).map(|j| vertex(Some(t), j)));
        }
        let n = n as i64;
        out.extend((-n..=n).rev().map(|j| vertex(None, j)));
        out
    }
}

impl LazyGraph for Antares {
    fn name(&self) -> &'static str {
        "antares"
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("c", self.c.to_string()), ("s", self.s.to_string())]
    }
    fn emit(&self, n: usize) -> Option<Emission> {
        let mut em = Emission::default();
        self.emit_ray(&mut em, None, n);
        for k in 1..=n {
            for t in strings(k - 1) {
                self.emit_ray(&mut em, Some(&t), n);
            }
        }
        if n >= 1 {
            let len = self.c * f64::dyadic(n as u32);
            for t in strings(n - 1).filter(|t| !t.is_empty()) {
                let target = vertex(Some(&t), 0);
                let (p, j) = left_chain_parent(&t);
                em.edge(format!("tl{t}"), vertex(p.as_deref(), j), target.clone(), len);
                let (p, j) = right_chain_parent(&t);
                em.edge(format!("tr{t}"), vertex(p.as_deref(), j), target, len);
            }
        }
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        Schedule { summability: Summability::Diverging, min_length: None }
    }
    fn basepoint(&self) -> Option<String> {
        Some(vertex(None, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_parents() {
        assert_eq!(left_chain_parent("0"), (Some(String::new()), -1));
        assert_eq!(left_chain_parent("011"), (Some(String::new()), -3));
        assert_eq!(left_chain_parent("11"), (None, 2));
        assert_eq!(right_chain_parent("1"), (Some(String::new()), 1));
        assert_eq!(right_chain_parent("100"), (Some(String::new()), 3));
        assert_eq!(right_chain_parent("00"), (None, -2));
        assert_eq!(right_chain_parent("0110"), (Some("01".into()), 2));
    }

    #[test]
    fn thin_edges_follow_the_declared_schedule() {
        let g = Antares::new(1.0, 1.5).unwrap();
        let t = g.truncate(4);
        for i in 0..=4usize {
            let lvl: Vec<_> = t
                .graph
                .edges()
                .iter()
                .zip(&t.edge_level)
                .filter(|(e, &l)| l == i && !Antares::is_thick(&e.id))
                .map(|(e, _)| e.len)
                .collect();
            let expect_count = if i >= 2 { 1usize << i } else { 0 };
            assert_eq!(lvl.len(), expect_count, "level {i}");
            let declared = expect_count as f64 * f64::dyadic(i as u32);
            assert_eq!(lvl.iter().sum::<f64>(), declared);
        }
    }

    #[test]
    fn thick_sum_is_exactly_s() {
        let g = Antares::new(1.0, 1.5).unwrap();
        let s = BigRational::new(BigInt::from(3), BigInt::from(2));
        for n in 0..8 {
            assert_eq!(g.visible_thick_length(n) + g.declared_thick_tail(n), s, "n = {n}");
        }
    }

    #[test]
    fn connected_from_level_two() {
        let g = Antares::new(1.0, 1.5).unwrap();
        assert!(!g.truncate(1).graph.is_connected());
        for n in 2..7 {
            assert!(g.truncate(n).graph.is_connected(), "n = {n}");
        }
    }

    #[test]
    fn samples_cover_every_thick_vertex_once() {
        let g = Antares::new(1.0, 1.5).unwrap();
        let n = 5;
        let samples = g.circle_samples(n);
        let t = g.truncate(n);
        assert_eq!(samples.len(), t.graph.vertex_count());
        let mut sorted = samples.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), samples.len());
        assert_eq!(samples[0], "D0000:0");
        assert_eq!(samples.last().unwrap(), "L:-5");
    }
}
