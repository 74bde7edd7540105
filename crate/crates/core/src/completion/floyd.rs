//! Floyd length assignments: an edge at hop distance `n` from a basepoint
//! gets length `f(n)`.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::generators::{Emission, LazyGraph, Schedule, Summability, Truncation};
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FloydError {
    #[error("unknown decay function {0}; expected pow2, pow4 or exp:<lambda>")]
    UnknownDecay(String),
    #[error("decay function is not positive at n = {0}")]
    NonPositive(usize),
    #[error("decay function increases at n = {0}")]
    Increasing(usize),
    #[error("generator {0} does not guarantee exact hop distances in its truncations")]
    HopDistancesInexact(String),
    #[error("basepoint {0} is not in the first truncation")]
    MissingBasepoint(String),
    #[error("generator has no default basepoint")]
    NoBasepoint,
}

/// Named decay functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decay {
    /// `2^-n`
    Pow2,
    /// `4^-n`
    Pow4,
    /// `exp(-lambda n)`
    Exp(f64),
}

impl Decay {
    /// Accepts `pow2`, `pow4`, `exp:<lambda>`, optionally prefixed by `f=`.
    pub fn parse(s: &str) -> Result<Decay, FloydError> {
        let body = s.trim().strip_prefix("f=").unwrap_or(s.trim());
        match body {
            "pow2" => Ok(Decay::Pow2),
            "pow4" => Ok(Decay::Pow4),
            _ => body
                .strip_prefix("exp:")
                .and_then(|l| l.parse::<f64>().ok())
                .filter(|l| l.is_finite())
                .map(Decay::Exp)
                .ok_or_else(|| FloydError::UnknownDecay(s.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Decay::Pow2 => "pow2".into(),
            Decay::Pow4 => "pow4".into(),
            Decay::Exp(l) => format!("exp:{l}"),
        }
    }

    pub fn value(&self, n: usize) -> f64 {
        match self {
            Decay::Pow2 => (-(n as f64)).exp2(),
            Decay::Pow4 => (-2.0 * n as f64).exp2(),
            Decay::Exp(l) => (-l * n as f64).exp(),
        }
    }
}

/// Result of checking `lambda f(n-1) <= f(n) <= f(n-1)` on `0..=range`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Admissibility {
    /// Largest `lambda` that works on the checked range.
    pub lambda: f64,
    pub range: usize,
}

pub fn check_decay(f: Decay, range: usize) -> Result<Admissibility, FloydError> {
    let mut lambda = 1.0f64;
    for n in 0..=range {
        let cur = f.value(n);
        if !(cur > 0.0) {
            return Err(FloydError::NonPositive(n));
        }
        if n > 0 {
            let ratio = cur / f.value(n - 1);
            if ratio > 1.0 {
                return Err(FloydError::Increasing(n));
            }
            lambda = lambda.min(ratio);
        }
    }
    Ok(Admissibility { lambda, range })
}

/// Breadth-first hop distances from `p`.
pub fn hop_distances<L: crate::length::Length>(g: &WeightedGraph<L>, p: usize) -> Vec<Option<usize>> {
    let mut hops = vec![None; g.vertex_count()];
    hops[p] = Some(0);
    let mut queue = VecDeque::from([p]);
    while let Some(x) = queue.pop_front() {
        let h = hops[x].unwrap();
        for &e in g.incident(x) {
            let y = g.edge(e).other(x);
            if hops[y].is_none() {
                hops[y] = Some(h + 1);
                queue.push_back(y);
            }
        }
    }
    hops
}

/// A generator with its lengths replaced by `f(hop distance)`.
pub struct FloydGraph {
    base: Box<dyn LazyGraph>,
    basepoint: String,
    decay: Decay,
    admissibility: Admissibility,
}

impl FloydGraph {
    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn basepoint_id(&self) -> &str {
        &self.basepoint
    }

    pub fn admissibility(&self) -> Admissibility {
        self.admissibility
    }

    fn relength(&self, t: &Truncation) -> (Vec<Option<usize>>, Vec<f64>) {
        let p = t.graph.vertex(&self.basepoint).expect("basepoint present from level 0");
        let hops = hop_distances(&t.graph, p);
        let lens = t
            .graph
            .edges()
            .iter()
            .map(|e| {
                let h = match (hops[e.u], hops[e.v]) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => panic!("edge {} unreachable from the basepoint", e.id),
                };
                assert!(h <= self.admissibility.range, "hop distance {h} beyond the validated range");
                self.decay.value(h)
            })
            .collect();
        (hops, lens)
    }
}

/// Wrap `base` with Floyd lengths. `levels` is the deepest truncation that
/// will be requested; the decay function is validated on every hop
/// distance that occurs up to that level.
pub fn floyd_lengths(base: Box<dyn LazyGraph>, basepoint: Option<&str>, decay: Decay, levels: usize) -> Result<FloydGraph, FloydError> {
    if !base.hop_exact() {
        return Err(FloydError::HopDistancesInexact(base.name().to_string()));
    }
    let basepoint = match basepoint {
        Some(b) => b.to_string(),
        None => base.basepoint().ok_or(FloydError::NoBasepoint)?,
    };
    if base.truncate(0).graph.vertex(&basepoint).is_none() {
        return Err(FloydError::MissingBasepoint(basepoint));
    }
    let deepest = base.truncate(levels);
    let p = deepest.graph.vertex(&basepoint).expect("monotone");
    let range = hop_distances(&deepest.graph, p).into_iter().flatten().max().unwrap_or(0);
    let admissibility = check_decay(decay, range + 1)?;
    Ok(FloydGraph { base, basepoint, decay, admissibility })
}

impl LazyGraph for FloydGraph {
    fn name(&self) -> &'static str {
        self.base.name()
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        let mut p = self.base.params();
        p.push(("floyd", self.decay.name()));
        p.push(("basepoint", self.basepoint.clone()));
        p
    }
    fn emit(&self, n: usize) -> Option<Emission> {
        let mut em = self.base.emit(n)?;
        let t = self.base.truncate(n);
        let (_, lens) = self.relength(&t);
        for e in &mut em.edges {
            e.len = lens[t.graph.edge_ix(&e.id).expect("emitted edge is in the truncation")];
        }
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        Schedule { summability: Summability::Unknown, min_length: None }
    }
    fn basepoint(&self) -> Option<String> {
        Some(self.basepoint.clone())
    }
    fn hop_exact(&self) -> bool {
        true
    }
    fn truncate(&self, n: usize) -> Truncation {
        let mut t = self.base.truncate(n);
        let (_, lens) = self.relength(&t);
        t.graph = t.graph.map_lengths(|e| lens[t.graph.edge_ix(&e.id).unwrap()]).expect("decay is positive");
        t
    }
}
