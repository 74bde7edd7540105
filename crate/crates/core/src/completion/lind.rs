//! Realizing a finite metric sample as frontier limits of a graph.
//!
//! For sample points `u_1, ..., u_k` the graph has a column of vertices
//! `z^r_i` (row `r >= i`) for each point. Rows are joined vertically by
//! edges of length `2^-r` between rows `r` and `r+1`; within row `r` every
//! two present columns are joined by an edge of length `d_X(u_i, u_j)`.
//! Level `n` of the generator emits row `n + 1`.
//!
//! Horizontal edges satisfy the triangle inequality and vertical edges only
//! add length, so two vertices in one row are exactly `d_X` apart.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{Emission, LazyGraph, Schedule, Summability};
use crate::length::{Length, F64_REL_TOL};
use crate::metric::{self, Distance};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LindError {
    #[error("malformed sample: {0}")]
    Shape(String),
    #[error("d({0}, {0}) must be 0")]
    Diagonal(String),
    #[error("d({0}, {1}) must be positive")]
    NonPositive(String, String),
    #[error("d({0}, {1}) differs from d({1}, {0})")]
    Asymmetric(String, String),
    #[error("triangle inequality fails for ({0}, {1}, {2})")]
    Triangle(String, String, String),
}

/// A finite metric space given by a distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LindSample {
    pub points: Vec<String>,
    pub distances: Vec<Vec<f64>>,
}

impl LindSample {
    pub fn from_json(text: &str) -> Result<Self, LindError> {
        let s: LindSample = serde_json::from_str(text).map_err(|e| LindError::Shape(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks the metric axioms; the triangle inequality with the usual
    /// float tolerance.
    pub fn validate(&self) -> Result<(), LindError> {
        let k = self.points.len();
        if k == 0 {
            return Err(LindError::Shape("no points".into()));
        }
        if self.distances.len() != k || self.distances.iter().any(|r| r.len() != k) {
            return Err(LindError::Shape(format!("distance matrix must be {k} x {k}")));
        }
        let name = |i: usize| self.points[i].clone();
        let d = &self.distances;
        for i in 0..k {
            if d[i][i] != 0.0 {
                return Err(LindError::Diagonal(name(i)));
            }
            for j in 0..k {
                if i != j && !(d[i][j] > 0.0 && d[i][j].is_finite()) {
                    return Err(LindError::NonPositive(name(i), name(j)));
                }
                if d[i][j] != d[j][i] {
                    return Err(LindError::Asymmetric(name(i), name(j)));
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for m in 0..k {
                    if (d[i][m] + d[m][j]).clearly_lt(&d[i][j]) {
                        return Err(LindError::Triangle(name(i), name(m), name(j)));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct LindGraph {
    sample: LindSample,
}

impl LindGraph {
    pub fn new(sample: LindSample) -> Result<Self, LindError> {
        sample.validate()?;
        Ok(LindGraph { sample })
    }

    pub fn sample(&self) -> &LindSample {
        &self.sample
    }

    /// Vertex `z^row` of the column of point `i` (0-based).
    pub fn vertex_id(&self, row: usize, i: usize) -> String {
        format!("z{row}_{}", self.sample.points[i])
    }

    /// Frontier vertex of column `i` in `G_n`.
    pub fn frontier_vertex(&self, n: usize, i: usize) -> String {
        self.vertex_id(n + 1, i)
    }

    /// For every pair of sample points, `(i, j, d_X, distance in G_depth
    /// between the frontier vertices of the two columns)`. Both columns
    /// exist from level `max(i, j)` on, so `depth >= k - 1` is required.
    pub fn column_distances(&self, depth: usize) -> Vec<(usize, usize, f64, f64)> {
        let k = self.sample.len();
        assert!(depth + 1 >= k, "depth too small for all columns");
        let t = self.truncate(depth);
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let res = metric::dist_ids(&t.graph, &self.frontier_vertex(depth, i), &self.frontier_vertex(depth, j)).expect("vertices exist");
                let deep = match res.value {
                    Distance::Finite(x) => x,
                    Distance::Infinite => f64::INFINITY,
                };
                out.push((i, j, self.sample.distances[i][j], deep));
            }
        }
        out
    }
}

impl LazyGraph for LindGraph {
    fn name(&self) -> &'static str {
        "lind"
    }
    fn params(&self) -> Vec<(&'static str, String)> {
        vec![("points", self.sample.points.join(","))]
    }
    fn emit(&self, n: usize) -> Option<Emission> {
        let row = n + 1;
        let cols = row.min(self.sample.len());
        let mut em = Emission::default();
        for i in 0..cols {
            em.vertex(self.vertex_id(row, i));
        }
        // columns present in the previous row continue downwards
        for i in 0..(row - 1).min(self.sample.len()) {
            let len = f64::dyadic((row - 1) as u32);
            em.edge(format!("y{}_{}", row - 1, self.sample.points[i]), self.vertex_id(row - 1, i), self.vertex_id(row, i), len);
        }
        for i in 0..cols {
            for j in i + 1..cols {
                em.edge(
                    format!("x{row}_{}_{}", self.sample.points[i], self.sample.points[j]),
                    self.vertex_id(row, i),
                    self.vertex_id(row, j),
                    self.sample.distances[i][j],
                );
            }
        }
        Some(em)
    }
    fn schedule(&self) -> Schedule {
        if self.sample.len() == 1 {
            Schedule { summability: Summability::Converging { limit: Some(1.0) }, min_length: None }
        } else {
            Schedule { summability: Summability::Diverging, min_length: None }
        }
    }
    fn basepoint(&self) -> Option<String> {
        Some(self.vertex_id(1, 0))
    }
}

/// Relative slack allowed when comparing realized and sample distances.
pub const ISOMETRY_TOL: f64 = F64_REL_TOL;
