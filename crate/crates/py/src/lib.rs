//! Python module `ltop`: finite weighted graphs, lazy generators and the
//! main analyses, with structured results returned as plain Python objects.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use ltop_core::completion::boundary::{boundary_profile, default_eps};
use ltop_core::completion::floyd::{floyd_lengths, Decay};
use ltop_core::completion::lind::{LindGraph, LindSample};
use ltop_core::completion::nst::nst_lengths;
use ltop_core::cyclespace::{cycle_basis, geodetic_generate, CycleSpaceElement};
use ltop_core::generators::{self, LazyGraph};
use ltop_core::length::exact_f64;
use ltop_core::linegraph::line_graph;
use ltop_core::metric::{dist, quotient, Point};
use ltop_core::tours::{euler_to_hamilton, euler_tour, hamilton_verify};
use ltop_core::WeightedGraph;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serialize through JSON into dicts, lists and numbers.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite multigraph with positive float edge lengths.
#[pyclass(module = "ltop", frozen)]
struct Graph {
    inner: WeightedGraph<f64>,
}

impl Graph {
    fn point(&self, p: &Bound<'_, PyAny>) -> PyResult<Point<f64>> {
        if let Ok(id) = p.extract::<String>() {
            return Ok(Point::Vertex(self.inner.vertex_or_err(&id).map_err(err)?));
        }
        let (id, offset): (String, f64) = p.extract()?;
        let edge = self.inner.edge_or_err(&id).map_err(err)?;
        Ok(Point::OnEdge { edge, offset })
    }

    fn ids(&self, edges: &[usize]) -> Vec<String> {
        edges.iter().map(|&e| self.inner.edge(e).id.clone()).collect()
    }
}

#[pymethods]
impl Graph {
    /// Build from `(id, u, v, length)` tuples; vertices are created on use.
    #[new]
    fn new(edges: Vec<(String, String, String, f64)>) -> PyResult<Self> {
        let mut g = WeightedGraph::new();
        for (id, u, v, len) in edges {
            g.ensure_vertex(&u);
            g.ensure_vertex(&v);
            g.add_edge(id, &u, &v, len).map_err(err)?;
        }
        Ok(Graph { inner: g })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Graph { inner: WeightedGraph::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertex_ids().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, String, f64)> {
        self.inner
            .edges()
            .iter()
            .map(|e| (e.id.clone(), self.inner.vertex_id(e.u).to_string(), self.inner.vertex_id(e.v).to_string(), e.len))
            .collect()
    }

    fn total_length(&self) -> f64 {
        self.inner.total_length()
    }

    /// Distance between points, each a vertex id or `(edge_id, offset)`.
    /// Returns `(value or None, witness edge ids)`.
    fn dist(&self, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<(Option<f64>, Vec<String>)> {
        let r = dist(&self.inner, &self.point(x)?, &self.point(y)?).map_err(err)?;
        Ok((r.value.finite().copied(), self.ids(&r.witness_edges())))
    }

    /// Fundamental cycles as lists of edge ids.
    fn cycle_basis(&self) -> Vec<Vec<String>> {
        cycle_basis(&self.inner).iter().map(|c| c.ids(&self.inner)).collect()
    }

    /// Geodetic circuits summing to the element given by edge ids, computed
    /// with exact arithmetic.
    fn geodetic(&self, element: Vec<String>) -> PyResult<Vec<Vec<String>>> {
        let q = self.inner.map_lengths(|e| exact_f64(e.len).expect("finite")).map_err(err)?;
        let z = CycleSpaceElement::from_ids(&q, &element).map_err(err)?;
        let fam = geodetic_generate(&q, &z).map_err(err)?;
        Ok(fam.family.circuits.iter().map(|c| c.ids(&q)).collect())
    }

    /// Euler tour as `(start vertex, edge ids)`.
    fn euler_tour(&self) -> PyResult<(String, Vec<String>)> {
        let t = euler_tour(&self.inner).map_err(err)?;
        Ok((self.inner.vertex_id(t.start).to_string(), self.ids(&t.edges)))
    }

    /// Hamilton cycle of the line graph from the Euler tour: `(vertices,
    /// length, valid)`, where `valid` is the independent verification.
    fn hamilton_from_euler(&self) -> PyResult<(Vec<String>, f64, bool)> {
        let t = euler_tour(&self.inner).map_err(err)?;
        let h = euler_to_hamilton(&self.inner, &t.edges, t.start).map_err(err)?;
        let ok = hamilton_verify(&h.line_graph, &h.vertices).valid;
        Ok((h.vertices, h.length, ok))
    }

    fn line_graph(&self) -> PyResult<Graph> {
        Ok(Graph { inner: line_graph(&self.inner).map_err(err)? })
    }

    /// Normal-spanning-tree lengths per edge id, rooted at `root` (default:
    /// the first vertex).
    #[pyo3(signature = (root=None))]
    fn nst_lengths(&self, root: Option<&str>) -> PyResult<Vec<(String, f64)>> {
        let r = match root {
            Some(id) => self.inner.vertex_or_err(id).map_err(err)?,
            None => 0,
        };
        let a = nst_lengths::<f64, f64>(&self.inner, r).map_err(err)?;
        Ok(self.inner.edges().iter().zip(a.lengths).map(|(e, l)| (e.id.clone(), l)).collect())
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// A lazily generated infinite graph, built from `name?param=value&...`.
#[pyclass(module = "ltop", frozen)]
struct Generator {
    inner: Box<dyn LazyGraph>,
}

#[pymethods]
impl Generator {
    /// `floyd` replaces the lengths by a decay (`pow2`, `pow4`, `exp:<l>`)
    /// validated up to level `floyd_depth`.
    #[new]
    #[pyo3(signature = (invocation, floyd=None, floyd_depth=16))]
    fn new(invocation: &str, floyd: Option<&str>, floyd_depth: usize) -> PyResult<Self> {
        let base = generators::build(invocation).map_err(err)?;
        let inner: Box<dyn LazyGraph> = match floyd {
            None => base,
            Some(f) => Box::new(floyd_lengths(base, None, Decay::parse(f).map_err(err)?, floyd_depth).map_err(err)?),
        };
        Ok(Generator { inner })
    }

    #[getter]
    fn invocation(&self) -> String {
        self.inner.invocation()
    }

    fn truncate(&self, level: usize) -> Graph {
        Graph { inner: self.inner.truncate(level).graph }
    }

    fn frontier(&self, level: usize) -> Vec<String> {
        self.inner.truncate(level).frontier_ids()
    }

    /// Vertex classes at distance tolerance `tau`.
    fn quotient(&self, level: usize, tau: f64) -> PyResult<Vec<Vec<String>>> {
        if !(tau > 0.0) {
            return Err(PyValueError::new_err("tau must be positive"));
        }
        Ok(quotient(self.inner.as_ref(), level, tau).classes)
    }

    /// Boundary profile as a dict; `eps` defaults to 2^-1 .. 2^-10.
    #[pyo3(signature = (levels, depth, eps=None))]
    fn boundary<'py>(&self, py: Python<'py>, levels: Vec<usize>, depth: usize, eps: Option<Vec<f64>>) -> PyResult<Bound<'py, PyAny>> {
        let eps = eps.unwrap_or_else(default_eps);
        let p = boundary_profile(self.inner.as_ref(), &levels, depth, &eps).map_err(err)?;
        to_py(py, &p)
    }

    fn __repr__(&self) -> String {
        format!("Generator({:?})", self.inner.invocation())
    }
}

/// Generator catalog as a list of dicts.
#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &generators::catalog())
}

/// `(a, b, d_X, distance at depth)` for each pair of sample points.
#[pyfunction]
fn lind_distances<'py>(py: Python<'py>, points: Vec<String>, distances: Vec<Vec<f64>>, depth: usize) -> PyResult<Bound<'py, PyAny>> {
    let sample = LindSample { points, distances };
    sample.validate().map_err(err)?;
    if depth + 1 < sample.len() {
        return Err(PyValueError::new_err("depth too small for the sample"));
    }
    let g = LindGraph::new(sample).map_err(err)?;
    let pts = g.sample().points.clone();
    let rows: Vec<(String, String, f64, f64)> =
        g.column_distances(depth).into_iter().map(|(i, j, dx, deep)| (pts[i].clone(), pts[j].clone(), dx, deep)).collect();
    rows.into_pyobject(py).map(|l| l.into_any())
}

#[pymodule]
fn ltop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Generator>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(lind_distances, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
