//! Python bindings: `import mobius`.

use std::collections::BTreeMap;

use mobius_core::catalan;
use mobius_core::enumeration::first_triangulation;
use mobius_core::flips::{self, EdgeRef, FaceKind};
use mobius_core::quasicluster::{self, Step};
use mobius_core::{Arc, Error, MarkedStrip, Triangulation};
use num_bigint::BigUint;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(m) | Error::Usage(m) => PyValueError::new_err(m),
        Error::Resource(m) | Error::ModelViolation(m) => PyRuntimeError::new_err(m),
    }
}

fn strip(n: usize) -> PyResult<MarkedStrip> {
    MarkedStrip::new(n).map_err(to_py)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// An isotopy class of arcs in the Möbius strip.
#[pyclass(name = "Arc", module = "mobius", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyArc(Arc);

#[pymethods]
impl PyArc {
    #[staticmethod]
    fn two_sided(a: usize, b: usize) -> Self {
        PyArc(Arc::TwoSided { a, b })
    }

    #[staticmethod]
    fn one_sided(i: usize, j: usize, w: i64) -> Self {
        PyArc(Arc::OneSided { i, j, w })
    }

    #[staticmethod]
    fn core() -> Self {
        PyArc(Arc::Core)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_str(s).map(PyArc).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0 {
            Arc::TwoSided { .. } => "two_sided",
            Arc::OneSided { .. } => "one_sided",
            Arc::Core => "core",
        }
    }

    fn is_monogon(&self) -> bool {
        self.0.monogon_point().is_some()
    }

    #[allow(clippy::wrong_self_convention)]
    fn to_json(&self) -> String {
        json(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Arc.{}", self.0)
    }
}

/// The Möbius strip with `n` marked points on its boundary.
#[pyclass(name = "Strip", module = "mobius", frozen)]
struct PyStrip(MarkedStrip);

#[pymethods]
impl PyStrip {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        strip(n).map(PyStrip)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn arcs(&self) -> Vec<PyArc> {
        self.0.all_arcs().into_iter().map(PyArc).collect()
    }

    fn canonicalize(&self, arc: PyArc) -> PyResult<PyArc> {
        self.0.canonicalize(&arc.0).map(PyArc).map_err(to_py)
    }

    fn crossing_number(&self, a: PyArc, b: PyArc) -> PyResult<u32> {
        self.0.crossing_number(&a.0, &b.0).map_err(to_py)
    }

    fn compatible(&self, a: PyArc, b: PyArc) -> PyResult<bool> {
        self.0.compatible(&a.0, &b.0).map_err(to_py)
    }

    fn triangulation(&self, arcs: Vec<PyArc>) -> PyResult<PyTriangulation> {
        Triangulation::from_arcs(&self.0, arcs.into_iter().map(|a| a.0)).map(PyTriangulation).map_err(to_py)
    }

    fn triangulations(&self) -> Vec<PyTriangulation> {
        mobius_core::enumerate_triangulations(&self.0).into_iter().map(PyTriangulation).collect()
    }

    fn first_triangulation(&self) -> PyTriangulation {
        PyTriangulation(first_triangulation(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Strip({})", self.0.n())
    }
}

fn edge_name(e: &EdgeRef) -> String {
    e.to_string()
}

/// A maximal set of pairwise compatible arcs.
#[pyclass(name = "Triangulation", module = "mobius", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTriangulation(Triangulation);

#[pymethods]
impl PyTriangulation {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        let t: Triangulation = serde_json::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))?;
        t.validate().map_err(to_py)?;
        Ok(PyTriangulation(t))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn arcs(&self) -> Vec<PyArc> {
        self.0.arcs().iter().copied().map(PyArc).collect()
    }

    /// `(kind, sides)` for each face, sides named as strings.
    fn faces(&self) -> PyResult<Vec<(String, Vec<String>)>> {
        let fs = flips::faces(&self.0.strip(), &self.0).map_err(to_py)?;
        Ok(fs
            .iter()
            .map(|f| {
                let kind = match f.kind {
                    FaceKind::Triangle => "triangle",
                    FaceKind::QuasiTriangle => "quasi_triangle",
                    FaceKind::AntiSelfFolded => "anti_self_folded",
                };
                (kind.to_string(), f.sides.iter().map(edge_name).collect())
            })
            .collect())
    }

    /// Returns the flipped triangulation and the arc that replaced `arc`.
    fn flip(&self, arc: PyArc) -> PyResult<(PyTriangulation, PyArc)> {
        let (t, added) = flips::flip(&self.0.strip(), &self.0, &arc.0).map_err(to_py)?;
        Ok((PyTriangulation(t), PyArc(added)))
    }

    fn __contains__(&self, arc: PyArc) -> bool {
        self.0.contains(&arc.0)
    }

    fn __len__(&self) -> usize {
        self.0.arcs().len()
    }

    fn to_json(&self) -> String {
        json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Triangulation({})", self.0)
    }
}

#[derive(FromPyObject)]
enum StepArg {
    Slot(usize),
    Arc(PyArc),
}

impl From<StepArg> for Step {
    fn from(s: StepArg) -> Step {
        match s {
            StepArg::Slot(k) => Step::Slot(k),
            StepArg::Arc(a) => Step::Arc(a.0),
        }
    }
}

/// A triangulation with one cluster variable per arc. Variables are exposed
/// as strings in the syntax accepted by the Rust parser, e.g.
/// `(x2^2 + y1*y2)/x1`.
#[pyclass(name = "Seed", module = "mobius", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySeed(quasicluster::Seed);

#[pymethods]
impl PySeed {
    #[new]
    fn new(triangulation: PyTriangulation) -> PyResult<Self> {
        let t = triangulation.0;
        quasicluster::initial_seed(&t.strip(), &t).map(PySeed).map_err(to_py)
    }

    /// The seed on the lexicographically first triangulation of M_n.
    #[staticmethod]
    fn canonical(n: usize) -> PyResult<Self> {
        Ok(PySeed(quasicluster::canonical_seed(&strip(n)?)))
    }

    #[getter]
    fn triangulation(&self) -> PyTriangulation {
        PyTriangulation(self.0.triangulation().clone())
    }

    /// `(arc, variable)` per slot, in slot order.
    #[getter]
    fn slots(&self) -> Vec<(PyArc, String)> {
        self.0.slots().iter().map(|s| (PyArc(s.arc), s.variable.to_string())).collect()
    }

    fn variable(&self, arc: PyArc) -> PyResult<String> {
        self.0
            .variable(&arc.0)
            .map(ToString::to_string)
            .ok_or_else(|| PyIndexError::new_err(format!("{} is not in the seed", arc.0)))
    }

    /// The exchange relation at `arc`: its kind and the side bound to each role.
    fn relation(&self, arc: PyArc) -> PyResult<(String, BTreeMap<String, String>)> {
        let t = self.0.triangulation();
        let r = quasicluster::classify_mutation(&t.strip(), t, &arc.0).map_err(to_py)?;
        let bindings = r.bindings.iter().map(|(role, e)| (format!("{role:?}").to_lowercase(), edge_name(e))).collect();
        Ok((r.kind.name().to_string(), bindings))
    }

    /// Mutates at a 0-based slot index or at an arc.
    fn mutate(&self, step: StepArg) -> PyResult<PySeed> {
        self.walk(vec![step])
    }

    fn walk(&self, steps: Vec<StepArg>) -> PyResult<PySeed> {
        let steps: Vec<Step> = steps.into_iter().map(Step::from).collect();
        quasicluster::walk_end(&self.0, &steps).map(PySeed).map_err(to_py)
    }

    fn is_laurent(&self) -> bool {
        let allowed = (0..self.0.n() as u16).map(mobius_core::Var::X).collect();
        self.0.slots().iter().all(|s| s.variable.is_laurent_in(&allowed))
    }

    fn to_json(&self) -> String {
        json(&self.0)
    }

    fn __repr__(&self) -> String {
        let vars: Vec<String> = self.0.slots().iter().map(|s| format!("{}: {}", s.arc, s.variable)).collect();
        format!("Seed({})", vars.join(", "))
    }
}

#[pyfunction]
fn count_closed_form(n: i64) -> PyResult<BigUint> {
    mobius_core::count_closed_form(n).map_err(to_py)
}

#[pyfunction]
fn count_recurrence(n: i64) -> PyResult<BigUint> {
    mobius_core::count_recurrence(n).map_err(to_py)
}

#[pyfunction]
fn catalan_number(k: i64) -> PyResult<BigUint> {
    catalan::catalan(k).map_err(to_py)
}

/// The flip graph of M_n as DOT or JSON text.
#[pyfunction]
#[pyo3(signature = (n, format = "dot"))]
fn flip_graph(n: usize, format: &str) -> PyResult<String> {
    let f: flips::GraphFormat = format.parse().map_err(to_py)?;
    let g = flips::flip_graph(n).map_err(to_py)?;
    let bytes = flips::export_graph(&g, f).map_err(to_py)?;
    Ok(String::from_utf8(bytes).expect("utf-8 export"))
}

/// Mutation closure of the canonical seed, as a dict.
#[pyfunction]
#[pyo3(signature = (n, exhaustive = true))]
fn census(py: Python<'_>, n: usize, exhaustive: bool) -> PyResult<Py<PyAny>> {
    let s = strip(n)?;
    let r = py.detach(|| quasicluster::cluster_census(&s, exhaustive)).map_err(to_py)?;
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (serde_json::to_string(&r).expect("serializable"),))?.unbind())
}

/// Runs the counting cross-checks; returns `(all_passed, report)`.
#[pyfunction]
#[pyo3(signature = (max_n, brute_ceiling = 6))]
fn verify(max_n: usize, brute_ceiling: usize) -> PyResult<(bool, String)> {
    let r = mobius_core::verify_counts(max_n, brute_ceiling).map_err(to_py)?;
    Ok((r.all_passed(), r.to_string()))
}

#[pymodule]
fn mobius(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArc>()?;
    m.add_class::<PyStrip>()?;
    m.add_class::<PyTriangulation>()?;
    m.add_class::<PySeed>()?;
    m.add_function(wrap_pyfunction!(count_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(count_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(catalan_number, m)?)?;
    m.add_function(wrap_pyfunction!(flip_graph, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
