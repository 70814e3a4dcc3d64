//! Python bindings for the epgap toolkit.
//!
//! Structured results (decompositions, certificates, reports) come back as
//! plain dicts and lists decoded from their JSON form.

use std::sync::Arc;

use epgap::epd::{
    bound_th1, bound_th2, cover_exact, epgap_winwin, kostochka_threshold, pack_exact, verify_certificate,
};
use epgap::graph::{generate as generate_family, Family};
use epgap::harness::{run_verification_suite, LemmaId, SuiteConfig};
use epgap::io::{parse_graph6, write_graph6};
use epgap::minors::find_minor_model;
use epgap::width::{pathwidth_exact, treewidth_exact};
use epgap::{Error, Limits};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

create_exception!(epgap_py, EpgapError, PyException);
create_exception!(epgap_py, SizeLimitError, EpgapError);

fn err(e: Error) -> PyErr {
    match e {
        Error::SizeLimit { .. } => SizeLimitError::new_err(e.to_string()),
        Error::Parameter(_) | Error::Parse { .. } => PyValueError::new_err(e.to_string()),
        _ => EpgapError::new_err(e.to_string()),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| EpgapError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(frozen, name = "Graph", module = "epgap_py")]
struct PyGraph {
    inner: Arc<epgap::Graph>,
}

impl PyGraph {
    fn wrap(g: epgap::Graph) -> Self {
        PyGraph { inner: Arc::new(g) }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        epgap::Graph::new(n, edges).map(PyGraph::wrap).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        parse_graph6(text.trim()).map(PyGraph::wrap).map_err(err)
    }

    fn to_graph6(&self) -> PyResult<String> {
        write_graph6(&self.inner).map_err(err)
    }

    /// Builds a named family, e.g. `Graph.generate("xi", r=3)`.
    #[staticmethod]
    #[pyo3(signature = (family, **params))]
    fn generate(py: Python<'_>, family: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        let spec = PyDict::new(py);
        if let Some(p) = params {
            spec.update(p.as_mapping())?;
        }
        spec.set_item("family", family)?;
        let text: String = py.import("json")?.call_method1("dumps", (spec,))?.extract()?;
        let family: Family = serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        generate_family(&family).map(PyGraph::wrap).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        Ok(self.neighbors(v)?.len())
    }

    fn hash_hex(&self) -> String {
        self.inner.hash_hex()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        other.cast::<PyGraph>().is_ok_and(|o| o.get().inner == self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Exact treewidth and an optimal decomposition.
#[pyfunction]
fn treewidth(py: Python<'_>, g: &PyGraph) -> PyResult<(usize, Py<PyAny>)> {
    let (w, td) = treewidth_exact(&g.inner, &Limits::from_env()).map_err(err)?;
    Ok((w, to_py(py, &td)?))
}

/// Exact pathwidth and an optimal path decomposition.
#[pyfunction]
fn pathwidth(py: Python<'_>, g: &PyGraph) -> PyResult<(usize, Py<PyAny>)> {
    let (w, td) = pathwidth_exact(&g.inner, &Limits::from_env()).map_err(err)?;
    Ok((w, to_py(py, &td)?))
}

/// Branch sets of a model of `pattern` in `host`, or `None`.
#[pyfunction]
fn find_minor(host: &PyGraph, pattern: &PyGraph) -> PyResult<Option<Vec<Vec<usize>>>> {
    let model = find_minor_model(&host.inner, &pattern.inner, &Limits::from_env()).map_err(err)?;
    Ok(model.map(|m| m.branch_sets.iter().map(|s| s.to_vec()).collect()))
}

/// Packing number with disjoint models given as lists of branch sets.
#[pyfunction]
fn pack(host: &PyGraph, pattern: &PyGraph) -> PyResult<(usize, Vec<Vec<Vec<usize>>>)> {
    let (k, models) = pack_exact(&host.inner, &pattern.inner, &Limits::from_env()).map_err(err)?;
    let models = models.iter().map(|m| m.branch_sets.iter().map(|s| s.to_vec()).collect()).collect();
    Ok((k, models))
}

/// Covering number with a minimum hitting set.
#[pyfunction]
fn cover(host: &PyGraph, pattern: &PyGraph) -> PyResult<(usize, Vec<usize>)> {
    let (c, set) = cover_exact(&host.inner, &pattern.inner, &Limits::from_env()).map_err(err)?;
    Ok((c, set.to_vec()))
}

/// Win/win certificate for `k`, re-verified; the verdict is under `"verdict"`.
#[pyfunction(name = "epgap")]
fn py_epgap(py: Python<'_>, host: &PyGraph, pattern: &PyGraph, k: usize) -> PyResult<Py<PyAny>> {
    let limits = Limits::from_env();
    let ww = epgap_winwin(&host.inner, &pattern.inner, k, &limits).map_err(err)?;
    let verdict = verify_certificate(&host.inner, &pattern.inner, k, &ww.certificate, &limits).map_err(err)?;
    let mut value = serde_json::to_value(&ww).map_err(|e| EpgapError::new_err(e.to_string()))?;
    value["verdict"] = serde_json::to_value(&verdict).map_err(|e| EpgapError::new_err(e.to_string()))?;
    to_py(py, &value)
}

/// Treewidth bound for `K_{2,r}` and `Ξ_r` patterns, as a Python int.
#[pyfunction(name = "bound_th2")]
fn py_bound_th2(py: Python<'_>, k: u64, r: u64) -> PyResult<Py<PyAny>> {
    let value = bound_th2(k, r).map_err(err)?;
    Ok(py.import("builtins")?.getattr("int")?.call1((value.to_string(),))?.unbind())
}

/// Treewidth bound for pathwidth-two patterns: the ceiling as an int, plus the symbolic form.
#[pyfunction(name = "bound_th1")]
fn py_bound_th1(py: Python<'_>, k: u64, r: u64) -> PyResult<(Py<PyAny>, String)> {
    let b = bound_th1(k, r).map_err(err)?;
    let value = py.import("builtins")?.getattr("int")?.call1((b.ceiling.to_string(),))?.unbind();
    Ok((value, b.symbolic()))
}

#[pyfunction(name = "kostochka_threshold")]
fn py_kostochka_threshold(t: u64) -> PyResult<f64> {
    kostochka_threshold(t).map_err(err)
}

/// Runs the seeded verification suite and returns one report dict per lemma.
#[pyfunction]
#[pyo3(signature = (seed=42, trials=100, lemmas=None, threads=None, fault=false))]
fn verify(
    py: Python<'_>,
    seed: u64,
    trials: usize,
    lemmas: Option<Vec<String>>,
    threads: Option<usize>,
    fault: bool,
) -> PyResult<Py<PyAny>> {
    let mut config = SuiteConfig::new(seed, trials);
    if let Some(names) = lemmas {
        config.lemmas = names.iter().map(|l| l.parse::<LemmaId>()).collect::<Result<_, _>>().map_err(err)?;
    }
    config.threads = threads;
    config.fault = fault;
    let reports = run_verification_suite(&config).map_err(err)?;
    to_py(py, &reports)
}

#[pymodule]
fn epgap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("EpgapError", m.py().get_type::<EpgapError>())?;
    m.add("SizeLimitError", m.py().get_type::<SizeLimitError>())?;
    m.add_function(wrap_pyfunction!(treewidth, m)?)?;
    m.add_function(wrap_pyfunction!(pathwidth, m)?)?;
    m.add_function(wrap_pyfunction!(find_minor, m)?)?;
    m.add_function(wrap_pyfunction!(pack, m)?)?;
    m.add_function(wrap_pyfunction!(cover, m)?)?;
    m.add_function(wrap_pyfunction!(py_epgap, m)?)?;
    m.add_function(wrap_pyfunction!(py_bound_th2, m)?)?;
    m.add_function(wrap_pyfunction!(py_bound_th1, m)?)?;
    m.add_function(wrap_pyfunction!(py_kostochka_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
