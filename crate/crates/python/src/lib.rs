//! Python bindings: graphs, cycles as `{id: int}` dicts, reports as plain
//! Python objects.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use singlat::cycles;
use singlat::{io, kulikov, report, seifert};
use singlat::{Cycle, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Converts any serialisable value through JSON into Python objects.
fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "ResolutionGraph", module = "pysinglat")]
struct PyGraph {
    inner: singlat::ResolutionGraph,
}

impl PyGraph {
    fn cycle(&self, coeffs: BTreeMap<String, i64>) -> PyResult<Cycle> {
        Cycle::from_map(&self.inner, &coeffs).map_err(err)
    }

    fn map(&self, c: &Cycle) -> BTreeMap<String, i64> {
        c.to_map(&self.inner)
    }
}

#[pymethods]
impl PyGraph {
    /// `vertices`: `(id, self_int, genus)`; `edges`: `(a, b)` or `(a, b, mult)`.
    #[new]
    #[pyo3(signature = (vertices, edges = Vec::new()))]
    fn new(vertices: Vec<(String, i64, i64)>, edges: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let mut es = Vec::new();
        for e in edges {
            let parsed = match e.extract::<(String, String, i64)>() {
                Ok(t) => t,
                Err(_) => {
                    let (a, b) = e.extract::<(String, String)>()?;
                    (a, b, 1)
                }
            };
            es.push(parsed);
        }
        let inner = singlat::ResolutionGraph::from_parts(vertices, es).map_err(err)?;
        Ok(Self { inner })
    }

    /// Parses the `graph` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: io::parse_resolution_graph(text).map_err(err)? })
    }

    #[pyo3(signature = (name = "g"))]
    fn to_text(&self, name: &str) -> String {
        io::write_graph(name, &self.inner)
    }

    #[pyo3(signature = (name = "g"))]
    fn to_dot(&self, name: &str) -> String {
        io::emit_dot(name, &self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("ResolutionGraph({} vertices, {} edges)", self.inner.len(), self.inner.edge_count())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn vertices(&self) -> Vec<(String, i64, i64)> {
        self.inner.vertices().iter().map(|v| (v.id.clone(), v.self_int, v.genus)).collect()
    }

    fn edges(&self) -> Vec<(String, String, i64)> {
        self.inner
            .edges()
            .map(|(i, j, m)| (self.inner.vertex(i).id.clone(), self.inner.vertex(j).id.clone(), m))
            .collect()
    }

    fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.intersection_matrix()
    }

    fn determinant(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let s = self.inner.det_intersection().to_string();
        Ok(py.import("builtins")?.call_method1("int", (s,))?.unbind())
    }

    fn is_negative_definite(&self) -> bool {
        self.inner.is_negative_definite()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn intersect(&self, a: BTreeMap<String, i64>, b: BTreeMap<String, i64>) -> PyResult<i64> {
        self.inner.dot(&self.cycle(a)?, &self.cycle(b)?).map_err(err)
    }

    fn genus_of_cycle(&self, a: BTreeMap<String, i64>) -> PyResult<i64> {
        self.inner.genus_of_cycle(&self.cycle(a)?).map_err(err)
    }

    /// `Z_K` as `{id: fractions.Fraction}`.
    fn canonical_cycle<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let zk = self.inner.canonical_cycle().map_err(err)?;
        let map = zk.to_string_map(&self.inner).map_err(err)?;
        let fraction = py.import("fractions")?.getattr("Fraction")?;
        let out = PyDict::new(py);
        for (k, v) in map {
            out.set_item(k, fraction.call1((v,))?)?;
        }
        Ok(out)
    }

    fn is_numerically_gorenstein(&self) -> PyResult<bool> {
        self.inner.is_numerically_gorenstein().map_err(err)
    }

    fn fundamental_cycle(&self) -> PyResult<BTreeMap<String, i64>> {
        let (z, _) = cycles::fundamental_cycle(&self.inner).map_err(err)?;
        Ok(self.map(&z))
    }

    fn fundamental_genus(&self) -> PyResult<i64> {
        cycles::fundamental_genus(&self.inner).map_err(err)
    }

    fn is_rational(&self) -> PyResult<bool> {
        cycles::is_rational_graph(&self.inner).map_err(err)
    }

    fn is_numerically_kulikov(&self) -> PyResult<bool> {
        Ok(cycles::is_numerically_kulikov(&self.inner).map_err(err)?.holds)
    }

    fn characteristic_cycle(&self) -> PyResult<BTreeMap<String, i64>> {
        Ok(self.map(&cycles::characteristic_cycle(&self.inner).map_err(err)?.cycle))
    }

    /// `(sup p_a, witness)`.
    fn arithmetic_genus(&self) -> PyResult<(i64, BTreeMap<String, i64>)> {
        let (p, w) = cycles::arithmetic_genus_sup(&self.inner).map_err(err)?;
        Ok((p, self.map(&w)))
    }

    fn blow_up_smooth(&self, v: &str) -> PyResult<(PyGraph, String)> {
        let (g, i) = self.inner.blow_up_smooth(v).map_err(err)?;
        let id = g.vertex(i).id.clone();
        Ok((PyGraph { inner: g }, id))
    }

    fn blow_up_edge(&self, a: &str, b: &str) -> PyResult<(PyGraph, String)> {
        let (g, i) = self.inner.blow_up_edge(a, b).map_err(err)?;
        let id = g.vertex(i).id.clone();
        Ok((PyGraph { inner: g }, id))
    }

    fn contract(&self, v: &str) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: self.inner.contract(v).map_err(err)? })
    }

    /// `(minimal model, contracted ids in order)`.
    fn minimal_model(&self) -> PyResult<(PyGraph, Vec<String>)> {
        let m = self.inner.minimal_model().map_err(err)?;
        Ok((PyGraph { inner: m.graph }, m.contracted))
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        singlat::iso::is_isomorphic(&self.inner, &other.inner)
    }

    /// The analysis report as a dict.
    #[pyo3(signature = (arithmetic_genus = false))]
    fn analyze(&self, py: Python<'_>, arithmetic_genus: bool) -> PyResult<Py<PyAny>> {
        let rep = report::analyze(&self.inner, arithmetic_genus).map_err(err)?;
        to_py(py, &rep)
    }
}

#[pyfunction]
fn bp_graph(a: i64, b: i64, c: i64) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: seifert::bp_graph(a, b, c).map_err(err)? })
}

#[pyfunction]
fn hj_expansion(alpha: i64, beta: i64) -> PyResult<Vec<i64>> {
    seifert::hj_expansion(alpha, beta).map_err(err)
}

#[pyfunction]
fn tomaru_check(py: Python<'_>, a: i64, b: i64, c: i64) -> PyResult<Py<PyAny>> {
    let r = seifert::tomaru_check(a, b, c).map_err(err)?;
    let obj = to_py(py, &r)?;
    obj.bind(py).set_item("passed", r.passed())?;
    Ok(obj)
}

/// `[(a, b, c, passed)]` in triple order.
#[pyfunction]
fn tomaru_scan(a_max: i64, b_max: i64, c1_max: i64) -> Vec<(i64, i64, i64, bool)> {
    seifert::tomaru_scan(a_max, b_max, c1_max)
        .iter()
        .map(|row| (row.exponents.0, row.exponents.1, row.exponents.2, row.passed()))
        .collect()
}

#[pyfunction]
fn genus_check(py: Python<'_>, a: i64, b: i64, c: i64) -> PyResult<Py<PyAny>> {
    to_py(py, &seifert::bp_kulikov_genus_check(a, b, c).map_err(err)?)
}

/// Runs the Kulikov construction on a `fibre` file text and a blow-up script
/// text; returns the resulting graph and the property report (`None` when the
/// family is not minimal).
#[pyfunction]
fn kulikov_construct(py: Python<'_>, fibre: &str, script: &str) -> PyResult<(PyGraph, Py<PyAny>)> {
    let f = io::parse_fibre(fibre).map_err(err)?;
    let s = io::parse_script(script).map_err(err)?;
    let res = kulikov::kulikov_construct(&f, &s).map_err(err)?;
    let rep = if kulikov::is_minimal_family(&f) {
        Some(kulikov::verify_kulikov_properties(&f, &s).map_err(err)?)
    } else {
        None
    };
    Ok((PyGraph { inner: res.graph }, to_py(py, &rep)?))
}

#[pyfunction]
fn fibre_genus(fibre: &str) -> PyResult<i64> {
    kulikov::fibre_genus(&io::parse_fibre(fibre).map_err(err)?).map_err(err)
}

#[pymodule]
fn pysinglat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(bp_graph, m)?)?;
    m.add_function(wrap_pyfunction!(hj_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(tomaru_check, m)?)?;
    m.add_function(wrap_pyfunction!(tomaru_scan, m)?)?;
    m.add_function(wrap_pyfunction!(genus_check, m)?)?;
    m.add_function(wrap_pyfunction!(kulikov_construct, m)?)?;
    m.add_function(wrap_pyfunction!(fibre_genus, m)?)?;
    Ok(())
}
