//! Python bindings: circuits, axes, the MCR helpers and the unoptimize/optimize/verify pipeline.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mcrkit::optimizer::parse_passes;
use mcrkit::verify::{check_equiv_statevector, EquivalenceReport, Simulate, DEFAULT_TOLERANCE};
use mcrkit::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) | Error::CapExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "PauliAxis", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPauliAxis(mcrkit::PauliAxis);

#[pymethods]
impl PyPauliAxis {
    /// A signed Pauli word such as "+XZ", "-YI" or "ZZ".
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPauliAxis).map_err(err)
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    #[getter]
    fn negative(&self) -> bool {
        self.0.is_negative()
    }

    fn commutes_with(&self, other: &PyPauliAxis) -> PyResult<bool> {
        mcrkit::pauli::commutes(&self.0, &other.0).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyPauliAxis(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PauliAxis('{}')", self.0)
    }
}

#[pyclass(name = "Rotation", frozen, from_py_object)]
#[derive(Clone)]
struct PyRotation(mcrkit::Rotation);

#[pymethods]
impl PyRotation {
    /// `R_axis(k·π/4)`; the axis sign is folded into `k`.
    #[new]
    #[pyo3(signature = (axis, k = 1))]
    fn new(axis: &PyPauliAxis, k: i32) -> PyResult<Self> {
        mcrkit::Rotation::new(&axis.0, k)
            .map(PyRotation)
            .ok_or_else(|| PyValueError::new_err("rotation angle is a multiple of 2π"))
    }

    #[getter]
    fn axis(&self) -> PyPauliAxis {
        PyPauliAxis(self.0.axis().clone())
    }

    #[getter]
    fn k(&self) -> i32 {
        self.0.k()
    }

    fn __repr__(&self) -> String {
        format!("Rotation('{}', {})", self.0.axis(), self.0.k())
    }
}

#[pyclass(name = "GateCircuit", frozen, from_py_object)]
#[derive(Clone)]
struct PyGateCircuit(mcrkit::GateCircuit);

#[pymethods]
impl PyGateCircuit {
    #[staticmethod]
    fn from_qasm(text: &str) -> PyResult<Self> {
        mcrkit::circuit::parse_qasm(text).map(PyGateCircuit).map_err(err)
    }

    fn to_qasm(&self) -> String {
        mcrkit::circuit::emit_qasm(&self.0)
    }

    fn to_qc(&self) -> String {
        mcrkit::circuit::emit_qc(&self.0)
    }

    fn to_pbc(&self) -> PyPbcCircuit {
        PyPbcCircuit(mcrkit::pbc::gates_to_pbc(&self.0))
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    #[getter]
    fn t_count(&self) -> usize {
        self.0.t_count()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(name = "PbcCircuit", frozen, from_py_object)]
#[derive(Clone)]
struct PyPbcCircuit(mcrkit::PbcCircuit);

#[pymethods]
impl PyPbcCircuit {
    /// Identity prefix followed by `rotations`.
    #[new]
    fn new(n: usize, rotations: Vec<PyRotation>) -> PyResult<Self> {
        mcrkit::PbcCircuit::from_rotations(n, rotations.into_iter().map(|r| r.0).collect())
            .map(PyPbcCircuit)
            .map_err(err)
    }

    /// The single rotation `R_{Z…Z}(π/4)`.
    #[staticmethod]
    fn default_input(n: usize) -> Self {
        PyPbcCircuit(mcrkit::PbcCircuit::default_input(n))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        mcrkit::PbcCircuit::from_json(text).map(PyPbcCircuit).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn to_gates(&self) -> PyGateCircuit {
        PyGateCircuit(mcrkit::pbc::pbc_to_gates(&self.0))
    }

    #[getter]
    fn rotations(&self) -> Vec<PyRotation> {
        self.0.rotations().iter().cloned().map(PyRotation).collect()
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    #[getter]
    fn t_count(&self) -> usize {
        self.0.t_count()
    }

    fn t_layers(&self) -> Vec<Vec<usize>> {
        mcrkit::pbc::t_layers(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.rotations().len()
    }
}

fn as_sim<'a>(obj: &'a Bound<'_, PyAny>, keep: &'a mut Option<Box<dyn Simulate + Send>>) -> PyResult<&'a dyn Simulate> {
    if let Ok(c) = obj.cast::<PyGateCircuit>() {
        *keep = Some(Box::new(c.get().0.clone()));
    } else if let Ok(p) = obj.cast::<PyPbcCircuit>() {
        *keep = Some(Box::new(p.get().0.clone()));
    } else {
        return Err(PyValueError::new_err("expected a GateCircuit or PbcCircuit"));
    }
    Ok(keep.as_deref().unwrap())
}

fn report_dict<'py>(py: Python<'py>, r: &EquivalenceReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let method = match r.method {
        mcrkit::verify::Method::Dense => "dense",
        mcrkit::verify::Method::Statevector => "statevector",
    };
    d.set_item("method", method)?;
    d.set_item("equivalent", r.equivalent)?;
    d.set_item("max_deviation", r.max_deviation)?;
    d.set_item("phase", r.phase)?;
    Ok(d)
}

/// Equality up to global phase; `method` is "dense" or "statevector".
#[pyfunction]
#[pyo3(signature = (a, b, tol = DEFAULT_TOLERANCE, method = "dense", samples = 20, seed = 0))]
fn check_equiv<'py>(
    py: Python<'py>,
    a: &Bound<'py, PyAny>,
    b: &Bound<'py, PyAny>,
    tol: f64,
    method: &str,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let (mut ka, mut kb) = (None, None);
    let (u, v) = (as_sim(a, &mut ka)?, as_sim(b, &mut kb)?);
    let report = match method {
        "dense" => mcrkit::verify::check_equiv(u, v, tol),
        "statevector" => check_equiv_statevector(u, v, samples, seed, tol),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
    .map_err(err)?;
    report_dict(py, &report)
}

/// `None` when the quadruple satisfies the relation, otherwise the failed condition.
#[pyfunction]
fn check_mcr(a: &PyPauliAxis, b: &PyPauliAxis, c: &PyPauliAxis, d: &PyPauliAxis) -> Option<String> {
    mcrkit::check_mcr(&a.0, &b.0, &c.0, &d.0).err().map(|f| f.to_string())
}

#[pyfunction]
fn complete_quadruple(a: &PyPauliAxis, b: &PyPauliAxis, c: &PyPauliAxis) -> PyResult<PyPauliAxis> {
    mcrkit::mcr::complete_quadruple(&a.0, &b.0, &c.0).map(PyPauliAxis).map_err(err)
}

#[pyfunction]
fn count_quadruples(n: usize) -> PyResult<u128> {
    mcrkit::mcr::count_quadruples(n).map_err(err)
}

/// Returns the unoptimized circuit and the replayable recipe as JSON.
#[pyfunction]
#[pyo3(signature = (circuit, seed = 0, swap = true, iterations = None))]
fn unoptimize(circuit: &PyPbcCircuit, seed: u64, swap: bool, iterations: Option<usize>) -> PyResult<(PyPbcCircuit, String)> {
    let n = circuit.0.num_qubits();
    let mut recipe = mcrkit::UnoptRecipe::new(n, seed, swap);
    if let Some(m) = iterations {
        recipe.iterations = m;
    }
    let v = mcrkit::unoptimize(&circuit.0, &mut recipe).map_err(err)?;
    Ok((PyPbcCircuit(v), recipe.to_json()))
}

/// Returns the optimized circuit and `(t_initial, t_final)`.
#[pyfunction]
#[pyo3(signature = (circuit, passes = "mcr_swap,merge", max_rounds = 32, pair_cap = 64))]
fn optimize(circuit: &PyPbcCircuit, passes: &str, max_rounds: usize, pair_cap: usize) -> PyResult<(PyPbcCircuit, (usize, usize))> {
    let cfg = mcrkit::OptimizerConfig {
        passes: parse_passes(passes).map_err(err)?,
        max_rounds,
        pair_cap,
    };
    let (q, report) = mcrkit::optimize(&circuit.0, &cfg).map_err(err)?;
    Ok((PyPbcCircuit(q), (report.t_initial, report.t_final)))
}

#[pyfunction]
fn reduction_rate(t_unopt: usize, t_opt: usize, t_original: usize) -> PyResult<f64> {
    mcrkit::bench::reduction_rate(t_unopt, t_opt, t_original).map_err(err)
}

#[pymodule]
#[pyo3(name = "mcrkit")]
fn mcrkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauliAxis>()?;
    m.add_class::<PyRotation>()?;
    m.add_class::<PyGateCircuit>()?;
    m.add_class::<PyPbcCircuit>()?;
    m.add_function(wrap_pyfunction!(check_equiv, m)?)?;
    m.add_function(wrap_pyfunction!(check_mcr, m)?)?;
    m.add_function(wrap_pyfunction!(complete_quadruple, m)?)?;
    m.add_function(wrap_pyfunction!(count_quadruples, m)?)?;
    m.add_function(wrap_pyfunction!(unoptimize, m)?)?;
    m.add_function(wrap_pyfunction!(optimize, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_rate, m)?)?;
    Ok(())
}
