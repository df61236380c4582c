//! Python bindings for the simulator: circuit parsing/printing, the
//! search and Grover builders, execution with optional noise, raw state
//! vectors, and the readout-noise fit.
//!
//! Build the importable module with
//! `cargo build --release -p qsim-python --features extension-module`
//! and rename `libqsim.so` to `qsim.so` (see python/smoke_test.py).

// #[pymethods] expansion trips this lint on PyResult-returning methods.
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qsim_core::algorithms::{
    auto_grover_iterations, build_constant_search, build_grover, hadamard_transform_reference,
    GroverSpec, SearchSpec, SearchVariant,
};
use qsim_core::gates::Gate;
use qsim_core::noise::{fit_readout as core_fit_readout, NoiseModel};
use qsim_core::{qasm, Error};

fn to_py_err(err: Error) -> PyErr {
    match err {
        Error::Domain(_) | Error::Capacity(_) => PyValueError::new_err(err.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn parse_variant(variant: &str) -> PyResult<SearchVariant> {
    match variant {
        "algorithm" | "algorithm-faithful" => Ok(SearchVariant::AlgorithmFaithful),
        "qasm-literal" | "literal" => Ok(SearchVariant::QasmLiteral),
        other => Err(PyValueError::new_err(format!(
            "variant must be 'algorithm' or 'qasm-literal', got '{other}'"
        ))),
    }
}

/// A quantum circuit over flat qubit/clbit index spaces.
#[pyclass(module = "qsim")]
#[derive(Clone)]
struct Circuit {
    inner: qsim_core::Circuit,
}

#[pymethods]
impl Circuit {
    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    #[getter]
    fn num_clbits(&self) -> usize {
        self.inner.num_clbits()
    }

    #[getter]
    fn num_instructions(&self) -> usize {
        self.inner.instructions().len()
    }

    /// Validation problems as human-readable strings; empty means valid.
    fn violations(&self) -> Vec<String> {
        self.inner
            .violations()
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    /// Canonical OpenQASM 2.0 text. Raises for injected dense operators.
    fn to_qasm(&self) -> PyResult<String> {
        qasm::print(&self.inner).map_err(to_py_err)
    }

    /// SHA-256 digest of the canonical circuit text.
    fn digest(&self) -> String {
        self.inner.digest()
    }

    /// Run the circuit and return a CountsReport.
    #[pyo3(signature = (shots = 1024, seed = 0, depolarizing = 0.0, readout_p01 = 0.0, readout_p10 = 0.0))]
    fn execute(
        &self,
        shots: u64,
        seed: u64,
        depolarizing: f64,
        readout_p01: f64,
        readout_p10: f64,
    ) -> PyResult<CountsReport> {
        let model = NoiseModel {
            depolarizing_p: depolarizing,
            readout_p01,
            readout_p10,
        };
        let noise = if model.is_zero() { None } else { Some(&model) };
        let report = self.inner.execute(shots, seed, noise).map_err(to_py_err)?;
        Ok(CountsReport { inner: report })
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(num_qubits={}, num_clbits={}, num_instructions={})",
            self.inner.num_qubits(),
            self.inner.num_clbits(),
            self.inner.instructions().len()
        )
    }
}

/// Shot histogram with exact probabilities and provenance.
#[pyclass(module = "qsim")]
#[derive(Clone)]
struct CountsReport {
    inner: qsim_core::CountsReport,
}

#[pymethods]
impl CountsReport {
    #[getter]
    fn shots(&self) -> u64 {
        self.inner.shots
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let dict = PyDict::new_bound(py);
        for (key, value) in &self.inner.counts {
            dict.set_item(key, value)?;
        }
        Ok(dict)
    }

    #[getter]
    fn exact_probabilities<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        match &self.inner.exact_probabilities {
            None => Ok(None),
            Some(map) => {
                let dict = PyDict::new_bound(py);
                for (key, value) in map {
                    dict.set_item(key, value)?;
                }
                Ok(Some(dict))
            }
        }
    }

    #[getter]
    fn circuit_digest(&self) -> String {
        self.inner.circuit_digest.clone()
    }

    fn frequency(&self, outcome: &str) -> f64 {
        self.inner.frequency(outcome)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "CountsReport(shots={}, seed={}, outcomes={})",
            self.inner.shots,
            self.inner.seed,
            self.inner.counts.len()
        )
    }
}

/// Dense state vector with little-endian qubit indexing.
#[pyclass(module = "qsim")]
struct StateVector {
    inner: qsim_core::StateVector,
}

#[pymethods]
impl StateVector {
    /// Prepare |basis_index⟩ on num_qubits qubits.
    #[new]
    #[pyo3(signature = (num_qubits, basis_index = 0))]
    fn new(num_qubits: usize, basis_index: usize) -> PyResult<Self> {
        Ok(StateVector {
            inner: qsim_core::StateVector::init_basis(num_qubits, basis_index)
                .map_err(to_py_err)?,
        })
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    /// Apply a named gate (x, y, z, h, s, sdg, t, tdg, id, u1, cx).
    #[pyo3(signature = (name, qubits, theta = None))]
    fn apply(&mut self, name: &str, qubits: Vec<usize>, theta: Option<f64>) -> PyResult<()> {
        let gate = Gate::from_mnemonic(name, theta).map_err(to_py_err)?;
        self.inner.apply_gate(gate, &qubits).map_err(to_py_err)
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    /// Marginal probability table over the listed qubits; table index bit
    /// m holds the value of qubits[m].
    fn probabilities(&self, qubits: Vec<usize>) -> PyResult<Vec<f64>> {
        self.inner.probabilities(&qubits).map_err(to_py_err)
    }

    /// Sample (qubit, clbit) measurement pairs into a CountsReport.
    #[pyo3(signature = (measured, shots = 1024, seed = 0))]
    fn sample(
        &self,
        measured: Vec<(usize, usize)>,
        shots: u64,
        seed: u64,
    ) -> PyResult<CountsReport> {
        Ok(CountsReport {
            inner: self
                .inner
                .sample_measurements(&measured, shots, seed)
                .map_err(to_py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("StateVector(num_qubits={})", self.inner.num_qubits())
    }
}

/// Parse OpenQASM 2.0 source text into a Circuit.
#[pyfunction]
fn parse_qasm(source: &str) -> PyResult<Circuit> {
    match qasm::parse(source) {
        Ok(inner) => Ok(Circuit { inner }),
        Err(err) => Err(PyValueError::new_err(err.to_string())),
    }
}

/// Build the constant-depth search circuit (2n qubits, n clbits).
#[pyfunction]
#[pyo3(signature = (n, key, variant = "algorithm"))]
fn search_circuit(n: usize, key: &str, variant: &str) -> PyResult<Circuit> {
    let spec = SearchSpec::new(n, key, parse_variant(variant)?);
    Ok(Circuit {
        inner: build_constant_search(&spec).map_err(to_py_err)?,
    })
}

/// Build the Grover baseline; iterations=None selects ⌊(π/4)·√(2^n)⌋.
#[pyfunction]
#[pyo3(signature = (n, key, iterations = None))]
fn grover_circuit(n: usize, key: &str, iterations: Option<usize>) -> PyResult<Circuit> {
    Ok(Circuit {
        inner: build_grover(&GroverSpec {
            n,
            key: key.to_string(),
            iterations,
        })
        .map_err(to_py_err)?,
    })
}

/// The ⌊(π/4)·√(2^n)⌋ iteration count used by `iterations=None`.
#[pyfunction]
fn grover_auto_iterations(n: usize) -> usize {
    auto_grover_iterations(n)
}

/// The state H^⊗n|x⟩ as a list of amplitudes.
#[pyfunction]
fn hadamard_reference(x: &str, n: usize) -> PyResult<Vec<Complex64>> {
    Ok(hadamard_transform_reference(x, n)
        .map_err(to_py_err)?
        .amplitudes()
        .to_vec())
}

/// The canonical matrix of a named gate, as nested lists.
#[pyfunction]
#[pyo3(signature = (name, theta = None))]
fn gate_matrix(name: &str, theta: Option<f64>) -> PyResult<Vec<Vec<Complex64>>> {
    let matrix = qsim_core::gates::matrix_of(name, theta).map_err(to_py_err)?;
    let dim = matrix.dim();
    Ok((0..dim)
        .map(|r| (0..dim).map(|c| matrix.get(r, c)).collect())
        .collect())
}

/// Fit the symmetric readout flip probability on the search circuit;
/// returns (p, achieved, iterations).
#[pyfunction]
#[pyo3(signature = (n, key, target, shots = 8192, seed = 0))]
fn fit_readout(n: usize, key: &str, target: f64, shots: u64, seed: u64) -> PyResult<(f64, f64, usize)> {
    let circuit = build_constant_search(&SearchSpec::new(
        n,
        key,
        SearchVariant::AlgorithmFaithful,
    ))
    .map_err(to_py_err)?;
    let fit = core_fit_readout(&circuit, key, target, shots, seed).map_err(to_py_err)?;
    Ok((fit.p, fit.achieved, fit.iterations))
}

#[pymodule]
fn qsim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Circuit>()?;
    m.add_class::<CountsReport>()?;
    m.add_class::<StateVector>()?;
    m.add_function(wrap_pyfunction!(parse_qasm, m)?)?;
    m.add_function(wrap_pyfunction!(search_circuit, m)?)?;
    m.add_function(wrap_pyfunction!(grover_circuit, m)?)?;
    m.add_function(wrap_pyfunction!(grover_auto_iterations, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard_reference, m)?)?;
    m.add_function(wrap_pyfunction!(gate_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(fit_readout, m)?)?;
    Ok(())
}
