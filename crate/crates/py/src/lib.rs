//! Python bindings. Vectors are lists of `complex`, matrices are lists of rows.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use qftqr::stepmatrices::{decompose_step, factored_transform};
use qftqr::{Complex, ComplexMatrix, ComplexVector};

fn err(e: qftqr::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_vector(x: Vec<Complex>) -> PyResult<ComplexVector> {
    ComplexVector::new(x).map_err(err)
}

fn to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex>> {
    (0..m.dim()).map(|j| m.row(j).to_vec()).collect()
}

fn approx(m: usize, n: usize) -> PyResult<qftqr::ApproximationParam> {
    qftqr::ApproximationParam::new(m, n).map_err(err)
}

#[pyclass(name = "Circuit", module = "qftqr_py", eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyCircuit {
    inner: qftqr::Circuit,
}

#[pymethods]
impl PyCircuit {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: qftqr::Circuit::new(n).map_err(err)?,
        })
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    fn h(&mut self, target: usize) -> PyResult<()> {
        self.inner
            .push(qftqr::Gate::Hadamard { target })
            .map_err(err)
    }

    /// Phase exp(2πi/2^u) on |11> of (control, target).
    fn cp(&mut self, control: usize, target: usize, u: u32) -> PyResult<()> {
        self.inner
            .push(qftqr::Gate::ControlledPhase { control, target, u })
            .map_err(err)
    }

    fn swap(&mut self, a: usize, b: usize) -> PyResult<()> {
        self.inner.push(qftqr::Gate::Swap { a, b }).map_err(err)
    }

    /// Gates as their text-format lines, e.g. "cp 1 0 2".
    fn gates(&self) -> Vec<String> {
        self.inner.gates().iter().map(|g| g.to_string()).collect()
    }

    fn gate_counts(&self) -> (usize, usize, usize) {
        let c = qftqr::gate_counts(&self.inner);
        (c.hadamards, c.controlled_phases, c.swaps)
    }

    fn to_text(&self) -> String {
        qftqr::emit_circuit_text(&self.inner)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: qftqr::parse_circuit_text(text).map_err(err)?,
        })
    }

    fn unitary(&self) -> PyResult<Vec<Vec<Complex>>> {
        Ok(to_rows(
            &qftqr::circuit_to_unitary(&self.inner).map_err(err)?,
        ))
    }

    /// Runs the circuit on `state`, which must have unit norm unless `normalize`.
    #[pyo3(signature = (state, normalize = false))]
    fn simulate(&self, state: Vec<Complex>, normalize: bool) -> PyResult<Vec<Complex>> {
        let st = qftqr::prepare_state(&to_vector(state)?, normalize).map_err(err)?;
        let out = qftqr::run_circuit(st, &self.inner).map_err(err)?;
        Ok(out.amplitudes().to_vec())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(n={}, gates={})",
            self.inner.num_qubits(),
            self.inner.len()
        )
    }
}

#[pyfunction]
fn synth_qft(n: usize) -> PyResult<PyCircuit> {
    Ok(PyCircuit {
        inner: qftqr::synth_qft(n).map_err(err)?,
    })
}

#[pyfunction]
fn synth_aqft(n: usize, m: usize) -> PyResult<PyCircuit> {
    Ok(PyCircuit {
        inner: qftqr::synth_aqft(n, approx(m, n)?).map_err(err)?,
    })
}

#[pyfunction]
fn dft(x: Vec<Complex>) -> PyResult<Vec<Complex>> {
    Ok(qftqr::dft_direct(&to_vector(x)?).map_err(err)?.into_inner())
}

#[pyfunction]
#[pyo3(signature = (x, m = None))]
fn fft(x: Vec<Complex>, m: Option<usize>) -> PyResult<Vec<Complex>> {
    let x = to_vector(x)?;
    let y = match m {
        Some(m) => {
            let n = (x.len().trailing_zeros() as usize).max(1);
            qftqr::fft_approx_classical(&x, approx(m, n)?)
        }
        None => qftqr::fft_classical(&x),
    };
    Ok(y.map_err(err)?.into_inner())
}

#[pyfunction]
fn phase_error_bound(n: usize, m: usize) -> PyResult<f64> {
    qftqr::phase_error_bound(n, approx(m, n)?).map_err(err)
}

#[pyfunction]
fn min_m_for_error(eps_max: f64, n: usize) -> PyResult<usize> {
    qftqr::min_m_for_error(eps_max, n).map_err(err)
}

#[pyfunction]
fn build_p(n: usize, s: usize) -> PyResult<Vec<Vec<Complex>>> {
    Ok(to_rows(&qftqr::build_p(n, s).map_err(err)?))
}

#[pyfunction]
fn build_m(n: usize, s: usize) -> PyResult<Vec<Vec<Complex>>> {
    Ok(to_rows(&qftqr::build_m(n, s).map_err(err)?))
}

#[pyfunction]
fn build_n(n: usize, s: usize) -> PyResult<Vec<Vec<Complex>>> {
    Ok(to_rows(&qftqr::build_n(n, s).map_err(err)?))
}

#[pyfunction]
fn build_r(n: usize, s: usize, t: usize, u: usize) -> PyResult<Vec<Vec<Complex>>> {
    Ok(to_rows(&qftqr::build_r(n, s, t, u).map_err(err)?))
}

#[pyfunction]
fn factored(n: usize) -> PyResult<Vec<Vec<Complex>>> {
    Ok(to_rows(&factored_transform(n).map_err(err)?))
}

type Decomposition = (Vec<Vec<Complex>>, Vec<Complex>, Vec<Complex>, Py<PyAny>);

/// QR of stage `s`: returns (M, diag(N), alpha, residuals dict).
#[pyfunction]
fn decompose(py: Python<'_>, n: usize, s: usize) -> PyResult<Decomposition> {
    let d = decompose_step(n, s).map_err(err)?;
    let residuals = pyo3::types::PyDict::new(py);
    residuals.set_item("orthogonality", d.orthogonality_residual)?;
    residuals.set_item("factorization", d.factorization_residual)?;
    residuals.set_item("closed_form", d.closed_form_residual)?;
    Ok((
        to_rows(&d.m_factor),
        d.n_factor.diagonal_entries(),
        d.alpha.into_inner(),
        residuals.into_any().unbind(),
    ))
}

#[pymodule]
fn qftqr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCircuit>()?;
    m.add_function(wrap_pyfunction!(synth_qft, m)?)?;
    m.add_function(wrap_pyfunction!(synth_aqft, m)?)?;
    m.add_function(wrap_pyfunction!(dft, m)?)?;
    m.add_function(wrap_pyfunction!(fft, m)?)?;
    m.add_function(wrap_pyfunction!(phase_error_bound, m)?)?;
    m.add_function(wrap_pyfunction!(min_m_for_error, m)?)?;
    m.add_function(wrap_pyfunction!(build_p, m)?)?;
    m.add_function(wrap_pyfunction!(build_m, m)?)?;
    m.add_function(wrap_pyfunction!(build_n, m)?)?;
    m.add_function(wrap_pyfunction!(build_r, m)?)?;
    m.add_function(wrap_pyfunction!(factored, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    Ok(())
}
