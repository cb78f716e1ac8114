//! Python bindings for `horizonq`. Errors map onto `ValueError`
//! (bad input), `ArithmeticError` (numerics) and `OSError` (files).

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::IntoPyObjectExt;

use horizonq::analysis::{self, Axis, SweepGrid, SweepTemplate};
use horizonq::entanglement;
use horizonq::horizon::{self, Family, ModelKind, ModelSpec};
use horizonq::numkernel::DenseMatrix;
use horizonq::qstate::{self, QubitLabel, State};
use horizonq::teleport;
use horizonq::Error;

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Shape(_) | Error::Contract(_) | Error::Numeric(_) | Error::NotPsd { .. } => {
            PyArithmeticError::new_err(msg)
        }
        Error::Io { .. } => PyOSError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for horizonq::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn labels(names: &[String]) -> Vec<QubitLabel> {
    names.iter().map(QubitLabel::new).collect()
}

fn names(labels: &[QubitLabel]) -> Vec<String> {
    labels.iter().map(|l| l.as_str().to_owned()).collect()
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().py()
}

#[pyclass(
    name = "PureState",
    module = "horizonq_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyPureState(qstate::PureState);

#[pymethods]
impl PyPureState {
    #[new]
    #[pyo3(signature = (labels, amplitudes, normalize = false))]
    fn new(labels: Vec<String>, amplitudes: Vec<Complex64>, normalize: bool) -> PyResult<Self> {
        let l = self::labels(&labels);
        let s = if normalize {
            qstate::PureState::normalized(l, amplitudes)
        } else {
            qstate::PureState::new(l, amplitudes)
        };
        s.py().map(Self)
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        names(self.0.labels())
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.amplitudes().to_vec()
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn amplitude(&self, bits: &str) -> PyResult<Complex64> {
        self.0.amplitude(bits).py()
    }

    fn to_density(&self) -> PyDensityOp {
        PyDensityOp(self.0.to_density())
    }

    fn reduced_density(&self, keep: Vec<String>) -> PyResult<PyDensityOp> {
        self.0.reduced_density(&labels(&keep)).py().map(PyDensityOp)
    }

    fn to_json(&self) -> String {
        qstate::state_to_json(&State::Pure(self.0.clone()))
    }

    fn __repr__(&self) -> String {
        format!("PureState(labels={:?})", self.labels())
    }
}

#[pyclass(
    name = "DensityOp",
    module = "horizonq_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyDensityOp(qstate::DensityOp);

#[pymethods]
impl PyDensityOp {
    #[new]
    fn new(labels: Vec<String>, matrix: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        let m = DenseMatrix::new(n, n, matrix.into_iter().flatten().collect()).py()?;
        qstate::DensityOp::new(self::labels(&labels), m)
            .py()
            .map(Self)
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        names(self.0.labels())
    }

    /// Rows of the matrix in the computational basis, first label most significant.
    #[getter]
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let m = self.0.matrix();
        m.entries().chunks(m.cols()).map(<[_]>::to_vec).collect()
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    fn purity(&self) -> f64 {
        self.0.purity()
    }

    fn partial_trace(&self, keep: Vec<String>) -> PyResult<Self> {
        self.0.partial_trace(&labels(&keep)).py().map(Self)
    }

    fn to_json(&self) -> String {
        qstate::state_to_json(&State::Density(self.0.clone()))
    }

    fn __repr__(&self) -> String {
        format!("DensityOp(labels={:?})", self.labels())
    }
}

#[pyclass(
    name = "ModeAmplitudes",
    module = "horizonq_py",
    frozen,
    get_all,
    from_py_object
)]
#[derive(Clone, Copy)]
struct PyModeAmplitudes {
    mu: f64,
    nu: f64,
}

impl From<horizon::ModeAmplitudes> for PyModeAmplitudes {
    fn from(a: horizon::ModeAmplitudes) -> Self {
        Self { mu: a.mu, nu: a.nu }
    }
}

impl PyModeAmplitudes {
    fn core(&self) -> horizon::ModeAmplitudes {
        horizon::ModeAmplitudes {
            mu: self.mu,
            nu: self.nu,
        }
    }
}

#[pymethods]
impl PyModeAmplitudes {
    #[new]
    fn new(mu: f64, nu: f64) -> PyResult<Self> {
        horizon::ModeAmplitudes::new(mu, nu).py().map(Into::into)
    }

    #[staticmethod]
    fn flat() -> Self {
        horizon::ModeAmplitudes::flat().into()
    }

    /// `μ² = 1/(1+e^{−x})`.
    #[staticmethod]
    fn from_exponent(x: f64) -> Self {
        horizon::ModeAmplitudes::from_exponent(x).into()
    }

    fn __repr__(&self) -> String {
        format!("ModeAmplitudes(mu={}, nu={})", self.mu, self.nu)
    }
}

#[pyclass(name = "FidelityRecord", module = "horizonq_py", frozen, get_all)]
struct PyFidelityRecord {
    n_value: f64,
    fidelity: f64,
    useful: bool,
    u: [f64; 3],
}

#[pymethods]
impl PyFidelityRecord {
    fn __repr__(&self) -> String {
        format!(
            "FidelityRecord(n_value={}, fidelity={}, useful={})",
            self.n_value,
            self.fidelity,
            if self.useful { "True" } else { "False" }
        )
    }
}

#[pyclass(name = "TangleBreakdown", module = "horizonq_py", frozen, get_all)]
struct PyTangleBreakdown {
    one_tangle: f64,
    c2_ab: f64,
    c2_ac: f64,
    residual: f64,
}

#[pyclass(name = "Discrepancy", module = "horizonq_py", frozen, get_all)]
struct PyDiscrepancy {
    target: String,
    mu: f64,
    nu: f64,
    max_abs_entry_diff: f64,
    worst_entry: [usize; 2],
    trace_of_reference: f64,
    symmetric: bool,
    notes: String,
}

#[pyclass(name = "SweepPoint", module = "horizonq_py", frozen, get_all)]
struct PySweepPoint {
    axis1: f64,
    axis2: Option<f64>,
    mu: f64,
    nu: f64,
    measures: BTreeMap<String, f64>,
    unphysical: bool,
}

#[pyfunction]
fn make_state(family: &str) -> PyResult<PyPureState> {
    Ok(PyPureState(parse::<Family>(family)?.state()))
}

fn model_spec(
    model: &str,
    mass: Option<f64>,
    temperature: Option<f64>,
    dilaton: Option<f64>,
    charge: Option<f64>,
) -> PyResult<ModelSpec> {
    Ok(ModelSpec {
        kind: Some(parse::<ModelKind>(model)?),
        mass,
        temperature,
        dilaton,
        charge,
    })
}

#[pyfunction]
#[pyo3(signature = (model, omega, *, mass = None, temperature = None, dilaton = None, charge = None))]
fn mode_amplitudes(
    model: &str,
    omega: f64,
    mass: Option<f64>,
    temperature: Option<f64>,
    dilaton: Option<f64>,
    charge: Option<f64>,
) -> PyResult<PyModeAmplitudes> {
    let m = model_spec(model, mass, temperature, dilaton, charge)?
        .to_model()
        .py()?;
    horizon::mode_amplitudes(&m, omega).py().map(Into::into)
}

#[pyfunction]
#[pyo3(signature = (state, amplitudes, parties = vec!["B".to_owned(), "C".to_owned()]))]
fn dress(
    state: &PyPureState,
    amplitudes: PyModeAmplitudes,
    parties: Vec<String>,
) -> PyResult<PyPureState> {
    horizon::dress_state(&state.0, &labels(&parties), amplitudes.core())
        .py()
        .map(PyPureState)
}

/// Dresses `family`, drops the inaccessible modes and, if `trace` is given,
/// that party as well.
#[pyfunction]
#[pyo3(signature = (family, amplitudes, trace = None, dressed = vec!["B".to_owned(), "C".to_owned()]))]
fn build_reduced(
    family: &str,
    amplitudes: PyModeAmplitudes,
    trace: Option<String>,
    dressed: Vec<String>,
) -> PyResult<PyDensityOp> {
    let trace = trace.map(QubitLabel::new);
    horizon::build_reduced_with(
        parse(family)?,
        &labels(&dressed),
        trace.as_ref(),
        amplitudes.core(),
    )
    .py()
    .map(PyDensityOp)
}

#[pyfunction]
fn concurrence(rho: &PyDensityOp) -> PyResult<f64> {
    entanglement::concurrence(&rho.0).py()
}

#[pyfunction]
#[pyo3(signature = (rho, pivot = "A"))]
fn residual_tangle(rho: &PyDensityOp, pivot: &str) -> PyResult<PyTangleBreakdown> {
    let t = entanglement::residual_tangle(&rho.0, &QubitLabel::new(pivot)).py()?;
    Ok(PyTangleBreakdown {
        one_tangle: t.one_tangle,
        c2_ab: t.c2_ab,
        c2_ac: t.c2_ac,
        residual: t.residual,
    })
}

#[pyfunction]
fn teleportation_fidelity(rho: &PyDensityOp) -> PyResult<PyFidelityRecord> {
    let r = teleport::teleportation_fidelity(&rho.0).py()?;
    Ok(PyFidelityRecord {
        n_value: r.n_value,
        fidelity: r.fidelity,
        useful: r.useful,
        u: r.u,
    })
}

#[pyfunction]
#[pyo3(signature = (rho, budget = 4000, seed = 42))]
fn fully_entangled_fraction(
    py: Python<'_>,
    rho: &PyDensityOp,
    budget: usize,
    seed: u64,
) -> PyResult<f64> {
    let rho = rho.0.clone();
    py.detach(move || teleport::fully_entangled_fraction(&rho, budget, seed))
        .py()
}

#[pyfunction]
fn crosscheck(family: &str, amplitudes: PyModeAmplitudes) -> PyResult<Vec<PyDiscrepancy>> {
    let reports = analysis::compare_family(parse(family)?, amplitudes.core()).py()?;
    Ok(reports
        .into_iter()
        .map(|r| PyDiscrepancy {
            target: r.target,
            mu: r.mu,
            nu: r.nu,
            max_abs_entry_diff: r.max_abs_entry_diff,
            worst_entry: r.worst_entry,
            trace_of_reference: r.trace_of_reference,
            symmetric: r.symmetric,
            notes: r.notes,
        })
        .collect())
}

/// Axes use the CLI syntax `name:start:stop:step`. A dilaton model without
/// `mass` uses `M = 1`.
#[pyfunction]
#[pyo3(signature = (
    family, model, axis1, measures, *, axis2 = None, mass = None, temperature = None,
    dilaton = None, charge = None, omega = None, trace = None,
    dressed = vec!["B".to_owned(), "C".to_owned()], pivot = "A"
))]
#[allow(clippy::too_many_arguments)]
fn sweep(
    py: Python<'_>,
    family: &str,
    model: &str,
    axis1: &str,
    measures: &str,
    axis2: Option<&str>,
    mass: Option<f64>,
    temperature: Option<f64>,
    dilaton: Option<f64>,
    charge: Option<f64>,
    omega: Option<f64>,
    trace: Option<String>,
    dressed: Vec<String>,
    pivot: &str,
) -> PyResult<Vec<PySweepPoint>> {
    let mut spec = model_spec(model, mass, temperature, dilaton, charge)?;
    if spec.kind == Some(ModelKind::Dilaton) && spec.mass.is_none() {
        spec.mass = Some(1.0);
    }
    let grid = SweepGrid::new(parse::<Axis>(axis1)?, axis2.map(parse::<Axis>).transpose()?).py()?;
    let measures = analysis::parse_measures(measures).py()?;
    let mut template = SweepTemplate::new(parse(family)?, spec);
    template.omega = omega;
    template.dressed = labels(&dressed);
    template.trace = trace.map(QubitLabel::new);
    template.pivot = QubitLabel::new(pivot);
    let records = py
        .detach(|| analysis::run_sweep(&template, &grid, &measures))
        .py()?;
    Ok(records
        .into_iter()
        .map(|r| PySweepPoint {
            axis1: r.axis1,
            axis2: r.axis2,
            mu: r.mu,
            nu: r.nu,
            measures: r
                .measures
                .iter()
                .map(|(m, v)| (m.as_str().to_owned(), *v))
                .collect(),
            unphysical: r.unphysical_regime,
        })
        .collect())
}

/// Writes the CSV files behind a figure and returns their paths.
#[pyfunction]
fn reproduce_figure(py: Python<'_>, figure: u32, outdir: PathBuf) -> PyResult<Vec<PathBuf>> {
    py.detach(|| analysis::reproduce_figure(figure, &outdir))
        .py()
}

/// Parses a state document into a `PureState` or a `DensityOp`.
#[pyfunction]
fn state_from_json(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    match qstate::state_from_json(text).py()? {
        State::Pure(p) => PyPureState(p).into_py_any(py),
        State::Density(d) => PyDensityOp(d).into_py_any(py),
    }
}

#[pymodule]
fn horizonq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_class::<PyDensityOp>()?;
    m.add_class::<PyModeAmplitudes>()?;
    m.add_class::<PyFidelityRecord>()?;
    m.add_class::<PyTangleBreakdown>()?;
    m.add_class::<PyDiscrepancy>()?;
    m.add_class::<PySweepPoint>()?;
    m.add_function(wrap_pyfunction!(make_state, m)?)?;
    m.add_function(wrap_pyfunction!(mode_amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(dress, m)?)?;
    m.add_function(wrap_pyfunction!(build_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(residual_tangle, m)?)?;
    m.add_function(wrap_pyfunction!(teleportation_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(fully_entangled_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_figure, m)?)?;
    m.add_function(wrap_pyfunction!(state_from_json, m)?)?;
    Ok(())
}
