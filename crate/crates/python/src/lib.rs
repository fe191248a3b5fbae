//! Python bindings for the main pendnet types and operations.

use std::collections::HashMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict};

use pendnet::analysis;
use pendnet::graph;
use pendnet::reduced;
use pendnet::{Error, IntegratorConfig};

fn to_py(e: Error) -> PyErr {
    match e.exit_code() {
        1 => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// `(branch, lower, upper, critical_min, critical_max)`
type IntervalRow = (String, f64, f64, f64, f64);

fn state(q: Vec<f64>, p: Vec<f64>) -> PyResult<pendnet::SystemState> {
    pendnet::SystemState::new(q, p).map_err(to_py)
}

#[pyclass(name = "Graph", module = "pendnet_py", frozen)]
struct PyGraph {
    inner: pendnet::Graph,
}

#[pymethods]
impl PyGraph {
    /// Graph on nodes `0..n` with 0-based undirected edges.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self { inner: pendnet::Graph::new(n, edges).map_err(to_py)? })
    }

    /// `path:N`, `cycle:N`, `complete:N` or an edge-list file.
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        Ok(Self { inner: pendnet::Graph::from_spec(spec).map_err(to_py)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn laplacian_eigenvalues(&self) -> PyResult<Vec<f64>> {
        Ok(graph::spectrum(&self.inner).map_err(to_py)?.eigenvalues)
    }

    fn edge_connectivity(&self) -> usize {
        graph::edge_connectivity(&self.inner)
    }

    /// `(entries, eigenvalue)` for every sign eigenvector.
    #[pyo3(signature = (allow_zero = true))]
    fn sign_eigenvectors(&self, allow_zero: bool) -> PyResult<Vec<(Vec<i8>, i64)>> {
        Ok(graph::find_sign_eigenvectors(&self.inner, allow_zero)
            .map_err(to_py)?
            .into_iter()
            .map(|v| (v.entries, v.lambda))
            .collect())
    }

    /// Whether the partition induced by a sign vector is odd-balanced.
    fn is_odd_balanced(&self, entries: Vec<i8>) -> PyResult<bool> {
        let v = pendnet::SignVector::new(&self.inner, entries).map_err(to_py)?;
        let p = graph::sign_vector_to_partition(&v);
        Ok(graph::verify_odd_balanced(&self.inner, &p).map_err(to_py)?.balanced)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "Potential", module = "pendnet_py", frozen)]
struct PyPotential {
    inner: pendnet::InteractionPotential,
}

#[pymethods]
impl PyPotential {
    /// Coefficients keyed by `(l, m)` for the monomial `x^(2l) y^(2m)`.
    #[new]
    fn new(coeffs: HashMap<(u32, u32), f64>) -> Self {
        Self { inner: pendnet::InteractionPotential::new(coeffs) }
    }

    #[staticmethod]
    fn double_well() -> Self {
        Self { inner: pendnet::InteractionPotential::double_well() }
    }

    #[staticmethod]
    fn harmonic() -> Self {
        Self { inner: pendnet::InteractionPotential::harmonic() }
    }

    #[pyo3(signature = (x, y, dx = 0, dy = 0))]
    fn eval(&self, x: f64, y: f64, dx: u32, dy: u32) -> f64 {
        self.inner.eval_any(x, y, dx, dy)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "System", module = "pendnet_py", frozen)]
struct PySystem {
    inner: pendnet::CoupledSystem,
}

#[pymethods]
impl PySystem {
    #[new]
    fn new(graph: &PyGraph, potential: &PyPotential, kappa: f64) -> PyResult<Self> {
        let inner = pendnet::CoupledSystem::new(graph.inner.clone(), potential.inner.clone(), kappa).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn kappa(&self) -> f64 {
        self.inner.kappa
    }

    fn hamiltonian(&self, q: Vec<f64>, p: Vec<f64>) -> PyResult<f64> {
        self.inner.hamiltonian(&state(q, p)?).map_err(to_py)
    }

    /// Time derivative `(q', p')` flattened.
    fn vector_field(&self, q: Vec<f64>, p: Vec<f64>) -> PyResult<Vec<f64>> {
        self.inner.vector_field(&state(q, p)?).map_err(to_py)
    }

    /// Jacobian as a list of rows.
    fn jacobian(&self, q: Vec<f64>, p: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
        let j = self.inner.jacobian(&state(q, p)?).map_err(to_py)?;
        Ok(j.row_iter().map(|r| r.iter().copied().collect()).collect())
    }

    /// Sampled trajectory as a dict with `t`, `q`, `p`, `H` and `energy_drift`.
    #[pyo3(signature = (q, p, t, tol = 1e-10, sample_interval = 0.05))]
    fn integrate<'py>(
        &self,
        py: Python<'py>,
        q: Vec<f64>,
        p: Vec<f64>,
        t: f64,
        tol: f64,
        sample_interval: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let s0 = state(q, p)?;
        let cfg = IntegratorConfig { sample_interval, ..IntegratorConfig::adaptive(tol) };
        let traj = py.detach(|| pendnet::integrate(&self.inner, &s0, t, &cfg)).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("t", &traj.times)?;
        d.set_item("q", traj.states.iter().map(|s| s.q.clone()).collect::<Vec<_>>())?;
        d.set_item("p", traj.states.iter().map(|s| s.p.clone()).collect::<Vec<_>>())?;
        d.set_item("H", &traj.energies)?;
        d.set_item("energy_drift", traj.energy_drift)?;
        Ok(d)
    }

    /// Lyapunov spectrum (descending) with the convergence warning, if any.
    #[pyo3(signature = (q, p, t = 1e4, reorth_period = 1.0, tol = 1e-10))]
    fn lyapunov<'py>(
        &self,
        py: Python<'py>,
        q: Vec<f64>,
        p: Vec<f64>,
        t: f64,
        reorth_period: f64,
        tol: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let s0 = state(q, p)?;
        let cfg = IntegratorConfig::adaptive(tol);
        let res = py
            .detach(|| analysis::lyapunov_spectrum(&self.inner, &s0, t, reorth_period, &cfg))
            .map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("exponents", &res.exponents)?;
        d.set_item("energy_drift", res.energy_drift)?;
        d.set_item("warning", res.warning.clone())?;
        Ok(d)
    }

    fn synchrony_eigenvalues<'py>(&self, py: Python<'py>, q_synch: f64) -> PyResult<Vec<Bound<'py, PyComplex>>> {
        let ev = analysis::synchrony_eigenvalues(&self.inner, q_synch).map_err(to_py)?;
        Ok(ev.iter().map(|z| PyComplex::from_doubles(py, z.re, z.im)).collect())
    }

    /// `(kappa, multiplicity)` pairs, ascending.
    fn critical_couplings(&self) -> PyResult<Vec<(f64, usize)>> {
        Ok(analysis::critical_couplings(&self.inner)
            .map_err(to_py)?
            .iter()
            .map(|c| (c.kappa, c.multiplicity()))
            .collect())
    }

    /// `(branch, lower, upper, critical_min, critical_max)` per negative coefficient.
    fn bifurcation_interval(&self) -> PyResult<Vec<IntervalRow>> {
        Ok(analysis::bifurcation_interval(&self.inner)
            .map_err(to_py)?
            .into_iter()
            .map(|b| (b.branch.to_string(), b.lower, b.upper, b.critical_min, b.critical_max))
            .collect())
    }

    /// `(d_pm, d_0)` of the reduced system on the subspace of a sign vector.
    fn reduce(&self, entries: Vec<i8>) -> PyResult<(usize, usize)> {
        let v = pendnet::SignVector::new(&self.inner.graph, entries).map_err(to_py)?;
        let rs = reduced::reduce(&self.inner, &v).map_err(to_py)?;
        Ok((rs.d_pm, rs.d_0))
    }

    /// Pitchforks of the reduced system over an increasing coupling grid, as
    /// `(axis, kappa, third_derivative, mixed_derivative)`.
    fn pitchforks(&self, entries: Vec<i8>, kappas: Vec<f64>) -> PyResult<Vec<(String, f64, f64, f64)>> {
        let v = pendnet::SignVector::new(&self.inner.graph, entries).map_err(to_py)?;
        let rs = reduced::reduce(&self.inner, &v).map_err(to_py)?;
        let d = reduced::detect_pitchfork(&rs, &kappas).map_err(to_py)?;
        Ok(d.bifurcations
            .iter()
            .filter(|b| b.is_pitchfork())
            .map(|b| {
                let axis = if b.axis == reduced::Axis::X { "x" } else { "y" };
                (axis.to_string(), b.kappa, b.third_derivative, b.mixed_derivative)
            })
            .collect())
    }
}

/// Runs the command-line tool with the given arguments and returns its output.
#[pyfunction]
fn run_cli(args: Vec<String>) -> PyResult<String> {
    let argv = std::iter::once("pendnet".to_string()).chain(args);
    pendnet::cli::run(argv).map_err(to_py)
}

#[pymodule]
fn pendnet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPotential>()?;
    m.add_class::<PySystem>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
