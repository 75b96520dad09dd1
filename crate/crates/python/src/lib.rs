//! Python bindings. Exact rationals cross the boundary as `fractions.Fraction`.

use pyo3::exceptions::{PyArithmeticError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use orbifold_index::applications;
use orbifold_index::index::{self, Duality, Pipeline, TopologicalData};
use orbifold_index::scalars::{self, Rational};
use orbifold_index::{verify as verify_mod, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        Error::Inconsistency(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn duality(s: &str) -> PyResult<Duality> {
    s.parse().map_err(err)
}

fn data(chi: i64, tau: i64, sigma_chi: i64, sigma_sq: i64, p: u32) -> PyResult<TopologicalData> {
    TopologicalData::new(chi, tau, sigma_chi, sigma_sq, p).map_err(err)
}

/// Round-trips a serializable value through JSON into plain Python objects.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn pair<'py>(py: Python<'py>, c: &index::CorrectionSum) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("e", c.coeff_e.clone())?;
    d.set_item("h", c.coeff_h.clone())?;
    Ok(d)
}

/// An element of the cyclotomic field Q(ζ_p) in the power basis.
#[pyclass(name = "Cyclotomic", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCyclotomic(scalars::Cyclotomic);

#[pymethods]
impl PyCyclotomic {
    #[new]
    fn new(order: u32, coeffs: Vec<Rational>) -> PyResult<Self> {
        scalars::Cyclotomic::from_coeffs(order, &coeffs).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_fraction(order: u32, r: Rational) -> Self {
        Self(scalars::Cyclotomic::from_rational(order, &r))
    }

    /// ζ_p^k
    #[staticmethod]
    fn zeta(order: u32, k: i64) -> Self {
        Self(scalars::zeta_power(order, k))
    }

    /// cos(2πj/p)
    #[staticmethod]
    fn cos(order: u32, j: i64) -> Self {
        Self(scalars::cos_of(order, j))
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    fn coeffs(&self) -> Vec<Rational> {
        self.0.coeffs()
    }

    /// The value as a Fraction, or None if it is not rational.
    fn to_fraction(&self) -> Option<Rational> {
        self.0.to_rational()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Self).map_err(err)
    }

    fn conjugate(&self) -> Self {
        Self(self.0.conjugate())
    }

    fn __add__(&self, rhs: &Self) -> PyResult<Self> {
        self.0.try_add(&rhs.0).map(Self).map_err(err)
    }

    fn __sub__(&self, rhs: &Self) -> PyResult<Self> {
        self.0.try_sub(&rhs.0).map(Self).map_err(err)
    }

    fn __mul__(&self, rhs: &Self) -> PyResult<Self> {
        self.0.try_mul(&rhs.0).map(Self).map_err(err)
    }

    fn __truediv__(&self, rhs: &Self) -> PyResult<Self> {
        let inv = rhs.0.inverse().map_err(err)?;
        self.0.try_mul(&inv).map(Self).map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self(self.0.neg())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cyclotomic({}, {})", self.0.order(), self.0)
    }
}

/// Averaged correction coefficients {"e": Fraction, "h": Fraction}, by brute force.
#[pyfunction]
fn correction_sum(py: Python<'_>, p: u32) -> PyResult<Bound<'_, PyDict>> {
    pair(py, &index::correction_sum(p).map_err(err)?)
}

#[pyfunction]
fn correction_sum_closed_form(py: Python<'_>, p: u32) -> PyResult<Bound<'_, PyDict>> {
    pair(py, &index::correction_sum_closed_form(p).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (chi, tau, sigma_chi, sigma_sq, p, duality = "asd"))]
fn index_kawasaki(chi: i64, tau: i64, sigma_chi: i64, sigma_sq: i64, p: u32, duality: &str) -> PyResult<i64> {
    index::index_kawasaki(&data(chi, tau, sigma_chi, sigma_sq, p)?, self::duality(duality)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (chi, tau, sigma_chi, sigma_sq, p, duality = "asd"))]
fn index_closed_form(chi: i64, tau: i64, sigma_chi: i64, sigma_sq: i64, p: u32, duality: &str) -> PyResult<i64> {
    index::index_closed_form(&data(chi, tau, sigma_chi, sigma_sq, p)?, self::duality(duality)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (chi, tau, duality = "asd"))]
fn index_smooth(chi: i64, tau: i64, duality: &str) -> PyResult<Rational> {
    Ok(index::index_smooth(chi, tau, self::duality(duality)?))
}

#[pyfunction]
fn chi_orb(chi: i64, beta: Rational, sigma_chi: i64) -> PyResult<Rational> {
    index::chi_orb(chi, &beta, sigma_chi).map_err(err)
}

#[pyfunction]
fn tau_orb(tau: i64, beta: Rational, sigma_sq: i64) -> PyResult<Rational> {
    index::tau_orb(tau, &beta, sigma_sq).map_err(err)
}

#[pyfunction]
fn trig_sums(py: Python<'_>, p: u32) -> PyResult<Bound<'_, PyDict>> {
    let t = scalars::trig_sums(p).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("sum_cos", t.sum_cos)?;
    d.set_item("sum_cos_sq", t.sum_cos_sq)?;
    d.set_item("sum_inv_one_minus_cos", t.sum_inv_one_minus_cos)?;
    Ok(d)
}

#[pyfunction]
fn hitchin(py: Python<'_>, k: u32) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &applications::hitchin_report(k).map_err(err)?)
}

#[pyfunction]
fn lebrun(py: Python<'_>, n: u32, p: u32) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &applications::lebrun_report(n, p).map_err(err)?)
}

#[pyfunction]
fn surfaces(py: Python<'_>, j: u32) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &applications::surface_report(j).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (chi, tau, sigma_chi, sigma_sq, p = 2))]
fn ricci_flat_moduli_dim(chi: i64, tau: i64, sigma_chi: i64, sigma_sq: i64, p: u32) -> PyResult<i64> {
    applications::ricci_flat_moduli_dim(&data(chi, tau, sigma_chi, sigma_sq, p)?).map_err(err)
}

/// Runs the self-check suites and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (p_max = 20))]
fn verify(py: Python<'_>, p_max: u32) -> PyResult<Bound<'_, PyAny>> {
    let report = py.detach(|| verify_mod::run(p_max, Pipeline::Standard)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn pyorbifold(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCyclotomic>()?;
    m.add_function(wrap_pyfunction!(correction_sum, m)?)?;
    m.add_function(wrap_pyfunction!(correction_sum_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(index_kawasaki, m)?)?;
    m.add_function(wrap_pyfunction!(index_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(index_smooth, m)?)?;
    m.add_function(wrap_pyfunction!(chi_orb, m)?)?;
    m.add_function(wrap_pyfunction!(tau_orb, m)?)?;
    m.add_function(wrap_pyfunction!(trig_sums, m)?)?;
    m.add_function(wrap_pyfunction!(hitchin, m)?)?;
    m.add_function(wrap_pyfunction!(lebrun, m)?)?;
    m.add_function(wrap_pyfunction!(surfaces, m)?)?;
    m.add_function(wrap_pyfunction!(ricci_flat_moduli_dim, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
