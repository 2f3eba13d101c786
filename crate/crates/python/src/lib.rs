//! Python module `prolong`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use prolong_core::contact_poly::{contact_bracket, oracle_full, Grading, Weight, WeightedPolynomial};
use prolong_core::paper_models;
use prolong_core::prolongation::{tanaka as run_tanaka, tanaka_nonpositive, ProlongationResult, TanakaOptions};
use prolong_core::verify::{self as checks, max_degree_from_env};
use prolong_core::GradedAlgebra;

fn err(e: prolong_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Graded Lie algebra with rational structure constants.
#[pyclass(name = "Algebra", module = "prolong", frozen)]
struct PyAlgebra(GradedAlgebra);

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        GradedAlgebra::from_json(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn names(&self) -> Vec<String> {
        self.0.basis().iter().map(|b| b.name.clone()).collect()
    }

    fn degrees(&self) -> Vec<i32> {
        self.0.basis().iter().map(|b| b.degree).collect()
    }

    /// `[a, b]` as a map from basis names to rational strings.
    fn bracket(&self, a: &str, b: &str) -> PyResult<BTreeMap<String, String>> {
        let index = |n: &str| {
            self.0
                .index_of(n)
                .ok_or_else(|| PyValueError::new_err(format!("unknown basis element `{n}`")))
        };
        let (i, j) = (index(a)?, index(b)?);
        Ok(self
            .0
            .bracket_basis(i, j)
            .iter()
            .map(|(t, c)| (self.0.name(*t).to_string(), c.to_string()))
            .collect())
    }

    fn is_lie(&self) -> bool {
        self.0.check_jacobi().is_empty()
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={})", self.0.dim())
    }
}

/// Outcome of a Tanaka prolongation.
#[pyclass(name = "Prolongation", module = "prolong", frozen)]
struct PyProlongation(ProlongationResult);

#[pymethods]
impl PyProlongation {
    fn dims(&self) -> BTreeMap<i32, usize> {
        self.0.dims().into_iter().collect()
    }

    #[getter]
    fn total_dim(&self) -> usize {
        self.0.total_dim()
    }

    #[getter]
    fn nu(&self) -> Option<i32> {
        self.0.nu()
    }

    #[getter]
    fn terminated(&self) -> String {
        serde_json::to_value(self.0.terminated)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }

    fn algebra(&self) -> PyAlgebra {
        PyAlgebra(self.0.assembled.clone())
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Prolongation(total_dim={}, nu={:?})", self.0.total_dim(), self.0.nu())
    }
}

/// Polynomial generating function of a contact vector field.
#[pyclass(name = "Polynomial", module = "prolong", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial(WeightedPolynomial);

#[pymethods]
impl PyPolynomial {
    #[staticmethod]
    fn parse(k: usize, text: &str) -> PyResult<Self> {
        WeightedPolynomial::parse(k, text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn x(k: usize, i: usize) -> Self {
        Self(WeightedPolynomial::x(k, i))
    }

    #[staticmethod]
    fn y(k: usize, i: usize) -> Self {
        Self(WeightedPolynomial::y(k, i))
    }

    #[staticmethod]
    fn z(k: usize) -> Self {
        Self(WeightedPolynomial::z(k))
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Contact bracket `{self, other}`.
    fn bracket(&self, other: &PyPolynomial) -> PyResult<Self> {
        contact_bracket(&self.0, &other.0).map(Self).map_err(err)
    }

    /// Weight under `"standard"` or `"second"`; `None` for zero, error if not homogeneous.
    #[pyo3(signature = (grading = "standard"))]
    fn weight(&self, grading: &str) -> PyResult<Option<i64>> {
        let g = match grading {
            "standard" => Grading::Standard,
            "second" => Grading::Second,
            _ => return Err(PyValueError::new_err(format!("unknown grading `{grading}`"))),
        };
        match self.0.weight(g) {
            Weight::Zero => Ok(None),
            Weight::Homogeneous(w) => Ok(Some(w)),
            Weight::Inhomogeneous => Err(PyValueError::new_err("polynomial is not homogeneous")),
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_json_value()).expect("serializable")
    }

    fn __add__(&self, other: &PyPolynomial) -> Self {
        Self(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &PyPolynomial) -> Self {
        Self(self.0.sub(&other.0))
    }

    fn __mul__(&self, other: &PyPolynomial) -> Self {
        Self(self.0.mul(&other.0))
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.0.to_string())
    }
}

#[pyfunction]
fn make_m(k: usize) -> PyResult<PyAlgebra> {
    paper_models::make_m(k).map(PyAlgebra).map_err(err)
}

#[pyfunction]
fn make_gprime(k: usize) -> PyResult<PyAlgebra> {
    paper_models::make_gprime(k).map(PyAlgebra).map_err(err)
}

#[pyfunction]
fn make_heisenberg(k: usize) -> PyResult<PyAlgebra> {
    paper_models::make_heisenberg(k).map(|(a, _)| PyAlgebra(a)).map_err(err)
}

/// `n ⊕ s` as an abstract algebra with degree-zero part.
#[pyfunction]
fn make_ns(k: usize) -> PyResult<PyAlgebra> {
    paper_models::make_s(k).map(|m| PyAlgebra(m.algebra)).map_err(err)
}

/// Prolongs `algebra`. Inputs with a degree-zero part keep it fixed.
#[pyfunction]
#[pyo3(signature = (algebra, max_degree = None))]
fn tanaka(py: Python<'_>, algebra: &PyAlgebra, max_degree: Option<usize>) -> PyResult<PyProlongation> {
    let alg = algebra.0.clone();
    let options = TanakaOptions {
        max_degree: max_degree.unwrap_or_else(max_degree_from_env),
        ..Default::default()
    };
    py.detach(move || {
        if alg.basis().iter().any(|b| b.degree == 0) {
            tanaka_nonpositive(&alg, &options)
        } else {
            run_tanaka(&alg, None, &options)
        }
    })
    .map(PyProlongation)
    .map_err(err)
}

/// Maximal minors of the catalecticant matrix cutting out the `r`-th secant variety.
#[pyfunction]
fn secant_ideal(k: usize, r: usize) -> PyResult<Vec<PyPolynomial>> {
    paper_models::secant_ideal(k, r)
        .map(|v| v.into_iter().map(PyPolynomial).collect())
        .map_err(err)
}

/// Polynomial prolongation of `n ⊕ s`: components by degree, each a list of polynomials.
#[pyfunction]
#[pyo3(signature = (k, max_degree = None))]
fn oracle(py: Python<'_>, k: usize, max_degree: Option<usize>) -> PyResult<BTreeMap<i32, Vec<PyPolynomial>>> {
    let o = py
        .detach(|| oracle_full(k, max_degree.unwrap_or_else(max_degree_from_env)))
        .map_err(err)?;
    Ok(o.components
        .iter()
        .map(|c| (c.degree as i32, c.basis().into_iter().map(PyPolynomial).collect()))
        .collect())
}

/// Formula checks for `m(k)` as a dict; `cross=True` adds the oracle comparison.
#[pyfunction]
#[pyo3(signature = (k, cross = false))]
fn verify<'py>(py: Python<'py>, k: usize, cross: bool) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| if cross { checks::cross_check(k) } else { checks::verify_k(k) })
        .map_err(err)?;
    json_to_py(py, &serde_json::to_string(&report).expect("serializable"))
}

#[pymodule]
fn prolong(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyProlongation>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(make_m, m)?)?;
    m.add_function(wrap_pyfunction!(make_gprime, m)?)?;
    m.add_function(wrap_pyfunction!(make_heisenberg, m)?)?;
    m.add_function(wrap_pyfunction!(make_ns, m)?)?;
    m.add_function(wrap_pyfunction!(tanaka, m)?)?;
    m.add_function(wrap_pyfunction!(secant_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
