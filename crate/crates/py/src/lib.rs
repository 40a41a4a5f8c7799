//! Python module `alvero`: polynomials, resultants, radical membership and
//! the real-root tools.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use alvero_core::groebner::{self as gb, Context, MonomialOrder};
use alvero_core::realroots::{self as rr, AceRecord, AceSpec, RealRootedPoly, RootProfile, SearchConfig};
use alvero_core::text::{parse_multipoly, parse_unipoly};
use alvero_core::{Budget, Error, MultiPoly, Rational, UniPoly};

const DEFAULT_BUDGET: u64 = alvero_core::budget::DEFAULT_STEP_BUDGET;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        Error::InvalidArgument(_) | Error::Parse { .. } | Error::AmbientMismatch { .. } => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn order(name: &str) -> PyResult<MonomialOrder> {
    name.parse().map_err(py_err)
}

/// Accepts ints, `fractions.Fraction` or strings like `"3/4"`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let s = obj.str()?.to_string();
    s.trim().parse::<Rational>().map_err(|_| PyValueError::new_err(format!("not a rational number: {s}")))
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.to_string(),))
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Polynomial in `a1, ..., an` with rational coefficients.
#[pyclass(name = "Poly", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPoly(MultiPoly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str, nvars: usize) -> PyResult<Self> {
        parse_multipoly(text, nvars).map(PyPoly).map_err(py_err)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.0.nvars()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Weighted degree with `a_j` of weight `j`, if all terms agree.
    fn isobaric_weight(&self) -> Option<u32> {
        self.0.isobaric_weight()
    }

    fn specialize<'py>(&self, py: Python<'py>, point: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let point = point.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        fraction(py, &self.0.specialize(&point).map_err(py_err)?)
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.checked_add(&other.0).map(PyPoly).map_err(py_err)
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.checked_sub(&other.0).map(PyPoly).map_err(py_err)
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.checked_mul(&other.0).map(PyPoly).map_err(py_err)
    }

    fn __pow__(&self, n: u32, _modulo: Option<u32>) -> Self {
        PyPoly(self.0.pow(n))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', {})", self.0, self.0.nvars())
    }
}

/// Polynomial in `x` whose coefficients are [`Poly`] values.
#[pyclass(name = "UniPoly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyUniPoly(UniPoly);

#[pymethods]
impl PyUniPoly {
    #[new]
    fn new(text: &str, nvars: usize) -> PyResult<Self> {
        parse_unipoly(text, nvars).map(PyUniPoly).map_err(py_err)
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.0.nvars()
    }

    fn coeff(&self, k: usize) -> PyPoly {
        PyPoly(self.0.coeff(k))
    }

    fn hasse(&self, i: usize) -> PyResult<Self> {
        self.0.hasse_derivative(i).map(PyUniPoly).map_err(py_err)
    }

    /// Coefficients (constant term first) after substituting the point.
    fn specialize<'py>(&self, py: Python<'py>, point: Vec<Bound<'py, PyAny>>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let point = point.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        let q = self.0.specialize(&point).map_err(py_err)?;
        q.coeffs().iter().map(|c| fraction(py, c)).collect()
    }

    fn __mul__(&self, other: &PyUniPoly) -> PyResult<Self> {
        self.0.checked_mul(&other.0).map(PyUniPoly).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("UniPoly('{}', {})", self.0, self.0.nvars())
    }
}

#[pyfunction]
fn generic_polynomial(d: usize) -> PyResult<PyUniPoly> {
    alvero_core::generic_casas_polynomial(d).map(PyUniPoly).map_err(py_err)
}

#[pyfunction]
fn resultant(f: &PyUniPoly, g: &PyUniPoly) -> PyResult<PyPoly> {
    alvero_core::resultant(&f.0, &g.0).map(PyPoly).map_err(py_err)
}

/// `[R_1, ..., R_(d-1)]`.
#[pyfunction]
fn resultants(py: Python<'_>, d: usize) -> PyResult<Vec<PyPoly>> {
    let fam = py.detach(|| alvero_core::casas_resultants(d)).map_err(py_err)?;
    Ok(fam.members.into_iter().map(PyPoly).collect())
}

#[pyfunction]
#[pyo3(signature = (d, order = "grevlex", budget = DEFAULT_BUDGET))]
fn verify<'py>(py: Python<'py>, d: usize, order: &str, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let order = self::order(order)?;
    let b = Budget::new(budget);
    let r = py.detach(|| gb::verify_conjecture(d, &order, &Context::new(&b))).map_err(py_err)?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (d, order = "grevlex", budget = DEFAULT_BUDGET))]
fn theorem<'py>(py: Python<'py>, d: usize, order: &str, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let order = self::order(order)?;
    let b = Budget::new(budget);
    let r = py.detach(|| gb::verify_main_theorem(d, &order, &Context::new(&b))).map_err(py_err)?;
    to_py(py, &r)
}

fn polys(gens: &[PyRef<'_, PyPoly>]) -> Vec<MultiPoly> {
    gens.iter().map(|g| g.0.clone()).collect()
}

#[pyfunction]
#[pyo3(signature = (p, gens, order = "grevlex", budget = DEFAULT_BUDGET))]
fn ideal_membership(p: &PyPoly, gens: Vec<PyRef<'_, PyPoly>>, order: &str, budget: u64) -> PyResult<bool> {
    let b = Budget::new(budget);
    Ok(gb::ideal_membership(&p.0, &polys(&gens), &self::order(order)?, false, &b).map_err(py_err)?.verdict)
}

#[pyfunction]
#[pyo3(signature = (p, gens, order = "grevlex", budget = DEFAULT_BUDGET))]
fn radical_membership(p: &PyPoly, gens: Vec<PyRef<'_, PyPoly>>, order: &str, budget: u64) -> PyResult<bool> {
    let b = Budget::new(budget);
    Ok(gb::radical_membership(&p.0, &polys(&gens), &self::order(order)?, &b).map_err(py_err)?.verdict)
}

/// `[(root, multiplicity), ...]` of a real-rooted polynomial, constant term first.
#[pyfunction]
#[pyo3(signature = (coeffs, cluster_tol = rr::DEFAULT_CLUSTER_TOL))]
fn real_roots(coeffs: Vec<f64>, cluster_tol: f64) -> PyResult<Vec<(f64, usize)>> {
    let p = rr::real_roots(&coeffs, cluster_tol).map_err(py_err)?;
    Ok(p.roots.into_iter().zip(p.multiplicities).collect())
}

/// m-th smallest root of `H_k(f)` for `f` with the given roots.
#[pyfunction]
fn alpha(roots: Vec<f64>, k: usize, m: usize) -> PyResult<f64> {
    let f = RealRootedPoly::from_roots(&roots).map_err(py_err)?;
    rr::alpha(&f, k, m).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (roots, tol = 1e-8))]
fn check_interlacing<'py>(py: Python<'py>, roots: Vec<f64>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let r = rr::check_interlacing(&RootProfile::from_roots(&roots, 0.0), tol).map_err(py_err)?;
    to_py(py, &r)
}

/// Seeded almost-counterexample search with the level and chain checks.
#[pyfunction]
#[pyo3(signature = (degree, level, seed = 0, restarts = 16, tol = 1e-6))]
fn find_ace<'py>(py: Python<'py>, degree: usize, level: usize, seed: u64, restarts: usize, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let spec = AceSpec::new(degree, level).map_err(py_err)?;
    let cfg = SearchConfig { seed, restarts, ..SearchConfig::default() };
    let outcome = py.detach(|| rr::find_almost_counterexample(&spec, &cfg)).map_err(py_err)?;
    let converged = outcome.is_ok();
    let c = outcome.unwrap_or_else(|f| f.best);
    let level_report = rr::verify_level(&c, &spec, tol, cfg.gap_threshold).map_err(py_err)?;
    let chain = if converged && level_report.verdict && level + 3 >= degree {
        Some(rr::verify_contradiction_chain(&c, &spec, tol).map_err(py_err)?)
    } else {
        None
    };
    to_py(
        py,
        &serde_json::json!({
            "converged": converged,
            "record": AceRecord::new(&spec, &c),
            "level": level_report,
            "chain": chain,
        }),
    )
}

#[pymodule]
fn alvero(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyUniPoly>()?;
    m.add_function(wrap_pyfunction!(generic_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(resultant, m)?)?;
    m.add_function(wrap_pyfunction!(resultants, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(theorem, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_membership, m)?)?;
    m.add_function(wrap_pyfunction!(radical_membership, m)?)?;
    m.add_function(wrap_pyfunction!(real_roots, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(check_interlacing, m)?)?;
    m.add_function(wrap_pyfunction!(find_ace, m)?)?;
    Ok(())
}
