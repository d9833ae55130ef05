//! Python bindings: `import lgb`.
//!
//! Monomials cross the boundary as strings such as `"x1^2*x3"`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use lgb_core::oracle::{self, DEFAULT_BUDGET, DEFAULT_PRIME};
use lgb_core::{LgbOptions, Monomial, MonomialIdeal, Tier};

create_exception!(lgb, GenericityError, PyValueError);

fn to_py(e: lgb_core::Error) -> PyErr {
    match e {
        lgb_core::Error::GenericityViolation { .. } => GenericityError::new_err(e.to_string()),
        lgb_core::Error::ThreadPool(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Number of variables and the degree of each polynomial.
#[pyclass(frozen, skip_from_py_object, module = "lgb")]
#[derive(Clone)]
pub struct InstanceSpec {
    inner: lgb_core::InstanceSpec,
}

#[pymethods]
impl InstanceSpec {
    #[new]
    fn new(n: usize, degrees: Vec<u32>) -> PyResult<Self> {
        let inner = lgb_core::InstanceSpec::new(n, degrees).map_err(to_py)?;
        Ok(InstanceSpec { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn degrees(&self) -> Vec<u32> {
        self.inner.degrees().to_vec()
    }

    fn degree_bound(&self) -> u32 {
        lgb_core::degree_bound(&self.inner)
    }

    fn macaulay_bound(&self) -> u32 {
        self.inner.macaulay_bound()
    }

    /// Generic Hilbert series through `cap` (default: the degree bound).
    #[pyo3(signature = (cap=None))]
    fn hilbert_series(&self, cap: Option<usize>) -> HilbertSeries {
        let cap = cap.unwrap_or(lgb_core::degree_bound(&self.inner) as usize);
        let s = lgb_core::generic_hilbert_series(&self.inner, cap);
        HilbertSeries {
            coeffs: s.coeffs,
            finite: s.finite,
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "InstanceSpec(n={}, degrees={:?})",
            self.inner.n(),
            self.inner.degrees()
        )
    }
}

#[pyclass(frozen, get_all, module = "lgb")]
pub struct HilbertSeries {
    coeffs: Vec<i128>,
    finite: bool,
}

#[pymethods]
impl HilbertSeries {
    fn __repr__(&self) -> String {
        lgb_core::BracketSeries {
            coeffs: self.coeffs.clone(),
            finite: self.finite,
        }
        .to_string()
    }
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "lgb")]
#[derive(Clone)]
pub struct DegreeTrace {
    d: u32,
    candidates_checked: u64,
    b_d_size: u64,
    n_d: u64,
    relevant_generators: u64,
}

#[pymethods]
impl DegreeTrace {
    fn __repr__(&self) -> String {
        format!(
            "DegreeTrace(d={}, candidates_checked={}, b_d_size={}, n_d={}, relevant_generators={})",
            self.d, self.candidates_checked, self.b_d_size, self.n_d, self.relevant_generators
        )
    }
}

impl From<&lgb_core::DegreeTrace> for DegreeTrace {
    fn from(t: &lgb_core::DegreeTrace) -> Self {
        DegreeTrace {
            d: t.d,
            candidates_checked: t.candidates_checked,
            b_d_size: t.b_d_size,
            n_d: t.n_d,
            relevant_generators: t.relevant_generators,
        }
    }
}

#[pyclass(frozen, module = "lgb")]
pub struct LgbResult {
    inner: lgb_core::LgbResult,
}

#[pymethods]
impl LgbResult {
    #[getter]
    fn degree_bound(&self) -> u32 {
        self.inner.degree_bound
    }

    /// Leading monomials, ascending by degree and descending within a degree.
    #[getter]
    fn leading_monomials(&self) -> Vec<String> {
        self.inner
            .by_degree()
            .into_iter()
            .flat_map(|(_, g)| g.into_iter().map(|m| m.to_string()))
            .collect()
    }

    fn by_degree(&self) -> Vec<(u32, Vec<String>)> {
        self.inner
            .by_degree()
            .into_iter()
            .map(|(d, g)| (d, g.into_iter().map(|m| m.to_string()).collect()))
            .collect()
    }

    #[getter]
    fn traces(&self) -> Vec<DegreeTrace> {
        self.inner.traces.iter().map(DegreeTrace::from).collect()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __len__(&self) -> usize {
        self.inner.leading_monomials.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "LgbResult({}, D={}, {} leading monomials)",
            self.inner.spec,
            self.inner.degree_bound,
            self.inner.leading_monomials.len()
        )
    }
}

/// Leading monomials of a minimal Gröbner basis of a generic sequence.
#[pyfunction]
#[pyo3(signature = (spec, tier=4, threads=1))]
fn compute(py: Python<'_>, spec: &InstanceSpec, tier: u8, threads: usize) -> PyResult<LgbResult> {
    let tier = Tier::try_from(tier).map_err(to_py)?;
    let spec = spec.inner.clone();
    let run = py
        .detach(|| lgb_core::lgb_improved_with(&spec, LgbOptions { tier, threads }))
        .map_err(to_py)?;
    Ok(LgbResult { inner: run.result })
}

/// Reference algorithm: full scan of every degree.
#[pyfunction]
fn compute_basic(py: Python<'_>, spec: &InstanceSpec) -> PyResult<LgbResult> {
    let spec = spec.inner.clone();
    let inner = py.detach(|| lgb_core::lgb_basic(&spec)).map_err(to_py)?;
    Ok(LgbResult { inner })
}

fn ideal(n: usize, generators: Vec<String>) -> PyResult<MonomialIdeal> {
    let gens = generators
        .iter()
        .map(|g| Monomial::parse(g, n))
        .collect::<lgb_core::Result<Vec<_>>>()
        .map_err(to_py)?;
    Ok(MonomialIdeal::minimalize(n, gens))
}

/// Hilbert series of `k[x1..xn] / (generators)` through degree `cap`.
#[pyfunction]
fn hps(n: usize, generators: Vec<String>, cap: usize) -> PyResult<Vec<i128>> {
    Ok(ideal(n, generators)?.hps(cap).coeffs().to_vec())
}

/// Minimal generators, ascending under grevlex.
#[pyfunction]
fn minimalize(n: usize, generators: Vec<String>) -> PyResult<Vec<String>> {
    Ok(ideal(n, generators)?
        .generators()
        .iter()
        .map(|g| g.to_string())
        .collect())
}

#[pyfunction]
fn weakly_revlex(n: usize, generators: Vec<String>) -> PyResult<bool> {
    Ok(lgb_core::weakly_revlex_check(&ideal(n, generators)?))
}

/// Degree-`d` monomials in descending grevlex order.
#[pyfunction]
fn enumerate_degree(n: usize, d: u32) -> Vec<String> {
    lgb_core::DegreeMonomials::new(n, d)
        .map(|m| m.to_string())
        .collect()
}

#[pyfunction]
fn count_degree(n: usize, d: u32) -> u128 {
    lgb_core::count_degree(n, d)
}

/// Grevlex comparison: -1, 0 or 1.
#[pyfunction]
fn grevlex_cmp(n: usize, a: &str, b: &str) -> PyResult<i8> {
    let a = Monomial::parse(a, n).map_err(to_py)?;
    let b = Monomial::parse(b, n).map_err(to_py)?;
    Ok(a.grevlex_cmp(&b) as i8)
}

/// Buchberger comparison on random sequences; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (spec, seeds=vec![1, 2, 3, 4, 5], prime=DEFAULT_PRIME, budget=DEFAULT_BUDGET))]
fn verify<'py>(
    py: Python<'py>,
    spec: &InstanceSpec,
    seeds: Vec<u64>,
    prime: u32,
    budget: u128,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = spec.inner.clone();
    let report = py
        .detach(|| oracle::verify(&spec, &seeds, prime, budget))
        .map_err(to_py)?;
    let text = serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pymodule]
fn lgb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GenericityError", m.py().get_type::<GenericityError>())?;
    m.add_class::<InstanceSpec>()?;
    m.add_class::<HilbertSeries>()?;
    m.add_class::<DegreeTrace>()?;
    m.add_class::<LgbResult>()?;
    m.add_function(wrap_pyfunction!(compute, m)?)?;
    m.add_function(wrap_pyfunction!(compute_basic, m)?)?;
    m.add_function(wrap_pyfunction!(hps, m)?)?;
    m.add_function(wrap_pyfunction!(minimalize, m)?)?;
    m.add_function(wrap_pyfunction!(weakly_revlex, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_degree, m)?)?;
    m.add_function(wrap_pyfunction!(count_degree, m)?)?;
    m.add_function(wrap_pyfunction!(grevlex_cmp, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
