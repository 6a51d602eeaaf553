//! Python bindings: `import lcmlab`.

use lcmlab_core::analysis::{self, CheckName, CheckOptions};
use lcmlab_core::{aggregate, modular, sieve, Error, FactorLedger, IntPoly, LedgerOptions};
use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. }
        | Error::InvalidPolynomial(_)
        | Error::ZeroDiscriminant
        | Error::InvalidArgument(_)
        | Error::PreconditionUnmet(_)
        | Error::BoundBelowZone { .. } => PyValueError::new_err(e.to_string()),
        Error::CapExceeded { .. } | Error::BoundTooLarge(_) => PyOverflowError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Serialized core value handed to Python as plain dicts and lists.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Integer polynomial with nonzero leading coefficient.
///
/// Built from a string such as `"x^3 - 2*x + 7"` or from a list of
/// coefficients, constant term first.
#[pyclass(name = "Polynomial", module = "lcmlab", frozen)]
struct PyPolynomial {
    inner: IntPoly,
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = if let Ok(text) = value.extract::<String>() {
            text.parse::<IntPoly>().map_err(py_err)?
        } else {
            let coeffs: Vec<BigInt> = value.extract()?;
            IntPoly::new(coeffs).map_err(py_err)?
        };
        Ok(PyPolynomial { inner })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    /// `D = 1 + d·|f_d|`.
    #[getter]
    fn zone_constant(&self) -> PyResult<u64> {
        self.inner.zone_constant().map_err(py_err)
    }

    fn discriminant(&self) -> BigInt {
        self.inner.discriminant()
    }

    fn __call__(&self, n: BigInt) -> BigInt {
        self.inner.eval(&n)
    }

    /// Degree, discriminant, ramified primes and irreducibility status.
    fn profile<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.profile().map_err(py_err)?)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Prime-exponent ledger of `f(1), …, f(N)`.
#[pyclass(name = "Ledger", module = "lcmlab", frozen)]
struct PyLedger {
    inner: FactorLedger,
}

#[pymethods]
impl PyLedger {
    #[getter]
    fn n(&self) -> u64 {
        self.inner.n
    }

    #[getter]
    fn bound(&self) -> u64 {
        self.inner.bound
    }

    #[getter]
    fn poly(&self) -> PyPolynomial {
        PyPolynomial { inner: self.inner.poly.clone() }
    }

    fn lcm(&self) -> BigUint {
        self.inner.lcm()
    }

    fn radical(&self) -> BigUint {
        self.inner.radical()
    }

    fn product(&self) -> BigUint {
        self.inner.product()
    }

    /// Every prime dividing some `f(n)`, ascending.
    fn primes(&self) -> Vec<BigUint> {
        self.inner.entries.keys().cloned().collect()
    }

    /// `{p: alpha_p}`.
    fn alphas(&self) -> Vec<(BigUint, u64)> {
        self.inner.entries.iter().map(|(p, e)| (p.clone(), e.alpha)).collect()
    }

    /// Per-prime data as a dict, or `None` when `p` divides no value.
    fn local<'py>(&self, py: Python<'py>, p: BigUint) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.inner.entries.get(&p).map(|e| to_py(py, e)).transpose()
    }

    /// Log summary with the same keys as a sweep CSV row.
    fn summary<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &aggregate::summarize(&self.inner))
    }

    fn __len__(&self) -> usize {
        self.inner.entries.len()
    }

    fn __repr__(&self) -> String {
        format!("Ledger(poly='{}', N={}, primes={})", self.inner.poly, self.inner.n, self.inner.entries.len())
    }
}

fn options(bound: Option<u64>, workers: usize, seed: u64) -> LedgerOptions {
    LedgerOptions { bound, workers, seed, ..LedgerOptions::default() }
}

/// Sieve `f(1), …, f(N)` into a ledger. `bound` defaults to `D·N`.
#[pyfunction]
#[pyo3(signature = (poly, n, bound=None, workers=0, seed=0))]
fn build_ledger(py: Python<'_>, poly: &PyPolynomial, n: u64, bound: Option<u64>, workers: usize, seed: u64) -> PyResult<PyLedger> {
    let opts = options(bound, workers, seed);
    let f = poly.inner.clone();
    let inner = py.detach(move || sieve::build_ledger(&f, n, &opts)).map_err(py_err)?;
    Ok(PyLedger { inner })
}

#[pyfunction]
fn summarize<'py>(py: Python<'py>, ledger: &PyLedger) -> PyResult<Bound<'py, PyAny>> {
    ledger.summary(py)
}

/// Run named checks (or `"all"`) at one `N`; returns a list of report dicts.
#[pyfunction]
#[pyo3(signature = (poly, n, checks="all", seed=0, workers=0, identity_cases=1000, amgm_cases=1000))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    poly: &PyPolynomial,
    n: u64,
    checks: &str,
    seed: u64,
    workers: usize,
    identity_cases: usize,
    amgm_cases: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let names = CheckName::parse_list(checks).map_err(py_err)?;
    let opts = LedgerOptions { hits_above: Some(1), ..options(None, workers, seed) };
    let check_opts = CheckOptions { seed, identity_cases, amgm_cases, ..CheckOptions::default() };
    let f = poly.inner.clone();
    let reports = py
        .detach(move || {
            sieve::build_ledger(&f, n, &opts).map(|l| analysis::run_checks(&l, &names, &check_opts))
        })
        .map_err(py_err)?;
    to_py(py, &reports)
}

/// Brute-force factorization of every `f(n)`, `N ≤ 10^4`.
///
/// Returns `(lcm, radical, differences)` where `differences` lists every
/// disagreement with the sieve ledger.
#[pyfunction]
fn oracle(py: Python<'_>, poly: &PyPolynomial, n: u64) -> PyResult<(BigUint, BigUint, Vec<String>)> {
    let f = poly.inner.clone();
    py.detach(move || {
        let want = lcmlab_core::oracle::naive_run(&f, n)?;
        let got = sieve::build_ledger(&f, n, &LedgerOptions::default())?;
        let diff = lcmlab_core::oracle::ledger_diff(&got, &want.ledger);
        Ok((want.lcm_value, want.rad_value, diff))
    })
    .map_err(py_err)
}

/// Roots of `f` modulo the prime `p`, ascending.
#[pyfunction]
#[pyo3(signature = (poly, p, seed=0))]
fn roots_mod_p(poly: &PyPolynomial, p: u64, seed: u64) -> PyResult<Vec<BigUint>> {
    if !sieve::factor::is_prime_u64(p) {
        return Err(PyValueError::new_err(format!("{p} is not prime")));
    }
    Ok(modular::roots_mod_p_seeded(&poly.inner, p, seed).roots)
}

/// The integer `A` attached to distinct points `n_1, …, n_t`, `2 ≤ t ≤ d+1`.
#[pyfunction]
fn divided_difference_a(poly: &PyPolynomial, points: Vec<i64>) -> PyResult<BigInt> {
    analysis::divided_difference_a(&poly.inner, &points).map_err(py_err)
}

#[pymodule]
fn lcmlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyLedger>()?;
    m.add_function(wrap_pyfunction!(build_ledger, m)?)?;
    m.add_function(wrap_pyfunction!(summarize, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(roots_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(divided_difference_a, m)?)?;
    m.add("CHECKS", CheckName::ALL.iter().map(|c| c.as_str()).collect::<Vec<_>>())?;
    Ok(())
}
