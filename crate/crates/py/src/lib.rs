//! Python module `hartogs`.
//!
//! Coefficient maps cross the boundary as dicts keyed by exponent tuples with
//! complex values, e.g. `{(0, -1): 1+0j, (2, 1): 0.5j}`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use hartogs_core::coeffspace::{self, LaurentCoeffs, MixedPoly, TorusSeries};
use hartogs_core::geometry::HartogsPoint;
use hartogs_core::isometries::{self, BidiscCoeffs};
use hartogs_core::projections::{self, BlowupRegime};
use hartogs_core::{kernels, HartogsError};

fn py_err(e: HartogsError) -> PyErr {
    match e {
        HartogsError::Divergence { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn point(z: (Complex64, Complex64)) -> PyResult<HartogsPoint> {
    HartogsPoint::new(z.0, z.1).map_err(py_err)
}

type Pairs = BTreeMap<(i64, i64), Complex64>;

/// Holomorphic Laurent polynomial `sum c_jk z1^j z2^k` with `j >= 0`.
#[pyclass(name = "Laurent", module = "hartogs", skip_from_py_object)]
#[derive(Clone)]
struct PyLaurent {
    inner: LaurentCoeffs,
}

#[pymethods]
impl PyLaurent {
    #[new]
    #[pyo3(signature = (coeffs = None))]
    fn new(coeffs: Option<Pairs>) -> PyResult<Self> {
        let inner = LaurentCoeffs::from_terms(coeffs.unwrap_or_default()).map_err(py_err)?;
        Ok(Self { inner })
    }

    fn to_dict(&self) -> Pairs {
        self.inner.iter().collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Laurent({})", self.inner.to_json())
    }

    fn evaluate(&self, z1: Complex64, z2: Complex64) -> PyResult<Complex64> {
        Ok(coeffspace::evaluate(&self.inner, &point((z1, z2))?))
    }

    /// Squared norm in the space selected by `nu`.
    fn norm_sq(&self, nu: f64) -> PyResult<f64> {
        coeffspace::space_norm_sq(nu, &self.inner).map_err(py_err)
    }

    fn inner(&self, nu: f64, other: &PyLaurent) -> PyResult<Complex64> {
        coeffspace::inner_product(nu, &self.inner, &other.inner).map_err(py_err)
    }

    fn star_norm(&self, nu: f64) -> PyResult<f64> {
        coeffspace::star_norm(nu, &self.inner).map_err(py_err)
    }

    fn boundary_values(&self) -> PyTorusSeries {
        PyTorusSeries { inner: coeffspace::boundary_values(&self.inner) }
    }
}

/// Mixed polynomial `sum c z1^a conj(z1)^b z2^c conj(z2)^d`.
#[pyclass(name = "MixedPoly", module = "hartogs", skip_from_py_object)]
#[derive(Clone)]
struct PyMixedPoly {
    inner: MixedPoly,
}

#[pymethods]
impl PyMixedPoly {
    #[new]
    #[pyo3(signature = (coeffs = None))]
    fn new(coeffs: Option<BTreeMap<(i64, i64, i64, i64), Complex64>>) -> PyResult<Self> {
        let mut inner = MixedPoly::new();
        for ((a, b, c, d), v) in coeffs.unwrap_or_default() {
            inner.add(a, b, c, d, v).map_err(py_err)?;
        }
        Ok(Self { inner })
    }

    fn to_dict(&self) -> BTreeMap<(i64, i64, i64, i64), Complex64> {
        self.inner.iter().collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn evaluate(&self, z1: Complex64, z2: Complex64) -> PyResult<Complex64> {
        Ok(self.inner.evaluate(&point((z1, z2))?))
    }
}

/// Trigonometric series `sum c_jk e^{i(j theta + k gamma)}` on the torus.
#[pyclass(name = "TorusSeries", module = "hartogs", skip_from_py_object)]
#[derive(Clone)]
struct PyTorusSeries {
    inner: TorusSeries,
}

#[pymethods]
impl PyTorusSeries {
    #[new]
    #[pyo3(signature = (coeffs = None))]
    fn new(coeffs: Option<Pairs>) -> Self {
        let mut inner = TorusSeries::new();
        for ((j, k), c) in coeffs.unwrap_or_default() {
            inner.add(j, k, c);
        }
        Self { inner }
    }

    fn to_dict(&self) -> Pairs {
        self.inner.iter().collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn evaluate(&self, theta: f64, gamma: f64) -> Complex64 {
        self.inner.evaluate(theta, gamma)
    }

    fn l2_norm_sq(&self) -> f64 {
        self.inner.l2_norm_sq()
    }

    /// Row-major `n x n` samples, row index for `theta`.
    fn sample_grid(&self, n: usize) -> Vec<Complex64> {
        self.inner.sample_grid(n)
    }
}

#[pyfunction]
fn index_member(nu: f64, j: i64, k: i64) -> bool {
    coeffspace::index_member(nu, j, k)
}

#[pyfunction]
fn monomial_norm_sq(nu: f64, j: i64, k: i64) -> f64 {
    coeffspace::monomial_norm_sq(nu, j, k)
}

/// Kernel `K(z, w)` of the space selected by `nu`; points are `(z1, z2)` tuples.
#[pyfunction]
fn kernel(nu: f64, z: (Complex64, Complex64), w: (Complex64, Complex64)) -> PyResult<Complex64> {
    kernels::kernel(nu, &point(z)?, &point(w)?).map_err(py_err)
}

#[pyfunction]
fn kernel_coefficient(nu: f64, j: i64, k: i64) -> PyResult<f64> {
    kernels::kernel_coefficient(nu, j, k).map_err(py_err)
}

#[pyfunction]
fn project_bergman(nu: f64, f: &PyMixedPoly) -> PyResult<PyLaurent> {
    let inner = projections::project_bergman(nu, &f.inner).map_err(py_err)?;
    Ok(PyLaurent { inner })
}

#[pyfunction]
fn d_nu(nu: f64) -> PyResult<f64> {
    projections::d_nu(nu).map_err(py_err)
}

#[pyfunction]
fn project_szego(f: &PyTorusSeries) -> PyTorusSeries {
    PyTorusSeries { inner: projections::project_szego(&f.inner) }
}

/// Szego projection of row-major `n x n` samples.
#[pyfunction]
fn project_szego_grid(samples: Vec<Complex64>, n: usize) -> PyResult<Vec<Complex64>> {
    projections::project_szego_grid(&samples, n).map_err(py_err)
}

/// `(p_minus, p_plus)`.
#[pyfunction]
fn critical_range(nu: f64) -> PyResult<(f64, f64)> {
    let r = projections::critical_range(nu).map_err(py_err)?;
    Ok((r.p_minus, r.p_plus))
}

/// `(alpha, beta, gamma)` of a feasible Schur test, or `None`.
#[pyfunction]
fn schur_feasible(nu: f64, p: f64) -> Option<(f64, f64, f64)> {
    projections::schur_feasible(nu, p).map(|s| (s.alpha, s.beta, s.gamma))
}

/// Truncation scan as a dict with keys `s`, `epsilons`, `integrals`,
/// `fitted_slope`, `loglog_slope` and `regime`.
#[pyfunction]
fn blowup_scan(py: Python<'_>, nu: f64, p: f64, epsilons: Vec<f64>) -> PyResult<Bound<'_, pyo3::types::PyDict>> {
    let scan = projections::blowup_scan(nu, p, &epsilons).map_err(py_err)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("s", scan.s)?;
    d.set_item("epsilons", scan.epsilons)?;
    d.set_item("integrals", scan.integrals)?;
    d.set_item("fitted_slope", scan.fitted_slope)?;
    d.set_item("loglog_slope", scan.loglog_slope)?;
    let regime = match scan.regime {
        BlowupRegime::Power => "power",
        BlowupRegime::Logarithmic => "logarithmic",
        BlowupRegime::Convergent => "convergent",
    };
    d.set_item("regime", regime)?;
    Ok(d)
}

fn bidisc_dict(g: &BidiscCoeffs) -> Pairs {
    g.iter().collect()
}

#[pyfunction]
fn hardy_to_bidisc(f: &PyLaurent) -> PyResult<Pairs> {
    Ok(bidisc_dict(&isometries::hardy_to_bidisc(&f.inner).map_err(py_err)?))
}

#[pyfunction]
fn bidisc_to_hardy(g: Pairs) -> PyResult<PyLaurent> {
    let g = BidiscCoeffs::from_terms(g).map_err(py_err)?;
    Ok(PyLaurent { inner: isometries::bidisc_to_hardy(&g) })
}

#[pyfunction]
fn dirichlet_to_bidisc(f: &PyLaurent) -> PyResult<Pairs> {
    Ok(bidisc_dict(&isometries::dirichlet_to_bidisc(&f.inner).map_err(py_err)?))
}

#[pyfunction]
fn bidisc_to_dirichlet(g: Pairs) -> PyResult<PyLaurent> {
    let g = BidiscCoeffs::from_terms(g).map_err(py_err)?;
    Ok(PyLaurent { inner: isometries::bidisc_to_dirichlet(&g) })
}

/// Coefficients of the pullback to the bidisc and its weighted norm.
#[pyfunction]
fn bergman_pullback(nu: f64, f: &PyLaurent) -> PyResult<(Pairs, f64)> {
    let g = isometries::bergman_pullback(nu, &f.inner).map_err(py_err)?;
    let norm = g.norm_sq().map_err(py_err)?;
    Ok((g.iter().collect(), norm))
}

/// Squared norms of a bidisc series in the Hardy and Dirichlet spaces of the bidisc.
#[pyfunction]
fn bidisc_norms_sq(g: Pairs) -> PyResult<(f64, f64)> {
    let g = BidiscCoeffs::from_terms(g).map_err(py_err)?;
    Ok((g.hardy_norm_sq(), g.dirichlet_norm_sq()))
}

#[pymodule]
fn hartogs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurent>()?;
    m.add_class::<PyMixedPoly>()?;
    m.add_class::<PyTorusSeries>()?;
    m.add_function(wrap_pyfunction!(index_member, m)?)?;
    m.add_function(wrap_pyfunction!(monomial_norm_sq, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(project_bergman, m)?)?;
    m.add_function(wrap_pyfunction!(d_nu, m)?)?;
    m.add_function(wrap_pyfunction!(project_szego, m)?)?;
    m.add_function(wrap_pyfunction!(project_szego_grid, m)?)?;
    m.add_function(wrap_pyfunction!(critical_range, m)?)?;
    m.add_function(wrap_pyfunction!(schur_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(blowup_scan, m)?)?;
    m.add_function(wrap_pyfunction!(hardy_to_bidisc, m)?)?;
    m.add_function(wrap_pyfunction!(bidisc_to_hardy, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet_to_bidisc, m)?)?;
    m.add_function(wrap_pyfunction!(bidisc_to_dirichlet, m)?)?;
    m.add_function(wrap_pyfunction!(bergman_pullback, m)?)?;
    m.add_function(wrap_pyfunction!(bidisc_norms_sq, m)?)?;
    Ok(())
}
