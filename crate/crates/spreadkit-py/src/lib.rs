//! Python bindings: finite fields, subspaces, subspace codes, bounds, and
//! the brute-force oracle, exposed as the `spreadkit_py` extension module.

use std::path::PathBuf;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use spreadkit::bounds;
use spreadkit::codes;
use spreadkit::field::FieldCtx;
use spreadkit::search;
use spreadkit::spread_file::SpreadFile;
use spreadkit::subspace;
use spreadkit::verify;
use spreadkit::{analysis, Error};

fn to_py_err(e: Error) -> PyErr {
    match &e {
        Error::Io(_) => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finite field GF(p^e) with packed-integer element encoding.
#[pyclass(name = "Field", frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Hash)]
struct Field {
    inner: FieldCtx,
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (p, e = 1))]
    fn new(p: u64, e: u32) -> PyResult<Self> {
        Ok(Field { inner: FieldCtx::new(p, e).map_err(to_py_err)? })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn e(&self) -> u32 {
        self.inner.e()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    /// Modulus polynomial coefficients, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus_coeffs()
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        self.inner.add(a, b)
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.inner.sub(a, b)
    }

    fn neg(&self, a: u64) -> u64 {
        self.inner.neg(a)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        self.inner.mul(a, b)
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        self.inner.inv(a).map_err(to_py_err)
    }

    fn pow(&self, a: u64, exp: u64) -> u64 {
        self.inner.pow(a, exp)
    }

    /// Coordinates of an element over the base field GF(p).
    fn expand(&self, a: u64) -> Vec<u64> {
        self.inner.expand_to_base(a)
    }

    fn pack(&self, coeffs: Vec<u64>) -> PyResult<u64> {
        self.inner.from_base_coeffs(&coeffs).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// A k-dimensional subspace of F_q^n in canonical echelon form.
#[pyclass(name = "Subspace", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Hash)]
struct PySubspace {
    inner: subspace::Subspace,
}

#[pymethods]
impl PySubspace {
    #[staticmethod]
    fn from_generators(field: &Field, n: usize, generators: Vec<Vec<u64>>) -> PyResult<Self> {
        let inner = subspace::Subspace::from_generators(field.inner, n, &generators)
            .map_err(to_py_err)?;
        Ok(PySubspace { inner })
    }

    #[getter]
    fn field(&self) -> Field {
        Field { inner: self.inner.ctx() }
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// The canonical reduced-row-echelon basis, row by row.
    #[getter]
    fn basis(&self) -> Vec<Vec<u64>> {
        self.inner.basis().row_vecs()
    }

    #[getter]
    fn pivots(&self) -> Vec<usize> {
        self.inner.pivots().to_vec()
    }

    /// (dim_sum, dim_meet, subspace_distance, injection_distance).
    fn distances(&self, other: &PySubspace) -> PyResult<(usize, usize, u32, u32)> {
        let d = self.inner.distances(&other.inner).map_err(to_py_err)?;
        Ok((d.dim_sum, d.dim_meet, d.subspace, d.injection))
    }

    fn contains(&self, vector: Vec<u64>) -> bool {
        self.inner.contains_vector(&vector)
    }

    /// Normalized coordinates of every point of the subspace.
    fn points(&self) -> Vec<Vec<u64>> {
        self.inner
            .enumerate_points()
            .into_iter()
            .map(|p| p.coords().to_vec())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Subspace(dim={}, ambient={})", self.inner.dim(), self.inner.ambient_dim())
    }
}

/// A constant-dimension subspace code.
#[pyclass(name = "SubspaceCode", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PySubspaceCode {
    inner: codes::SubspaceCode,
}

#[pymethods]
impl PySubspaceCode {
    #[staticmethod]
    #[pyo3(signature = (codewords, declared_distance = None))]
    fn from_subspaces(codewords: Vec<PySubspace>, declared_distance: Option<u32>) -> PyResult<Self> {
        if codewords.is_empty() {
            return Err(PyValueError::new_err("codewords must be nonempty"));
        }
        let ctx = codewords[0].inner.ctx();
        let n = codewords[0].inner.ambient_dim();
        let k = codewords[0].inner.dim();
        let inner = codes::SubspaceCode::new(
            ctx,
            n,
            k,
            codewords.into_iter().map(|c| c.inner).collect(),
            declared_distance,
        )
        .map_err(to_py_err)?;
        Ok(PySubspaceCode { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (path, strict = false))]
    fn load(path: PathBuf, strict: bool) -> PyResult<Self> {
        let inner = SpreadFile::read(&path)
            .and_then(|f| f.to_code(strict))
            .map_err(to_py_err)?;
        Ok(PySubspaceCode { inner })
    }

    #[pyo3(signature = (path, method = None))]
    fn save(&self, path: PathBuf, method: Option<&str>) -> PyResult<()> {
        SpreadFile::from_code(&self.inner, method)
            .write(&path)
            .map_err(to_py_err)
    }

    #[getter]
    fn field(&self) -> Field {
        Field { inner: self.inner.ctx() }
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn declared_min_subspace_distance(&self) -> Option<u32> {
        self.inner.declared_min_subspace_distance()
    }

    fn codewords(&self) -> Vec<PySubspace> {
        self.inner
            .codewords()
            .iter()
            .map(|w| PySubspace { inner: w.clone() })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Pairwise spread check: dict with valid, codewords,
    /// min_subspace_distance, witness_pair, and hole_count.
    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = verify::verify_spread(&self.inner);
        let out = PyDict::new(py);
        out.set_item("valid", report.valid)?;
        out.set_item("codewords", report.codeword_count)?;
        out.set_item("min_subspace_distance", report.min_subspace_distance)?;
        out.set_item("witness_pair", report.witness_pair)?;
        out.set_item("hole_count", report.hole_count)?;
        Ok(out)
    }

    /// Coordinates of the uncovered points.
    fn holes(&self) -> PyResult<Vec<Vec<u64>>> {
        let holes = verify::compute_holes(&self.inner).map_err(to_py_err)?;
        Ok(holes.into_iter().map(|p| p.coords().to_vec()).collect())
    }

    /// Dimension -> multiplicity map of the induced vector space partition.
    #[pyo3(signature = (count_holes_as_points = true))]
    fn partition_type(&self, count_holes_as_points: bool) -> PyResult<Vec<(u32, BigUint)>> {
        let t = verify::partition_type(&self.inner, count_holes_as_points).map_err(to_py_err)?;
        Ok(t.entries())
    }

    /// Hyperplane spectrum: per-hyperplane (contained, cut, holes_on)
    /// records plus a section-type histogram keyed by the type string.
    fn hyperplane_spectrum<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let spectrum = verify::hyperplane_spectrum(&self.inner).map_err(to_py_err)?;
        let out = PyDict::new(py);
        let records: Vec<(usize, usize, usize)> = spectrum
            .records
            .iter()
            .map(|r| (r.contained, r.cut, r.holes_on))
            .collect();
        out.set_item("records", records)?;
        let by_type = PyDict::new(py);
        for (section, count) in &spectrum.by_type {
            by_type.set_item(section.to_string(), count)?;
        }
        out.set_item("by_type", by_type)?;
        let by_contained = PyDict::new(py);
        for (contained, count) in spectrum.by_contained() {
            by_contained.set_item(contained, count)?;
        }
        out.set_item("by_contained", by_contained)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "SubspaceCode(q={}, n={}, k={}, size={})",
            self.inner.ctx().q(),
            self.inner.ambient_dim(),
            self.inner.dim(),
            self.inner.len()
        )
    }
}

/// A rank-metric code of k x m matrices.
#[pyclass(name = "MatrixCode", frozen, from_py_object)]
#[derive(Clone)]
struct PyMatrixCode {
    inner: codes::MatrixCode,
}

#[pymethods]
impl PyMatrixCode {
    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn declared_min_rank_distance(&self) -> Option<u32> {
        self.inner.declared_min_rank_distance()
    }

    fn codewords(&self) -> Vec<Vec<Vec<u64>>> {
        self.inner.codewords().iter().map(|m| m.row_vecs()).collect()
    }

    /// Exhaustive pairwise minimum rank distance (None for < 2 codewords).
    fn min_rank_distance(&self) -> Option<u32> {
        codes::min_rank_distance(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "MatrixCode({}x{}, size={})",
            self.inner.rows(),
            self.inner.cols(),
            self.inner.len()
        )
    }
}

/// Number of k-dimensional subspaces of F_q^n.
#[pyfunction]
fn gaussian_binomial(n: u32, k: i64, q: u64) -> BigUint {
    subspace::gaussian_binomial(n, k, q)
}

/// Size bound for rank-metric codes of m x n matrices at distance d.
#[pyfunction]
fn mrd_size(q: u64, m: u32, n: u32, d: u32) -> BigUint {
    codes::mrd_size(q, m, n, d)
}

#[pyfunction]
fn mrd_full_rank_code(q: u64, k: u32, m: u32) -> PyResult<PyMatrixCode> {
    Ok(PyMatrixCode { inner: codes::mrd_full_rank_code(q, k, m).map_err(to_py_err)? })
}

#[pyfunction]
fn lifted_mrd(q: u64, n: u32, k: u32, d: u32) -> PyResult<PySubspaceCode> {
    Ok(PySubspaceCode { inner: codes::lifted_mrd(q, n, k, d).map_err(to_py_err)? })
}

#[pyfunction]
fn multi_component(q: u64, n: u32, k: u32) -> PyResult<PySubspaceCode> {
    Ok(PySubspaceCode { inner: codes::multi_component(q, n, k).map_err(to_py_err)? })
}

/// Exact floor(theta) for the deficiency bound.
#[pyfunction]
fn theta_floor(q: u64, k: u32, r: u32) -> PyResult<BigUint> {
    bounds::theta_floor(q, k, r).map_err(to_py_err)
}

/// Known exact value of A_q(n, 2k; k) with its rule name, if solved.
#[pyfunction]
fn exact_value(q: u64, n: u32, k: u32) -> PyResult<Option<(BigUint, String)>> {
    Ok(bounds::exact_value(q, n, k)
        .map_err(to_py_err)?
        .map(|(v, rule)| (v, rule.name().to_string())))
}

#[pyfunction]
fn lower_bound(q: u64, n: u32, k: u32) -> PyResult<(BigUint, String)> {
    let (v, rule) = bounds::lower_bound(q, n, k).map_err(to_py_err)?;
    Ok((v, rule.name().to_string()))
}

#[pyfunction]
fn upper_bound(q: u64, n: u32, k: u32) -> PyResult<(BigUint, String)> {
    let (v, rule) = bounds::upper_bound(q, n, k).map_err(to_py_err)?;
    Ok((v, rule.name().to_string()))
}

/// All applicable upper-bound rules with their values.
#[pyfunction]
fn upper_bound_rules(q: u64, n: u32, k: u32) -> PyResult<Vec<(String, BigUint)>> {
    Ok(bounds::upper_bound_rules(q, n, k)
        .map_err(to_py_err)?
        .into_iter()
        .map(|(rule, v)| (rule.name().to_string(), v))
        .collect())
}

/// Full bounds record as a dict.
#[pyfunction]
fn bounds_record<'py>(py: Python<'py>, q: u64, n: u32, k: u32) -> PyResult<Bound<'py, PyDict>> {
    let r = bounds::bounds_record(q, n, k).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("q", r.q)?;
    out.set_item("n", r.n)?;
    out.set_item("k", r.k)?;
    out.set_item("lower", r.lower.clone())?;
    out.set_item("upper", r.upper.clone())?;
    out.set_item("exact", r.exact.clone())?;
    out.set_item("lower_rule", r.lower_rule.name())?;
    out.set_item("upper_rule", r.upper_rule.name())?;
    out.set_item("exact_rule", r.exact_rule.map(|rule| rule.name()))?;
    out.set_item("gap", r.gap())?;
    out.set_item("r", r.r)?;
    out.set_item("t", r.t)?;
    out.set_item("s_lower", r.s_lower.clone())?;
    out.set_item("s_construction", r.s_construction.clone())?;
    Ok(out)
}

/// Deficiency s of a code of the given size.
#[pyfunction]
fn deficiency(q: u64, n: u32, k: u32, size: BigUint) -> PyResult<BigInt> {
    bounds::deficiency(q, n, k, &size).map_err(to_py_err)
}

/// (admissible, clause) for a tail of length n1.
#[pyfunction]
fn tail_admissible(q: u64, d1: u32, d2: u32, n1: BigUint) -> PyResult<(bool, String)> {
    let v = analysis::tail_admissible(q, d1, d2, &n1).map_err(to_py_err)?;
    Ok((v.admissible, v.clause.to_string()))
}

/// Certificate dict for the forbidden partition type of the given variant
/// ("q2" or "odd-q").
#[pyfunction]
fn forbidden_partition_check<'py>(
    py: Python<'py>,
    q: u64,
    k: u32,
    t: u32,
    variant: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let variant = match variant {
        "q2" => analysis::ForbiddenVariant::Q2Lemma,
        "odd-q" => analysis::ForbiddenVariant::OddQLemma,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown variant '{other}', expected 'q2' or 'odd-q'"
            )))
        }
    };
    let cert = analysis::forbidden_partition_check(q, k, t, variant).map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("ambient_dim", cert.ambient_dim)?;
    out.set_item("partition_type", cert.partition.to_string())?;
    out.set_item("residue_modulus", cert.residue_modulus.clone())?;
    out.set_item("residue", cert.residue.clone())?;
    out.set_item("admissible_hole_counts", cert.admissible_hole_counts.clone())?;
    out.set_item("excluded_by_tail", cert.excluded_by_tail.clone())?;
    out.set_item("min_holes_per_hyperplane", cert.min_holes_per_hyperplane.clone())?;
    out.set_item(
        "implied_total_holes",
        cert.implied_total_holes
            .as_ref()
            .map(|r| (r.numer().clone(), r.denom().clone())),
    )?;
    out.set_item("available_holes", cert.available_holes.clone())?;
    out.set_item("certified", cert.certified)?;
    Ok(out)
}

/// Solve the standard equations; returns a dict with the general solution,
/// the free-variable range, and all admissible spectra.
#[pyfunction]
#[pyo3(signature = (n, k, q, code_size, profiles, span_dim_lower_bound = None))]
fn solve_standard_equations<'py>(
    py: Python<'py>,
    n: u32,
    k: u32,
    q: u64,
    code_size: u64,
    profiles: Vec<(u64, u64)>,
    span_dim_lower_bound: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let sol = analysis::solve_standard_equations(n, k, q, code_size, &profiles, span_dim_lower_bound)
        .map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("profiles", sol.profiles.clone())?;
    out.set_item("equation_rhs", sol.equation_rhs.to_vec())?;
    out.set_item("free_vars", sol.free_vars.clone())?;
    // Each affine form as ((numer, denom) constant, [(numer, denom) coefficients]).
    type Fraction = (BigInt, BigInt);
    let as_fraction = |r: &num_rational::BigRational| (r.numer().clone(), r.denom().clone());
    let general: Vec<(Fraction, Vec<Fraction>)> = sol
        .general
        .iter()
        .map(|form| {
            (
                as_fraction(&form.constant),
                form.free_coeffs.iter().map(as_fraction).collect(),
            )
        })
        .collect();
    out.set_item("general", general)?;
    out.set_item("free_range", sol.free_range.clone())?;
    out.set_item("solutions", sol.solutions.clone())?;
    out.set_item("span_profile", sol.span_profile)?;
    out.set_item("span_allowed", sol.span_allowed.clone())?;
    out.set_item("span_filtered", sol.span_filtered.clone())?;
    out.set_item("span_rule_validated", sol.span_rule_validated)?;
    Ok(out)
}

/// All canonical k-subspaces of F_q^n (tiny instances).
#[pyfunction]
fn enumerate_k_subspaces(q: u64, n: u32, k: u32) -> PyResult<Vec<PySubspace>> {
    Ok(search::enumerate_k_subspaces(q, n, k)
        .map_err(to_py_err)?
        .into_iter()
        .map(|inner| PySubspace { inner })
        .collect())
}

/// Brute-force maximum partial spread search.
#[pyfunction]
#[pyo3(signature = (q, n, k, time_limit = None, node_budget = None, symmetry = true))]
fn max_partial_spread<'py>(
    py: Python<'py>,
    q: u64,
    n: u32,
    k: u32,
    time_limit: Option<f64>,
    node_budget: Option<u64>,
    symmetry: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let limits = search::SearchLimits {
        time: time_limit.map(std::time::Duration::from_secs_f64),
        node_budget,
        symmetry,
    };
    let result = py
        .detach(|| search::max_partial_spread(q, n, k, &limits))
        .map_err(to_py_err)?;
    let out = PyDict::new(py);
    out.set_item("best_size", result.best_size)?;
    out.set_item("proved_optimal", result.proved_optimal)?;
    out.set_item("nodes_explored", result.nodes_explored)?;
    out.set_item("elapsed_seconds", result.elapsed.as_secs_f64())?;
    out.set_item("witness", PySubspaceCode { inner: result.witness })?;
    Ok(out)
}

#[pymodule]
fn spreadkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<PySubspace>()?;
    m.add_class::<PySubspaceCode>()?;
    m.add_class::<PyMatrixCode>()?;
    m.add_function(wrap_pyfunction!(gaussian_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(mrd_size, m)?)?;
    m.add_function(wrap_pyfunction!(mrd_full_rank_code, m)?)?;
    m.add_function(wrap_pyfunction!(lifted_mrd, m)?)?;
    m.add_function(wrap_pyfunction!(multi_component, m)?)?;
    m.add_function(wrap_pyfunction!(theta_floor, m)?)?;
    m.add_function(wrap_pyfunction!(exact_value, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_rules, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_record, m)?)?;
    m.add_function(wrap_pyfunction!(deficiency, m)?)?;
    m.add_function(wrap_pyfunction!(tail_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(forbidden_partition_check, m)?)?;
    m.add_function(wrap_pyfunction!(solve_standard_equations, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_k_subspaces, m)?)?;
    m.add_function(wrap_pyfunction!(max_partial_spread, m)?)?;
    Ok(())
}
