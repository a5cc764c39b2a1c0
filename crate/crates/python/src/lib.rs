//! Python bindings: finite fields, matrices, rank-metric codes, code
//! maps, support paths, and the extension oracles, exposed in-process.
//!
//! Structured results that have a JSON schema on the CLI side (fixture
//! reports) come back as JSON strings; everything else maps to native
//! Python types.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rankext::extend::{self, OracleOptions, ScalarAssignment};
use rankext::isometry::SearchLimits;
use rankext::paths::{self, Position};
use rankext::{fixtures, Error};

fn to_py_err(err: Error) -> PyErr {
    if err.is_resource_cap() {
        PyRuntimeError::new_err(err.to_string())
    } else {
        PyValueError::new_err(err.to_string())
    }
}

fn positions_from(pairs: &[(u32, u32)]) -> Vec<Position> {
    pairs.iter().map(|&(i, j)| Position::new(i, j)).collect()
}

fn positions_to(positions: &[Position]) -> Vec<(u32, u32)> {
    positions.iter().map(|p| (p.row, p.col)).collect()
}

/// GF(p^k) with elements encoded as integers 0..q-1.
#[pyclass(name = "Field", frozen)]
struct PyField {
    inner: rankext::Field,
}

#[pymethods]
impl PyField {
    /// Construct GF(p^k); the modulus (ascending coefficients) may be
    /// omitted when a built-in irreducible polynomial exists.
    #[new]
    #[pyo3(signature = (p, k = 1, modulus = None))]
    fn new(p: u64, k: u32, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let inner = rankext::Field::new(p, k, modulus.as_deref()).map_err(to_py_err)?;
        Ok(PyField { inner })
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn elements(&self) -> Vec<u32> {
        self.inner.elements().collect()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        self.inner.arith("add", a, Some(b)).map_err(to_py_err)
    }

    fn sub(&self, a: u32, b: u32) -> PyResult<u32> {
        self.inner.arith("sub", a, Some(b)).map_err(to_py_err)
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        self.inner.arith("mul", a, Some(b)).map_err(to_py_err)
    }

    fn div(&self, a: u32, b: u32) -> PyResult<u32> {
        self.inner.arith("div", a, Some(b)).map_err(to_py_err)
    }

    fn neg(&self, a: u32) -> PyResult<u32> {
        self.inner.arith("neg", a, None).map_err(to_py_err)
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        self.inner.arith("inv", a, None).map_err(to_py_err)
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        if !self.inner.contains(a) {
            return Err(PyValueError::new_err(format!(
                "{a} is not an element of GF({})",
                self.inner.order()
            )));
        }
        Ok(self.inner.pow(a, e))
    }

    fn __repr__(&self) -> String {
        format!("Field(GF({}))", self.inner.order())
    }
}

/// A dense matrix over a finite field.
#[pyclass(name = "Matrix", frozen)]
struct PyMatrix {
    inner: rankext::Matrix,
}

impl PyMatrix {
    fn wrap(inner: rankext::Matrix) -> PyMatrix {
        PyMatrix { inner }
    }
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(field: &PyField, entries: Vec<Vec<u32>>) -> PyResult<Self> {
        let inner = rankext::Matrix::from_rows(field.inner.clone(), entries).map_err(to_py_err)?;
        Ok(PyMatrix { inner })
    }

    #[getter]
    fn nrows(&self) -> usize {
        self.inner.nrows()
    }

    #[getter]
    fn ncols(&self) -> usize {
        self.inner.ncols()
    }

    fn entries(&self) -> Vec<Vec<u32>> {
        (0..self.inner.nrows())
            .map(|i| self.inner.row(i).to_vec())
            .collect()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn transpose(&self) -> PyMatrix {
        PyMatrix::wrap(self.inner.transpose())
    }

    fn add(&self, other: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix::wrap(
            self.inner.add(&other.inner).map_err(to_py_err)?,
        ))
    }

    fn sub(&self, other: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix::wrap(
            self.inner.sub(&other.inner).map_err(to_py_err)?,
        ))
    }

    fn scale(&self, c: u32) -> PyMatrix {
        PyMatrix::wrap(self.inner.scale(c))
    }

    fn matmul(&self, other: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix::wrap(
            self.inner.matmul(&other.inner).map_err(to_py_err)?,
        ))
    }

    fn rank_distance(&self, other: &PyMatrix) -> PyResult<usize> {
        self.inner.rank_distance(&other.inner).map_err(to_py_err)
    }

    /// (row-space dimension, column-space dimension).
    fn line_space_dims(&self) -> (usize, usize) {
        (self.inner.row_space().dim(), self.inner.col_space().dim())
    }

    fn is_invertible(&self) -> bool {
        self.inner.is_invertible()
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Matrix({}x{} over GF({}))",
            self.inner.nrows(),
            self.inner.ncols(),
            self.inner.field().order()
        )
    }
}

/// An F_q-linear rank-metric code given by generators.
#[pyclass(name = "Code", frozen)]
struct PyCode {
    inner: rankext::RankCode,
}

#[pymethods]
impl PyCode {
    #[new]
    fn new(
        field: &PyField,
        m: usize,
        n: usize,
        generators: Vec<PyRef<PyMatrix>>,
    ) -> PyResult<Self> {
        let gens = generators.iter().map(|g| g.inner.clone()).collect();
        let inner = rankext::RankCode::new(field.inner.clone(), m, n, gens).map_err(to_py_err)?;
        Ok(PyCode { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn size(&self) -> u128 {
        self.inner.size()
    }

    fn min_distance(&self) -> PyResult<usize> {
        self.inner.min_distance().map_err(to_py_err)
    }

    fn contains(&self, word: &PyMatrix) -> bool {
        self.inner.contains(&word.inner)
    }

    fn codewords(&self) -> PyResult<Vec<PyMatrix>> {
        Ok(self
            .inner
            .codewords()
            .map_err(to_py_err)?
            .map(PyMatrix::wrap)
            .collect())
    }

    /// (row-space dimension, column-space dimension) of the whole code.
    fn line_space_dims(&self) -> (usize, usize) {
        let (rows, cols) = self.inner.line_spaces();
        (rows.dim(), cols.dim())
    }

    fn rank_one_basis(&self) -> PyResult<Option<Vec<PyMatrix>>> {
        Ok(self
            .inner
            .rank_one_basis()
            .map_err(to_py_err)?
            .map(|basis| basis.into_iter().map(PyMatrix::wrap).collect()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(dim {} in GF({})^({}x{}))",
            self.inner.dim(),
            self.inner.field().order(),
            self.inner.nrows(),
            self.inner.ncols()
        )
    }
}

/// An ambient isometry M -> A M B (or A M^t B).
#[pyclass(name = "Witness", frozen)]
struct PyWitness {
    inner: extend::ExtensionWitness,
}

#[pymethods]
impl PyWitness {
    #[getter]
    fn a(&self) -> PyMatrix {
        PyMatrix::wrap(self.inner.a.clone())
    }

    #[getter]
    fn b(&self) -> PyMatrix {
        PyMatrix::wrap(self.inner.b.clone())
    }

    #[getter]
    fn transposed(&self) -> bool {
        self.inner.transposed
    }

    fn apply(&self, word: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix::wrap(
            self.inner.apply(&word.inner).map_err(to_py_err)?,
        ))
    }

    fn __repr__(&self) -> String {
        format!("Witness(transposed={})", self.inner.transposed)
    }
}

/// A linear map between codes given by generator images.
#[pyclass(name = "CodeMap", frozen)]
struct PyCodeMap {
    inner: rankext::CodeMap,
}

#[pymethods]
impl PyCodeMap {
    #[new]
    fn new(domain: &PyCode, images: Vec<PyRef<PyMatrix>>) -> PyResult<Self> {
        let imgs = images.iter().map(|g| g.inner.clone()).collect();
        let inner = rankext::CodeMap::new(domain.inner.clone(), imgs).map_err(to_py_err)?;
        Ok(PyCodeMap { inner })
    }

    fn apply(&self, word: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix::wrap(
            self.inner.apply(&word.inner).map_err(to_py_err)?,
        ))
    }

    fn is_isometry(&self) -> PyResult<bool> {
        self.inner.is_isometry().map_err(to_py_err)
    }

    /// Exhaustive Property-1 search; (A, B) or None.
    fn property_p_witness(&self) -> PyResult<Option<(PyMatrix, PyMatrix)>> {
        let found = self
            .inner
            .property_p_witness(&SearchLimits::default())
            .map_err(to_py_err)?;
        Ok(found.map(|w| (PyMatrix::wrap(w.a), PyMatrix::wrap(w.b))))
    }

    /// A concrete Property-1 refutation as a JSON string, or None.
    fn refute_property_p(&self) -> PyResult<Option<String>> {
        let found = self.inner.refute_property_p().map_err(to_py_err)?;
        Ok(found.map(|r| {
            serde_json::to_string(&rankext::json::RefutationJson::from_refutation(&r))
                .expect("refutation serializes")
        }))
    }

    /// Brute-force extendability oracle; the minimal witness or None.
    #[pyo3(signature = (allow_transpose = false))]
    fn oracle_extension(&self, allow_transpose: bool) -> PyResult<Option<PyWitness>> {
        let found = extend::oracle_extension_with(
            &self.inner,
            &OracleOptions {
                allow_transpose,
                use_pruning: true,
                limits: SearchLimits::default(),
            },
        )
        .map_err(to_py_err)?;
        Ok(found.map(|inner| PyWitness { inner }))
    }

    /// The GF(2) rank-one extension from a Property-1 pair.
    fn extend_rank_one_f2(&self, a: &PyMatrix, b: &PyMatrix) -> PyResult<PyWitness> {
        let pair = rankext::PropertyWitness {
            a: a.inner.clone(),
            b: b.inner.clone(),
        };
        let inner = extend::extend_rank_one_f2(&self.inner, &pair).map_err(to_py_err)?;
        Ok(PyWitness { inner })
    }

    fn __repr__(&self) -> String {
        format!("CodeMap(dim {})", self.inner.domain().dim())
    }
}

/// Positions of the nonzero entries, as 1-based (row, col) pairs.
#[pyfunction]
fn support(matrix: &PyMatrix) -> Vec<(u32, u32)> {
    positions_to(&paths::support(&matrix.inner).to_vec())
}

/// Classify a position sequence: "invalid", "open-path", "simple-open",
/// "closed", or "closed-simple".
#[pyfunction]
fn validate_path(matrix: &PyMatrix, positions: Vec<(u32, u32)>) -> String {
    paths::validate_path(&matrix.inner, &positions_from(&positions))
        .class
        .as_str()
        .to_string()
}

/// A closed simple path in canonical form, or None if irreducible.
#[pyfunction]
fn find_closed_simple_path(matrix: &PyMatrix) -> Option<Vec<(u32, u32)>> {
    paths::find_closed_simple_path(&matrix.inner).map(|p| positions_to(p.positions()))
}

#[pyfunction]
fn is_irreducible(matrix: &PyMatrix) -> bool {
    paths::is_irreducible(&matrix.inner)
}

/// The greedy reduction chain: (length, deleted positions in order).
#[pyfunction]
fn reduction_chain(matrix: &PyMatrix) -> (usize, Vec<(u32, u32)>) {
    let chain = paths::reduction_chain(&matrix.inner);
    (chain.len(), positions_to(chain.deleted()))
}

/// Exhaustive chain census: {length: chain count}.
#[pyfunction]
fn chain_lengths(matrix: &PyMatrix) -> PyResult<BTreeMap<usize, u128>> {
    let census = paths::enumerate_all_chains(&matrix.inner).map_err(to_py_err)?;
    Ok(census.length_counts)
}

/// The unique rank-dropping value for a closed simple path with the
/// given nonzero coefficients on all but its last position. The
/// coefficients stay aligned with the sequence as passed.
#[pyfunction]
fn rank_drop_value(field: &PyField, path: Vec<(u32, u32)>, coeffs: Vec<u32>) -> PyResult<u32> {
    let path = rankext::Path::new(positions_from(&path));
    extend::rank_drop_value(&field.inner, &path, &coeffs).map_err(to_py_err)
}

/// Extend scalars on elementary positions to an ambient witness.
/// Raises ValueError when the assignment is not an isometry.
#[pyfunction]
fn extend_elementary(
    field: &PyField,
    m: usize,
    n: usize,
    positions: Vec<(u32, u32)>,
    scalars: Vec<u32>,
) -> PyResult<PyWitness> {
    let assignment = ScalarAssignment::new(positions_from(&positions), scalars);
    let inner = extend::extend_elementary(&field.inner, &assignment, m, n).map_err(to_py_err)?;
    Ok(PyWitness { inner })
}

/// Companion matrix of the first primitive degree-n polynomial over a
/// prime field; its multiplicative order is q^n - 1.
#[pyfunction]
fn primitive_companion(field: &PyField, n: usize) -> PyResult<PyMatrix> {
    Ok(PyMatrix::wrap(
        fixtures::primitive_companion(&field.inner, n).map_err(to_py_err)?,
    ))
}

/// Names of the catalogued examples.
#[pyfunction]
fn list_examples() -> Vec<String> {
    fixtures::list_examples()
        .iter()
        .map(|info| info.name.to_string())
        .collect()
}

/// Run one catalogued example; returns the report as a JSON string with
/// fields name, params, expected, computed, pass.
#[pyfunction]
#[pyo3(signature = (name, params = None))]
fn run_example(name: &str, params: Option<BTreeMap<String, String>>) -> PyResult<String> {
    let report = fixtures::run_example(name, &params.unwrap_or_default()).map_err(to_py_err)?;
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

#[pymodule]
fn rankext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyField>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyCodeMap>()?;
    m.add_class::<PyWitness>()?;
    m.add_function(wrap_pyfunction!(support, m)?)?;
    m.add_function(wrap_pyfunction!(validate_path, m)?)?;
    m.add_function(wrap_pyfunction!(find_closed_simple_path, m)?)?;
    m.add_function(wrap_pyfunction!(is_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_chain, m)?)?;
    m.add_function(wrap_pyfunction!(chain_lengths, m)?)?;
    m.add_function(wrap_pyfunction!(rank_drop_value, m)?)?;
    m.add_function(wrap_pyfunction!(extend_elementary, m)?)?;
    m.add_function(wrap_pyfunction!(primitive_companion, m)?)?;
    m.add_function(wrap_pyfunction!(list_examples, m)?)?;
    m.add_function(wrap_pyfunction!(run_example, m)?)?;
    Ok(())
}
