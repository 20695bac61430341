//! Python bindings. The module is exported as `cozero`.

use cozero::families::check_tables;
use cozero::spectrum::{compare_multisets, extremes};
use cozero::{
    closed_form_spectrum, family_tables, CozeroGraph, IdealLattice, PolyElement, RingContext,
    SpectrumMultiset, DEFAULT_MAX_N, DEFAULT_TOL,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: cozero::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type Pair = (u64, u64);

/// Laplacian spectrum as `(value, multiplicity)` pairs in ascending order.
#[pyclass(name = "Spectrum", module = "cozero", frozen)]
struct PySpectrum {
    inner: SpectrumMultiset,
}

#[pymethods]
impl PySpectrum {
    #[getter]
    fn entries(&self) -> Vec<(f64, usize)> {
        self.inner
            .entries()
            .iter()
            .map(|e| (e.value, e.multiplicity))
            .collect()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn tolerance(&self) -> f64 {
        self.inner.tolerance()
    }

    /// Every eigenvalue repeated by multiplicity.
    fn expanded(&self) -> Vec<f64> {
        self.inner.expanded()
    }

    /// Entries with values rounded to integers; `None` unless all are integral.
    fn rounded(&self) -> Option<Vec<(i64, usize)>> {
        self.inner
            .is_integral()
            .then(|| self.inner.rounded_entries())
    }

    fn multiplicity_of(&self, value: f64) -> usize {
        self.inner.multiplicity_of(value)
    }

    /// `(spectral radius, algebraic connectivity)`.
    fn extremes(&self) -> PyResult<(f64, f64)> {
        extremes(&self.inner).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.dimension()
    }

    fn __repr__(&self) -> String {
        format!("Spectrum({})", self.inner)
    }
}

/// Quotient of the zero-divisor set by unit multiplication.
#[pyclass(name = "ReducedGraph", module = "cozero", frozen)]
struct PyReducedGraph {
    #[pyo3(get)]
    labels: Vec<String>,
    #[pyo3(get)]
    generators: Vec<Pair>,
    #[pyo3(get)]
    weights: Vec<usize>,
    #[pyo3(get)]
    edges: Vec<(usize, usize)>,
    #[pyo3(get)]
    weighted_degrees: Vec<usize>,
}

#[pymethods]
impl PyReducedGraph {
    fn __len__(&self) -> usize {
        self.labels.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "ReducedGraph(vertices={}, edges={}, total_weight={})",
            self.labels.len(),
            self.edges.len(),
            self.weights.iter().sum::<usize>()
        )
    }
}

/// `Z_n[x]/(x^2)`; elements are `(a, b)` pairs standing for `ax + b`.
#[pyclass(name = "Ring", module = "cozero", frozen)]
struct PyRing {
    ctx: RingContext,
}

impl PyRing {
    fn elem(&self, (a, b): Pair) -> PyResult<PolyElement> {
        self.ctx.element(a, b).map_err(py_err)
    }

    fn lattice(&self) -> PyResult<IdealLattice> {
        IdealLattice::enumerate(&self.ctx).map_err(py_err)
    }
}

fn pair(e: PolyElement) -> Pair {
    (e.a, e.b)
}

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (n, max_n = DEFAULT_MAX_N))]
    fn new(n: u64, max_n: u64) -> PyResult<Self> {
        Ok(Self {
            ctx: RingContext::with_cap(n, max_n).map_err(py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> u64 {
        self.ctx.n()
    }

    #[getter]
    fn factorization(&self) -> Vec<(u64, u32)> {
        self.ctx.factorization().to_vec()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.ctx.vertex_count()
    }

    #[getter]
    fn family(&self) -> Option<String> {
        cozero::Family::detect(&self.ctx).map(|f| f.to_string())
    }

    fn mul(&self, x: Pair, y: Pair) -> PyResult<Pair> {
        Ok(pair(self.ctx.mul(self.elem(x)?, self.elem(y)?)))
    }

    fn add(&self, x: Pair, y: Pair) -> PyResult<Pair> {
        Ok(pair(self.ctx.add(self.elem(x)?, self.elem(y)?)))
    }

    fn is_unit(&self, x: Pair) -> PyResult<bool> {
        Ok(self.ctx.is_unit(self.elem(x)?))
    }

    /// Whether `y` lies in the principal ideal generated by `x`.
    fn in_ideal(&self, y: Pair, x: Pair) -> PyResult<bool> {
        Ok(self.ctx.in_ideal(self.elem(y)?, self.elem(x)?))
    }

    /// Components of `x` in the local factors, in factorization order.
    fn crt_split(&self, x: Pair) -> PyResult<Vec<Pair>> {
        Ok(self
            .ctx
            .crt_split(self.elem(x)?)
            .into_iter()
            .map(pair)
            .collect())
    }

    fn principal_ideal(&self, x: Pair) -> PyResult<Vec<Pair>> {
        self.ctx.ensure_enumerable().map_err(py_err)?;
        Ok(self
            .ctx
            .principal_ideal(self.elem(x)?)
            .iter()
            .map(pair)
            .collect())
    }

    fn reduced_graph(&self) -> PyResult<PyReducedGraph> {
        let g = self.lattice()?.reduced_graph();
        Ok(PyReducedGraph {
            weighted_degrees: (0..g.vertex_count())
                .map(|i| g.weighted_degree(i))
                .collect(),
            edges: g.edges(),
            labels: g.labels,
            generators: g.generators.into_iter().map(pair).collect(),
            weights: g.weights,
        })
    }

    /// Edge list of the full cozero-divisor graph over `(a, b)` vertices.
    fn graph_edges(&self) -> PyResult<Vec<(Pair, Pair)>> {
        let g = CozeroGraph::build(&self.ctx).map_err(py_err)?;
        let v = g.vertices();
        Ok(g.edges().map(|(i, j)| (pair(v[i]), pair(v[j]))).collect())
    }

    /// `(component count, isolated vertices)`.
    fn connectivity(&self) -> PyResult<(usize, Vec<Pair>)> {
        let r = CozeroGraph::build(&self.ctx)
            .map_err(py_err)?
            .connectivity_report();
        Ok((
            r.component_count,
            r.isolated_vertices.into_iter().map(pair).collect(),
        ))
    }

    #[pyo3(signature = (tol = DEFAULT_TOL))]
    fn structural_spectrum(&self, tol: f64) -> PyResult<PySpectrum> {
        cozero::spectrum::structural_spectrum(&self.ctx, tol)
            .map(|inner| PySpectrum { inner })
            .map_err(py_err)
    }

    /// Dense eigendecomposition of the full Laplacian.
    #[pyo3(signature = (tol = DEFAULT_TOL))]
    fn oracle_spectrum(&self, tol: f64) -> PyResult<PySpectrum> {
        CozeroGraph::build(&self.ctx)
            .and_then(|g| g.oracle_spectrum(tol))
            .map(|inner| PySpectrum { inner })
            .map_err(py_err)
    }

    /// Published closed form for the recognised factorization shapes.
    #[pyo3(signature = (tol = DEFAULT_TOL))]
    fn closed_form_spectrum(&self, tol: f64) -> PyResult<PySpectrum> {
        closed_form_spectrum(&self.ctx, tol)
            .map(|inner| PySpectrum { inner })
            .map_err(py_err)
    }

    /// Published `(label, cardinality, degree)` rows.
    fn family_tables(&self) -> PyResult<Vec<(String, u64, Option<u64>)>> {
        Ok(family_tables(&self.ctx)
            .map_err(py_err)?
            .into_iter()
            .map(|r| (r.label, r.cardinality, r.degree))
            .collect())
    }

    /// Published rows against computed ones:
    /// `(label, expected card, actual card, expected degree, actual degree)`.
    #[allow(clippy::type_complexity)]
    fn check_tables(&self) -> PyResult<Vec<(String, u64, Option<u64>, Option<u64>, Option<u64>)>> {
        Ok(check_tables(&self.lattice()?)
            .map_err(py_err)?
            .into_iter()
            .map(|c| {
                (
                    c.label,
                    c.expected_cardinality,
                    c.actual_cardinality,
                    c.expected_degree,
                    c.actual_degree,
                )
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Ring(n={})", self.ctx.n())
    }
}

/// `(matches, worst deviation)` between two spectra of equal dimension.
#[pyfunction]
#[pyo3(signature = (left, right, tol = DEFAULT_TOL))]
fn compare(left: &PySpectrum, right: &PySpectrum, tol: f64) -> PyResult<(bool, f64)> {
    compare_multisets(&left.inner, &right.inner, tol)
        .map(|r| (r.matches, r.worst_deviation))
        .map_err(py_err)
}

/// Laplacian spectrum of an arbitrary undirected graph given by its edges.
#[pyfunction]
#[pyo3(signature = (order, edges, tol = DEFAULT_TOL))]
fn laplacian_spectrum(order: usize, edges: Vec<(usize, usize)>, tol: f64) -> PyResult<PySpectrum> {
    if let Some(&(i, j)) = edges
        .iter()
        .find(|&&(i, j)| i >= order || j >= order || i == j)
    {
        return Err(PyValueError::new_err(format!(
            "invalid edge ({i}, {j}) for order {order}"
        )));
    }
    let mut l = cozero::DenseMatrix::zeros(order, order);
    for (i, j) in edges {
        l[(i, j)] -= 1.0;
        l[(j, i)] -= 1.0;
        l[(i, i)] += 1.0;
        l[(j, j)] += 1.0;
    }
    cozero::spectrum::matrix_spectrum(&l, tol)
        .map(|inner| PySpectrum { inner })
        .map_err(py_err)
}

#[pymodule]
#[pyo3(name = "cozero")]
pub fn cozero_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PySpectrum>()?;
    m.add_class::<PyReducedGraph>()?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(laplacian_spectrum, m)?)?;
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    m.add("DEFAULT_MAX_N", DEFAULT_MAX_N)?;
    Ok(())
}
