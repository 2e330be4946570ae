//! Python bindings: braid words, the invariant engines, catalog lookup and
//! link comparison. Polynomial values cross the boundary as canonical text
//! or as the JSON term-list form.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use thetalink::braid::{BraidMove, BraidWord, ComposeMode};
use thetalink::catalog::Catalog;
use thetalink::esystem::{make_solution, SolutionSpec};
use thetalink::invariants::{self, Engine};
use thetalink::scalar::{rat_frac, ScalarValue};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_engine(engine: &str) -> PyResult<Engine> {
    Engine::parse(engine)
        .ok_or_else(|| value_err(format!("unknown engine {:?} (trace | skein | closed | all | auto)", engine)))
}

/// A braid word on `n` strands; the closure presents an oriented link.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Braid {
    inner: BraidWord,
}

#[pymethods]
impl Braid {
    #[new]
    #[pyo3(signature = (text, strands=None))]
    fn new(text: &str, strands: Option<usize>) -> PyResult<Self> {
        let inner = BraidWord::parse_with_strands(text, strands).map_err(value_err)?;
        Ok(Braid { inner })
    }

    #[getter]
    fn strands(&self) -> usize {
        self.inner.strands()
    }

    #[getter]
    fn letters(&self) -> Vec<i32> {
        self.inner.letters().to_vec()
    }

    fn exponent_sum(&self) -> i64 {
        self.inner.exponent_sum()
    }

    fn component_count(&self) -> usize {
        self.inner.components().count
    }

    /// Pairwise linking numbers of the closure components.
    fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let cs = self.inner.components();
        (0..cs.count)
            .map(|i| {
                (0..cs.count)
                    .map(|j| if i == j { 0 } else { cs.linking_int(i, j) })
                    .collect()
            })
            .collect()
    }

    fn mirror(&self) -> Braid {
        Braid { inner: self.inner.modify(&BraidMove::Mirror).expect("mirror is total") }
    }

    #[pyo3(signature = (positive=true))]
    fn stabilize(&self, positive: bool) -> Braid {
        Braid { inner: self.inner.modify(&BraidMove::Stabilize(positive)).expect("stabilize is total") }
    }

    fn disjoint_union(&self, other: &Braid) -> PyResult<Braid> {
        Ok(Braid { inner: self.inner.compose(&other.inner, ComposeMode::Disjoint).map_err(value_err)? })
    }

    fn connected_sum(&self, other: &Braid) -> PyResult<Braid> {
        Ok(Braid { inner: self.inner.compose(&other.inner, ComposeMode::ConnectedSum).map_err(value_err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Braid('{}', strands={})", self.inner, self.inner.strands())
    }
}

fn render(v: &ScalarValue, format: &str) -> PyResult<String> {
    match format {
        "text" => Ok(v.to_string()),
        "json" => serde_json::to_string(v).map_err(value_err),
        other => Err(value_err(format!("unknown format {:?} (text | json)", other))),
    }
}

/// The 3-variable invariant Θ(q, λ, E) of the braid closure.
#[pyfunction]
#[pyo3(signature = (braid, engine="auto", format="text"))]
fn theta(braid: &Braid, engine: &str, format: &str) -> PyResult<String> {
    let v = invariants::theta(&braid.inner, parse_engine(engine)?).map_err(value_err)?;
    render(&v, format)
}

/// The Homflypt polynomial (Θ at E = 1).
#[pyfunction]
#[pyo3(signature = (braid, format="text"))]
fn homflypt(braid: &Braid, format: &str) -> PyResult<String> {
    render(&invariants::homflypt(&braid.inner), format)
}

/// Θ_d (Θ at E = 1/d).
#[pyfunction]
#[pyo3(signature = (braid, d, engine="auto", format="text"))]
fn theta_d(braid: &Braid, d: usize, engine: &str, format: &str) -> PyResult<String> {
    let v = invariants::theta_d(&braid.inner, d, parse_engine(engine)?).map_err(value_err)?;
    render(&v, format)
}

/// The raw Markov trace before normalization, in `q`, `z`, `E`.
#[pyfunction]
fn trace_polynomial(braid: &Braid) -> String {
    thetalink::algebra::trace(&braid.inner).to_string()
}

/// Compare two braid closures; returns the JSON comparison report.
#[pyfunction]
#[pyo3(signature = (braid1, braid2, name1="link1", name2="link2"))]
fn compare(braid1: &Braid, braid2: &Braid, name1: &str, name2: &str) -> PyResult<String> {
    let report = invariants::compare(name1, &braid1.inner, name2, &braid2.inner);
    serde_json::to_string_pretty(&report).map_err(value_err)
}

/// Look up a built-in catalog entry by name.
#[pyfunction]
fn catalog_braid(name: &str) -> PyResult<Braid> {
    let catalog = Catalog::builtin();
    Ok(Braid { inner: catalog.resolve(name).map_err(value_err)? })
}

/// Names of all built-in catalog entries.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    Catalog::builtin().entries().iter().map(|e| e.name.clone()).collect()
}

/// Numerically verify an E-system solution; returns (verified, e_value).
#[pyfunction]
#[pyo3(signature = (d, subset=None, tol=1e-9))]
fn esystem_check(d: usize, subset: Option<Vec<usize>>, tol: f64) -> PyResult<(bool, (f64, f64))> {
    if tol <= 0.0 {
        return Err(PyZeroDivisionError::new_err("tolerance must be positive"));
    }
    let spec = match subset {
        Some(set) => SolutionSpec::Subset(set),
        None => SolutionSpec::Trivial,
    };
    let c = make_solution(d, &spec).map_err(value_err)?;
    let e = c.e_value();
    Ok((c.verify(tol), (e.re, e.im)))
}

/// Specialize a JSON polynomial value at `E = p/q`.
#[pyfunction]
fn specialize_e(value_json: &str, numer: i64, denom: i64) -> PyResult<String> {
    let v: ScalarValue = serde_json::from_str(value_json).map_err(value_err)?;
    if numer == 0 || denom == 0 {
        return Err(PyZeroDivisionError::new_err("E must be specialized to a nonzero rational"));
    }
    let out = v.specialize_e(&rat_frac(numer, denom)).map_err(value_err)?;
    serde_json::to_string(&out).map_err(value_err)
}

#[pymodule]
fn _thetalink(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Braid>()?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(homflypt, m)?)?;
    m.add_function(wrap_pyfunction!(theta_d, m)?)?;
    m.add_function(wrap_pyfunction!(trace_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_braid, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(esystem_check, m)?)?;
    m.add_function(wrap_pyfunction!(specialize_e, m)?)?;
    Ok(())
}
