//! Python module `msym`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use msym_core::oracle;
use msym_core::rewrite::{self, Derivation, Engine, EngineError};
use msym_core::term::{self, DimensionError};
use msym_core::{BrauerModel, StableClass as CoreClass, VarietyTerm};

create_exception!(msym, MsymError, PyValueError);
create_exception!(msym, ParseError, MsymError);
create_exception!(msym, ContextError, MsymError);
create_exception!(msym, NoRepresentativeError, MsymError);

fn engine_err(e: EngineError) -> PyErr {
    match e {
        EngineError::NoCanonicalRepresentative(k) => {
            NoRepresentativeError::new_err(format!("no canonical representative for {k}"))
        }
        other => MsymError::new_err(other.to_string()),
    }
}

/// A cyclic Brauer model `Z/order`, a class in it and a dimension for `P`.
#[pyclass(name = "Context", module = "msym", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyContext {
    inner: term::Context,
}

#[pymethods]
impl PyContext {
    #[new]
    #[pyo3(signature = (order, cls=None, dim=None))]
    fn new(order: u64, cls: Option<u64>, dim: Option<u64>) -> PyResult<Self> {
        let err = |e: msym_core::BrauerError| ContextError::new_err(e.to_string());
        let model = BrauerModel::new(order).map_err(err)?;
        let class = model.class(cls.unwrap_or(1 % order)).map_err(err)?;
        let dim = dim.unwrap_or(class.index() - 1);
        let inner = term::Context::from_parts(order, class.value(), dim).map_err(err)?;
        Ok(PyContext { inner })
    }

    /// Generator of `Z/index` with `P` of minimal dimension.
    #[staticmethod]
    fn with_index(index: u64) -> PyResult<Self> {
        term::Context::with_index(index)
            .map(|inner| PyContext { inner })
            .map_err(|e| ContextError::new_err(e.to_string()))
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.model().order()
    }

    #[getter]
    fn cls(&self) -> u64 {
        self.inner.base().class().value()
    }

    #[getter]
    fn dim(&self) -> u64 {
        self.inner.dim()
    }

    #[getter]
    fn index(&self) -> u64 {
        self.inner.index()
    }

    #[getter]
    fn period(&self) -> u64 {
        self.inner.base().class().period()
    }

    fn __repr__(&self) -> String {
        format!("Context(order={}, cls={}, dim={})", self.order(), self.cls(), self.dim())
    }
}

#[pyclass(name = "Term", module = "msym", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyTerm {
    inner: VarietyTerm,
}

#[pymethods]
impl PyTerm {
    #[getter]
    fn head(&self) -> &'static str {
        self.inner.head()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    fn dimension(&self) -> PyResult<u64> {
        dimension(self)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "StableClass", module = "msym", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyStableClass {
    inner: CoreClass,
}

#[pymethods]
impl PyStableClass {
    /// "resolved", "exceptional" or "unresolved".
    #[getter]
    fn status(&self) -> String {
        match self.inner.status() {
            rewrite::Status::Resolved => "resolved",
            rewrite::Status::Exceptional => "exceptional",
            rewrite::Status::Unresolved => "unresolved",
        }
        .to_owned()
    }

    /// `(class value, divisor)` pairs.
    #[getter]
    fn entries(&self) -> Vec<(u64, u64)> {
        self.inner.entries().map(|(c, g)| (c.value(), g)).collect()
    }

    #[getter]
    fn unresolved(&self) -> Vec<String> {
        self.inner.unresolved_reasons().map(ToString::to_string).collect()
    }

    #[getter]
    fn exceptional(&self) -> Vec<String> {
        self.inner.exceptional_cases().map(ToString::to_string).collect()
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("StableClass({})", self.inner)
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_u64() {
            Some(u) => u.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(0.0).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn steps<'py>(py: Python<'py>, d: &Derivation) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(d.report()).expect("report serializes");
    to_py(py, &v)
}

#[pyfunction]
fn parse(text: &str, ctx: &PyContext) -> PyResult<PyTerm> {
    term::parse(text, &ctx.inner)
        .map(|inner| PyTerm { inner })
        .map_err(|e| ParseError::new_err(e.to_string()))
}

#[pyfunction]
fn render(t: &PyTerm) -> String {
    t.inner.to_string()
}

#[pyfunction]
fn dimension(t: &PyTerm) -> PyResult<u64> {
    t.inner.dimension().map_err(|e| match e {
        DimensionError::Exceptional { .. } => NoRepresentativeError::new_err(e.to_string()),
        other => MsymError::new_err(other.to_string()),
    })
}

/// `(class, derivation)`; the derivation is a list of step dicts.
#[pyfunction]
fn stable_class<'py>(py: Python<'py>, t: &PyTerm, ctx: &PyContext) -> PyResult<(PyStableClass, Bound<'py, PyAny>)> {
    let (k, d) = rewrite::stable_class(&t.inner, &ctx.inner).map_err(engine_err)?;
    Ok((PyStableClass { inner: k }, steps(py, &d)?))
}

/// `(representative, derivation)`.
#[pyfunction]
fn normal_form<'py>(py: Python<'py>, t: &PyTerm, ctx: &PyContext) -> PyResult<(PyTerm, Bound<'py, PyAny>)> {
    let (rep, d) = rewrite::normal_form(&t.inner, &ctx.inner).map_err(engine_err)?;
    Ok((PyTerm { inner: rep }, steps(py, &d)?))
}

/// "yes", "no" or "unknown".
#[pyfunction]
fn is_stably_rational(t: &PyTerm, ctx: &PyContext) -> PyResult<String> {
    rewrite::is_stably_rational(&t.inner, &ctx.inner)
        .map(|v| v.to_string())
        .map_err(engine_err)
}

#[pyfunction]
fn stably_equivalent(a: &PyTerm, b: &PyTerm, ctx: &PyContext) -> PyResult<String> {
    rewrite::stably_equivalent(&a.inner, &b.inner, &ctx.inner)
        .map(|v| v.to_string())
        .map_err(engine_err)
}

/// `(divisor, representative)` for every class over the base.
#[pyfunction]
fn enumerate(ctx: &PyContext) -> Vec<(u64, PyTerm)> {
    let c = &ctx.inner;
    rewrite::msym_enumerate(c)
        .iter()
        .map(|k| {
            let g = k.divisor_for(c.base().class()).unwrap_or(c.index());
            let rep = rewrite::representative(k, c).expect("enumerated classes are resolved");
            (g, PyTerm { inner: rep })
        })
        .collect()
}

/// One birational rewrite; `(term, derivation)`.
#[pyfunction]
fn birational_expand<'py>(py: Python<'py>, t: &PyTerm, ctx: &PyContext) -> PyResult<(PyTerm, Bound<'py, PyAny>)> {
    let (out, d) = rewrite::birational_expand(&t.inner, &ctx.inner).map_err(engine_err)?;
    Ok((PyTerm { inner: out }, steps(py, &d)?))
}

/// Runs one oracle sweep and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, bound=None, samples=200, seed=0))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    bound: Option<u64>,
    samples: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let engine = Engine::default();
    let report = match suite {
        "monoid" => oracle::check_monoid(bound.unwrap_or(12), &engine),
        "confluence" => {
            let ctx = term::Context::with_index(bound.unwrap_or(6))
                .map_err(|e| ContextError::new_err(e.to_string()))?;
            oracle::check_confluence(&ctx, samples, seed, &engine)
        }
        "dims" => oracle::check_dimension_identities(bound.unwrap_or(20)),
        "maps" => oracle::check_maps_lemma(bound.unwrap_or(30), 12),
        other => return Err(PyValueError::new_err(format!("unknown suite `{other}`"))),
    };
    let v = serde_json::to_value(&report).expect("report serializes");
    to_py(py, &v)
}

#[pymodule]
fn msym(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyContext>()?;
    m.add_class::<PyTerm>()?;
    m.add_class::<PyStableClass>()?;
    m.add("MsymError", py.get_type::<MsymError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("ContextError", py.get_type::<ContextError>())?;
    m.add("NoRepresentativeError", py.get_type::<NoRepresentativeError>())?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(dimension, m)?)?;
    m.add_function(wrap_pyfunction!(stable_class, m)?)?;
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(is_stably_rational, m)?)?;
    m.add_function(wrap_pyfunction!(stably_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(birational_expand, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
