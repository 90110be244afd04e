//! Python bindings for the probability-metric library.
//!
//! The main types (spaces, laws, random variables, couplings, chain laws,
//! metric values) are exposed as classes; the operations (metric evaluation,
//! minimal metrics with witnesses, transport, gluing, limit operators,
//! reflection and coreflection, suites, instance files) as functions.
//! Rationals cross the boundary as canonical `"p/q"` strings so Python
//! callers keep exactness; floating approximations are available alongside.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use probmetric_core::chain;
use probmetric_core::gauges;
use probmetric_core::generate::{generate, GenProfile};
use probmetric_core::instance::InstanceBundle;
use probmetric_core::metrics::MetricDescriptor;
use probmetric_core::minimal;
use probmetric_core::rat::{format_rat, parse_rat};
use probmetric_core::suite;
use probmetric_core::transport;
use probmetric_core::{Error, FinMetricSpace, MetricValue};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite metric space with exact rational distances.
#[pyclass(frozen, from_py_object, name = "Space")]
#[derive(Clone)]
struct PySpace {
    inner: probmetric_core::SpaceRef,
}

#[pymethods]
impl PySpace {
    #[new]
    fn new(points: Vec<String>, dist: Vec<Vec<String>>) -> PyResult<Self> {
        let dist = dist
            .iter()
            .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(PySpace {
            inner: FinMetricSpace::new(points, dist).map_err(err)?,
        })
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.inner.points().to_vec()
    }

    fn dist(&self, i: usize, j: usize) -> PyResult<String> {
        if i >= self.inner.len() || j >= self.inner.len() {
            return Err(PyValueError::new_err("point index out of range"));
        }
        Ok(format_rat(self.inner.dist(i, j)))
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index_of(name)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Space(points={:?})", self.inner.points())
    }
}

/// A rational probability law on a space.
#[pyclass(frozen, from_py_object, name = "Law")]
#[derive(Clone)]
struct PyLaw {
    inner: probmetric_core::Law,
}

#[pymethods]
impl PyLaw {
    #[new]
    fn new(space: PySpace, weights: Vec<String>) -> PyResult<Self> {
        let weights = weights
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(PyLaw {
            inner: probmetric_core::Law::new(space.inner, weights).map_err(err)?,
        })
    }

    /// Point mass at the given point index.
    #[staticmethod]
    fn dirac(space: PySpace, point: usize) -> PyResult<Self> {
        Ok(PyLaw {
            inner: probmetric_core::Law::dirac(space.inner, point).map_err(err)?,
        })
    }

    #[getter]
    fn weights(&self) -> Vec<String> {
        self.inner.weights().iter().map(format_rat).collect()
    }

    #[getter]
    fn space(&self) -> PySpace {
        PySpace {
            inner: self.inner.space().clone(),
        }
    }

    fn approx(&self) -> Vec<f64> {
        self.inner
            .weights()
            .iter()
            .map(probmetric_core::rat::to_f64)
            .collect()
    }

    fn __eq__(&self, other: &PyLaw) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Law({:?})", self.weights())
    }
}

/// A random variable: a step function from [0,1) into a space.
#[pyclass(frozen, from_py_object, name = "RandomVariable")]
#[derive(Clone)]
struct PyRandomVariable {
    inner: probmetric_core::RandomVariable,
}

#[pymethods]
impl PyRandomVariable {
    #[new]
    fn new(space: PySpace, pieces: Vec<(String, String, usize)>) -> PyResult<Self> {
        let pieces = pieces
            .iter()
            .map(|(a, b, point)| {
                Ok(probmetric_core::Piece {
                    start: parse_rat(a).map_err(err)?,
                    end: parse_rat(b).map_err(err)?,
                    point: *point,
                })
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyRandomVariable {
            inner: probmetric_core::RandomVariable::new(space.inner, pieces).map_err(err)?,
        })
    }

    /// The constant random variable at the given point index.
    #[staticmethod]
    fn constant(space: PySpace, point: usize) -> PyResult<Self> {
        Ok(PyRandomVariable {
            inner: probmetric_core::RandomVariable::constant(space.inner, point).map_err(err)?,
        })
    }

    #[getter]
    fn pieces(&self) -> Vec<(String, String, usize)> {
        self.inner
            .pieces()
            .iter()
            .map(|p| (format_rat(&p.start), format_rat(&p.end), p.point))
            .collect()
    }

    #[getter]
    fn space(&self) -> PySpace {
        PySpace {
            inner: self.inner.space().clone(),
        }
    }

    fn law(&self) -> PyLaw {
        PyLaw {
            inner: self.inner.law(),
        }
    }

    fn __repr__(&self) -> String {
        format!("RandomVariable({:?})", self.pieces())
    }
}

/// Value of a probability metric: exact rational, exact root, or infinity.
#[pyclass(frozen, from_py_object, name = "MetricValue")]
#[derive(Clone)]
struct PyMetricValue {
    inner: MetricValue,
}

#[pymethods]
impl PyMetricValue {
    /// Exact rational value as a string, when the value is rational.
    #[getter]
    fn exact(&self) -> Option<String> {
        self.inner.as_rational().map(|r| format_rat(&r))
    }

    /// For L^p values: the exact rational p-th power and the degree p.
    #[getter]
    fn power(&self) -> Option<(String, u32)> {
        self.inner
            .power_value()
            .map(|(power, degree)| (format_rat(power), degree))
    }

    #[getter]
    fn is_infinite(&self) -> bool {
        self.inner.is_infinite()
    }

    fn approx(&self) -> f64 {
        self.inner.approx()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __float__(&self) -> f64 {
        self.inner.approx()
    }

    fn __richcmp__(&self, other: &PyMetricValue, op: pyo3::basic::CompareOp) -> bool {
        op.matches(self.inner.cmp_exact(&other.inner))
    }

    fn __repr__(&self) -> String {
        format!("MetricValue({})", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// A joint law on a product of two spaces.
#[pyclass(frozen, from_py_object, name = "Coupling")]
#[derive(Clone)]
struct PyCoupling {
    inner: chain::Coupling,
}

#[pymethods]
impl PyCoupling {
    #[new]
    fn new(row_space: PySpace, col_space: PySpace, entries: Vec<Vec<String>>) -> PyResult<Self> {
        let entries = entries
            .iter()
            .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(PyCoupling {
            inner: chain::Coupling::new(row_space.inner, col_space.inner, entries).map_err(err)?,
        })
    }

    #[getter]
    fn entries(&self) -> Vec<Vec<String>> {
        self.inner
            .entries()
            .iter()
            .map(|row| row.iter().map(format_rat).collect())
            .collect()
    }

    fn row_marginal(&self) -> PyLaw {
        PyLaw {
            inner: self.inner.row_marginal(),
        }
    }

    fn col_marginal(&self) -> PyLaw {
        PyLaw {
            inner: self.inner.col_marginal(),
        }
    }

    /// Realizes the coupling as a pair of random variables with this joint law.
    fn realize_pair(&self) -> (PyRandomVariable, PyRandomVariable) {
        let (xi, eta) = self.inner.realize_pair();
        (
            PyRandomVariable { inner: xi },
            PyRandomVariable { inner: eta },
        )
    }

    fn to_chain(&self) -> PyChainLaw {
        PyChainLaw {
            inner: self.inner.to_chain(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Coupling({:?})", self.entries())
    }
}

/// A sparse joint law on a product of k spaces.
#[pyclass(frozen, from_py_object, name = "ChainLaw")]
#[derive(Clone)]
struct PyChainLaw {
    inner: chain::ChainLaw,
}

#[pymethods]
impl PyChainLaw {
    /// Positive atoms as (multi-index, mass) pairs in lexicographic order.
    fn atoms(&self) -> Vec<(Vec<usize>, String)> {
        self.inner
            .atoms()
            .map(|(idx, mass)| (idx.clone(), format_rat(mass)))
            .collect()
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    /// Image law under the projection onto the given axes.
    fn marginal(&self, axes: Vec<usize>) -> PyResult<PyChainLaw> {
        Ok(PyChainLaw {
            inner: self.inner.marginal(&axes).map_err(err)?,
        })
    }

    /// Realizes the chain law as one random variable per coordinate.
    fn realize(&self) -> Vec<PyRandomVariable> {
        chain::realize_chain(&self.inner)
            .into_iter()
            .map(|rv| PyRandomVariable { inner: rv })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "ChainLaw(arity={}, atoms={})",
            self.inner.arity(),
            self.inner.support_size()
        )
    }
}

/// A parsed instance file.
#[pyclass(frozen, name = "Instance")]
struct PyInstance {
    inner: InstanceBundle,
}

#[pymethods]
impl PyInstance {
    #[getter]
    fn space(&self) -> PySpace {
        PySpace {
            inner: self.inner.space.clone(),
        }
    }

    fn law(&self, name: &str) -> PyResult<PyLaw> {
        Ok(PyLaw {
            inner: self.inner.law(name).map_err(err)?.clone(),
        })
    }

    fn random_variable(&self, name: &str) -> PyResult<PyRandomVariable> {
        Ok(PyRandomVariable {
            inner: self.inner.random_variable(name).map_err(err)?.clone(),
        })
    }

    /// Sequence members as (prefix, cycle) lists of random variables.
    fn sequence(&self, name: &str) -> PyResult<(Vec<PyRandomVariable>, Vec<PyRandomVariable>)> {
        let seq = self.inner.sequence(name).map_err(err)?;
        let wrap = |rvs: &[probmetric_core::RandomVariable]| {
            rvs.iter()
                .map(|rv| PyRandomVariable { inner: rv.clone() })
                .collect()
        };
        Ok((wrap(seq.prefix()), wrap(seq.cycle())))
    }

    #[getter]
    fn law_names(&self) -> Vec<String> {
        self.inner.laws.keys().cloned().collect()
    }

    #[getter]
    fn random_variable_names(&self) -> Vec<String> {
        self.inner.random_variables.keys().cloned().collect()
    }

    #[getter]
    fn sequence_names(&self) -> Vec<String> {
        self.inner.sequences.keys().cloned().collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Evaluate a metric descriptor between two random variables.
#[pyfunction]
fn eval_metric(
    desc: &str,
    xi: &PyRandomVariable,
    eta: &PyRandomVariable,
) -> PyResult<PyMetricValue> {
    let desc: MetricDescriptor = desc.parse().map_err(err)?;
    Ok(PyMetricValue {
        inner: minimal::eval_metric(&desc, &xi.inner, &eta.inner).map_err(err)?,
    })
}

/// The minimal probability metric of a descriptor between two laws.
#[pyfunction]
fn hat(desc: &str, p: &PyLaw, q: &PyLaw) -> PyResult<PyMetricValue> {
    let desc: MetricDescriptor = desc.parse().map_err(err)?;
    Ok(PyMetricValue {
        inner: minimal::hat(&desc, &p.inner, &q.inner).map_err(err)?,
    })
}

/// As `hat`, also returning an optimal coupling.
#[pyfunction]
fn hat_with_witness(desc: &str, p: &PyLaw, q: &PyLaw) -> PyResult<(PyMetricValue, PyCoupling)> {
    let desc: MetricDescriptor = desc.parse().map_err(err)?;
    let (value, pi) = minimal::hat_with_witness(&desc, &p.inner, &q.inner).map_err(err)?;
    Ok((PyMetricValue { inner: value }, PyCoupling { inner: pi }))
}

/// The total variation metric between two laws.
#[pyfunction]
fn total_variation(p: &PyLaw, q: &PyLaw) -> PyResult<PyMetricValue> {
    Ok(PyMetricValue {
        inner: probmetric_core::metrics::total_variation(&p.inner, &q.inner).map_err(err)?,
    })
}

/// The Prokhorov metric with parameter lambda (a rational string).
#[pyfunction]
fn prokhorov(lambda: &str, p: &PyLaw, q: &PyLaw) -> PyResult<PyMetricValue> {
    let lambda = parse_rat(lambda).map_err(err)?;
    Ok(PyMetricValue {
        inner: probmetric_core::metrics::prokhorov(&lambda, &p.inner, &q.inner).map_err(err)?,
    })
}

/// Law of a random variable.
#[pyfunction]
fn law_of(xi: &PyRandomVariable) -> PyLaw {
    PyLaw {
        inner: xi.inner.law(),
    }
}

/// Deterministic realization of a law as a random variable.
#[pyfunction]
fn realize(law: &PyLaw) -> PyRandomVariable {
    PyRandomVariable {
        inner: probmetric_core::realize(&law.inner),
    }
}

/// True when two random variables agree almost everywhere.
#[pyfunction]
fn equal_ae(xi: &PyRandomVariable, eta: &PyRandomVariable) -> PyResult<bool> {
    probmetric_core::equal_ae(&xi.inner, &eta.inner).map_err(err)
}

/// Joint law of a list of random variables over the shared sample space.
#[pyfunction]
fn joint_law(rvs: Vec<PyRandomVariable>) -> PyResult<PyChainLaw> {
    let refs: Vec<&probmetric_core::RandomVariable> = rvs.iter().map(|rv| &rv.inner).collect();
    Ok(PyChainLaw {
        inner: chain::joint_law(&refs).map_err(err)?,
    })
}

/// Exact minimum-cost coupling; returns (value, coupling).
#[pyfunction]
fn transport_lp(p: &PyLaw, q: &PyLaw, cost: Vec<Vec<String>>) -> PyResult<(String, PyCoupling)> {
    let cost = cost
        .iter()
        .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let prob =
        transport::TransportProblem::new(p.inner.clone(), q.inner.clone(), cost).map_err(err)?;
    let (value, pi) = transport::transport_lp(&prob).map_err(err)?;
    Ok((format_rat(&value), PyCoupling { inner: pi }))
}

/// Exact minimum over couplings of the mass of `{d >= t}`.
#[pyfunction]
fn min_mass_above(t: &str, p: &PyLaw, q: &PyLaw) -> PyResult<String> {
    let t = parse_rat(t).map_err(err)?;
    Ok(format_rat(
        &transport::min_mass_above(&t, &p.inner, &q.inner).map_err(err)?,
    ))
}

/// The Wasserstein-infinity (bottleneck) distance between two laws.
#[pyfunction]
fn bottleneck(p: &PyLaw, q: &PyLaw) -> PyResult<String> {
    Ok(format_rat(
        &transport::bottleneck(&p.inner, &q.inner).map_err(err)?,
    ))
}

/// All vertices of the transportation polytope (small spaces only).
#[pyfunction]
fn enumerate_vertices(p: &PyLaw, q: &PyLaw) -> PyResult<Vec<PyCoupling>> {
    Ok(transport::enumerate_vertices(&p.inner, &q.inner)
        .map_err(err)?
        .into_iter()
        .map(|pi| PyCoupling { inner: pi })
        .collect())
}

/// Glue two couplings along their shared middle marginal.
#[pyfunction]
fn glue(pi1: &PyCoupling, pi2: &PyCoupling) -> PyResult<PyChainLaw> {
    Ok(PyChainLaw {
        inner: chain::glue(&pi1.inner, &pi2.inner).map_err(err)?,
    })
}

/// Glue a consistent family of couplings sharing their first marginal.
#[pyfunction]
fn glue_chain(couplings: Vec<PyCoupling>) -> PyResult<PyChainLaw> {
    let inner: Vec<chain::Coupling> = couplings.into_iter().map(|c| c.inner).collect();
    Ok(PyChainLaw {
        inner: chain::glue_chain(&inner).map_err(err)?,
    })
}

/// Limit operator of a gauge on an eventually periodic sequence.
#[pyfunction]
#[pyo3(signature = (gauge, cycle, target, prefix = Vec::new()))]
fn limit_operator(
    gauge: &str,
    cycle: Vec<PyRandomVariable>,
    target: &PyRandomVariable,
    prefix: Vec<PyRandomVariable>,
) -> PyResult<PyMetricValue> {
    let gauge: gauges::Gauge = gauge.parse().map_err(err)?;
    let seq = gauges::SequenceSpec::new(
        prefix.into_iter().map(|rv| rv.inner).collect(),
        cycle.into_iter().map(|rv| rv.inner).collect(),
    )
    .map_err(err)?;
    Ok(PyMetricValue {
        inner: gauges::limit_operator(&gauge, &seq, &target.inner).map_err(err)?,
    })
}

/// Reflection (simple hull) of a gauge, as gauge syntax.
#[pyfunction]
fn reflect(gauge: &str) -> PyResult<String> {
    let gauge: gauges::Gauge = gauge.parse().map_err(err)?;
    Ok(gauges::reflect(&gauge).to_string())
}

/// Coreflection (sup metric) of a gauge, as descriptor syntax.
#[pyfunction]
fn coreflect(gauge: &str) -> PyResult<String> {
    let gauge: gauges::Gauge = gauge.parse().map_err(err)?;
    Ok(gauges::coreflect(&gauge).map_err(err)?.to_string())
}

/// Gap report of the minimal-limit-operator comparison, as a dict.
#[pyfunction]
#[pyo3(signature = (gauge, cycle, target, seed = 0, budget = 8))]
fn min_limit_gap<'py>(
    py: Python<'py>,
    gauge: &str,
    cycle: Vec<PyRandomVariable>,
    target: &PyRandomVariable,
    seed: u64,
    budget: usize,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let gauge: gauges::Gauge = gauge.parse().map_err(err)?;
    let seq = gauges::SequenceSpec::new(Vec::new(), cycle.into_iter().map(|rv| rv.inner).collect())
        .map_err(err)?;
    let report = gauges::min_limit_gap(&gauge, &seq, &target.inner, seed, budget).map_err(err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("lower", PyMetricValue { inner: report.lower })?;
    dict.set_item("upper", PyMetricValue { inner: report.upper })?;
    dict.set_item("holds", report.holds)?;
    dict.set_item("strict_candidate", report.strict_candidate)?;
    dict.set_item("candidates_tried", report.candidates_tried)?;
    Ok(dict)
}

/// Run a named verification suite; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (name, seeds, float_mode = false))]
fn run_suite(name: &str, seeds: Vec<u64>, float_mode: bool) -> PyResult<String> {
    let report = suite::run_suite(name, &seeds, float_mode).map_err(err)?;
    Ok(suite::emit_report(&report, suite::ReportFormat::Json))
}

/// Generate a deterministic instance; returns the canonical JSON document.
#[pyfunction]
#[pyo3(signature = (seed, profile = "small"))]
fn generate_instance(seed: u64, profile: &str) -> PyResult<String> {
    let profile = GenProfile::by_name(profile).map_err(err)?;
    Ok(generate(seed, &profile).map_err(err)?.to_json())
}

/// Parse an instance document.
#[pyfunction]
fn parse_instance(text: &str) -> PyResult<PyInstance> {
    Ok(PyInstance {
        inner: InstanceBundle::from_json(text).map_err(err)?,
    })
}

#[pymodule]
fn probmetric(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PySpace>()?;
    m.add_class::<PyLaw>()?;
    m.add_class::<PyRandomVariable>()?;
    m.add_class::<PyMetricValue>()?;
    m.add_class::<PyCoupling>()?;
    m.add_class::<PyChainLaw>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(eval_metric, m)?)?;
    m.add_function(wrap_pyfunction!(hat, m)?)?;
    m.add_function(wrap_pyfunction!(hat_with_witness, m)?)?;
    m.add_function(wrap_pyfunction!(total_variation, m)?)?;
    m.add_function(wrap_pyfunction!(prokhorov, m)?)?;
    m.add_function(wrap_pyfunction!(law_of, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(equal_ae, m)?)?;
    m.add_function(wrap_pyfunction!(joint_law, m)?)?;
    m.add_function(wrap_pyfunction!(transport_lp, m)?)?;
    m.add_function(wrap_pyfunction!(min_mass_above, m)?)?;
    m.add_function(wrap_pyfunction!(bottleneck, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_vertices, m)?)?;
    m.add_function(wrap_pyfunction!(glue, m)?)?;
    m.add_function(wrap_pyfunction!(glue_chain, m)?)?;
    m.add_function(wrap_pyfunction!(limit_operator, m)?)?;
    m.add_function(wrap_pyfunction!(reflect, m)?)?;
    m.add_function(wrap_pyfunction!(coreflect, m)?)?;
    m.add_function(wrap_pyfunction!(min_limit_gap, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(generate_instance, m)?)?;
    m.add_function(wrap_pyfunction!(parse_instance, m)?)?;
    Ok(())
}
