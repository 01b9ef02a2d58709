//! Python bindings for the covering-translates toolkit.
//!
//! The module mirrors the library surface with plain Python types: sets are
//! given as element lists or `"0,1,3"` strings, every exact rational is
//! returned as a canonical `p/q` string, and each operation returns a dict
//! shaped like the CLI's JSON output. Resource-limit errors raise
//! `RuntimeError`; invalid inputs raise `ValueError`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use transcover_core::debruijn::{self, GraphVariant};
use transcover_core::finite_cover::{self, GroupSpec};
use transcover_core::random_lab::{self, ExperimentSpec, SplitMix64, TrialMode};
use transcover_core::rat::{parse_rat, rat_to_string};
use transcover_core::realline::{
    best_lower_bound, two_interval_methods, verify_interval_covering, IntervalUnion,
    RealCoveringCert,
};
use transcover_core::{CyclicSet, Error, Limits};

fn err(e: Error) -> PyErr {
    if e.is_resource_limit() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn parse_variant(variant: &str) -> PyResult<GraphVariant> {
    match variant {
        "full" => Ok(GraphVariant::Full),
        "reduced" => Ok(GraphVariant::Reduced),
        other => Err(PyValueError::new_err(format!(
            "variant must be 'full' or 'reduced', got {other:?}"
        ))),
    }
}

fn limits_with_budget(node_budget: Option<u64>) -> Limits {
    let base = Limits::from_env();
    Limits { node_budget: node_budget.or(base.node_budget), ..base }
}

fn cover_dict<'py>(
    py: Python<'py>,
    r: &finite_cover::CoverResult,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("tau", r.tau)?;
    d.set_item("witness", r.witness.clone())?;
    d.set_item("kappa", rat_to_string(&r.kappa))?;
    d.set_item("efficiency", rat_to_string(&r.efficiency))?;
    d.set_item("exact", r.exact)?;
    Ok(d)
}

fn cert_dict<'py>(py: Python<'py>, c: &RealCoveringCert) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("method", c.method.to_string())?;
    d.set_item("period", rat_to_string(&c.period))?;
    d.set_item("offsets", c.offsets.iter().map(rat_to_string).collect::<Vec<_>>())?;
    d.set_item("efficiency", rat_to_string(&c.efficiency))?;
    Ok(d)
}

/// A finite set of integers, normalized to contain 0 as its minimum.
#[pyclass(frozen)]
struct ZSet {
    inner: transcover_core::ZSet,
}

#[pymethods]
impl ZSet {
    #[new]
    fn new(elements: Vec<i64>) -> PyResult<Self> {
        Ok(ZSet { inner: transcover_core::ZSet::normalize(&elements).map_err(err)? })
    }

    /// Parse a comma-separated element list such as `"0,1,3"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(ZSet { inner: transcover_core::ZSet::parse(text).map_err(err)? })
    }

    fn elements(&self) -> Vec<u64> {
        self.inner.elements().to_vec()
    }

    fn size(&self) -> u64 {
        self.inner.size()
    }

    fn diameter(&self) -> u64 {
        self.inner.diameter()
    }

    /// Covering density: dict with `nu`, `kappa`, `efficiency`.
    #[pyo3(signature = (variant = "reduced"))]
    fn density<'py>(&self, py: Python<'py>, variant: &str) -> PyResult<Bound<'py, PyDict>> {
        let r = debruijn::covering_density(&self.inner, parse_variant(variant)?, &Limits::from_env())
            .map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("nu", rat_to_string(&r.nu))?;
        d.set_item("kappa", rat_to_string(&r.kappa))?;
        d.set_item("efficiency", rat_to_string(&r.efficiency))?;
        Ok(d)
    }

    /// Minimal period of an optimal periodic covering, with a witness: dict
    /// with `nu`, `kappa`, `efficiency`, `ell`, `period`, `offsets`.
    #[pyo3(signature = (variant = "reduced"))]
    fn minimal_period<'py>(&self, py: Python<'py>, variant: &str) -> PyResult<Bound<'py, PyDict>> {
        let r = debruijn::minimal_period(&self.inner, parse_variant(variant)?, &Limits::from_env())
            .map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("nu", rat_to_string(&r.nu))?;
        d.set_item("kappa", rat_to_string(&r.kappa))?;
        d.set_item("efficiency", rat_to_string(&r.efficiency))?;
        d.set_item("ell", r.ell)?;
        d.set_item("period", r.covering.period)?;
        d.set_item("offsets", r.covering.offsets.clone())?;
        Ok(d)
    }

    /// One optimal periodic covering: dict with `period`, `offsets`.
    fn extract_covering<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = debruijn::extract_covering(&self.inner, &Limits::from_env()).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("period", c.period)?;
        d.set_item("offsets", c.offsets.clone())?;
        Ok(d)
    }

    /// Check a claimed periodic covering: dict with `covers`, `multiplicity`.
    fn verify_covering<'py>(
        &self,
        py: Python<'py>,
        period: u64,
        offsets: Vec<u64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let v = debruijn::verify_covering(&self.inner, period, &offsets).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("covers", v.covers)?;
        d.set_item("multiplicity", rat_to_string(&v.multiplicity))?;
        Ok(d)
    }

    /// Exact covering number of the window `{1, .., n}`: dict with `tau`,
    /// `witness`, `kappa`, `efficiency`.
    #[pyo3(signature = (n, node_budget = None))]
    fn interval_cover<'py>(
        &self,
        py: Python<'py>,
        n: u64,
        node_budget: Option<u64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let r = finite_cover::exact_cover_interval(&self.inner, n, &limits_with_budget(node_budget))
            .map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("tau", r.tau)?;
        d.set_item("witness", r.witness.clone())?;
        d.set_item("kappa", rat_to_string(&r.kappa))?;
        d.set_item("efficiency", rat_to_string(&r.efficiency))?;
        Ok(d)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ZSet(\"{}\")", self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.size() as usize
    }
}

/// Covering number of `Z_n` by translates of the residue set `s`.
#[pyfunction]
#[pyo3(signature = (n, s, exact = true, node_budget = None))]
fn cyclic_cover<'py>(
    py: Python<'py>,
    n: u64,
    s: Vec<i64>,
    exact: bool,
    node_budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let set = CyclicSet::new(n, &s).map_err(err)?;
    let r = if exact {
        finite_cover::exact_cover_cyclic(&set, &limits_with_budget(node_budget)).map_err(err)?
    } else {
        finite_cover::greedy_cover_cyclic(&set).map_err(err)?
    };
    cover_dict(py, &r)
}

/// Covering number of a product group `Z_{f1} x .. x Z_{fr}`; `s` holds
/// canonical element indices (mixed-radix, first factor most significant).
#[pyfunction]
#[pyo3(signature = (factors, s, exact = true, node_budget = None))]
fn group_cover<'py>(
    py: Python<'py>,
    factors: Vec<u64>,
    s: Vec<u64>,
    exact: bool,
    node_budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let group = GroupSpec::product(&factors).map_err(err)?;
    let r = if exact {
        finite_cover::exact_cover(&group, &s, &limits_with_budget(node_budget)).map_err(err)?
    } else {
        finite_cover::greedy_cover(&group, &s).map_err(err)?
    };
    cover_dict(py, &r)
}

/// Exact cover of `Z_{n1} x Z_{n2}` by translates of `S1 x S2`, with the
/// sandwich bounds `max(tau1, tau2) <= tau <= tau1 * tau2`.
#[pyfunction]
#[pyo3(signature = (n1, s1, n2, s2, node_budget = None))]
fn product_cover<'py>(
    py: Python<'py>,
    n1: u64,
    s1: Vec<i64>,
    n2: u64,
    s2: Vec<i64>,
    node_budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let a = CyclicSet::new(n1, &s1).map_err(err)?;
    let b = CyclicSet::new(n2, &s2).map_err(err)?;
    let p = finite_cover::product_cover(&a, &b, &limits_with_budget(node_budget)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("factors", p.group.factors().to_vec())?;
    d.set_item("product", cover_dict(py, &p.result)?)?;
    d.set_item("factor1", cover_dict(py, &p.factor1)?)?;
    d.set_item("factor2", cover_dict(py, &p.factor2)?)?;
    d.set_item("tau_lower", p.tau_lower)?;
    d.set_item("tau_upper", p.tau_upper)?;
    Ok(d)
}

/// Closed-form greedy bound: number of rounds of the recursion
/// `n_{j+1} = floor(n_j (n - k) / n)` until nothing is uncovered.
#[pyfunction]
fn greedy_bound(n: u64, k: u64) -> PyResult<u64> {
    finite_cover::greedy_bound(n, k).map_err(err)
}

/// All applicable periodic-covering constructions for the two-interval union
/// `[0, a] u [a + c, a + c + b]` (rationals as `p/q` strings): dict with
/// `best` and the full `methods` list.
#[pyfunction]
fn two_interval_best<'py>(
    py: Python<'py>,
    a: &str,
    b: &str,
    c: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let (a, b, c) =
        (parse_rat(a).map_err(err)?, parse_rat(b).map_err(err)?, parse_rat(c).map_err(err)?);
    let certs = two_interval_methods(&a, &b, &c).map_err(err)?;
    let union = IntervalUnion::new(&[
        (parse_rat("0").unwrap(), a.clone()),
        (&a + &c, &a + &c + &b),
    ])
    .map_err(err)?;
    for cert in &certs {
        if !verify_interval_covering(&union, cert) {
            return Err(PyRuntimeError::new_err(format!(
                "internal error: method {} certificate failed verification",
                cert.method
            )));
        }
    }
    let best = certs
        .iter()
        .reduce(|best, cand| if cand.efficiency > best.efficiency { cand } else { best })
        .expect("at least one method applies");
    let d = PyDict::new(py);
    d.set_item("best", cert_dict(py, best)?)?;
    let methods: Vec<Bound<'py, PyDict>> =
        certs.iter().map(|c| cert_dict(py, c)).collect::<PyResult<_>>()?;
    d.set_item("methods", methods)?;
    Ok(d)
}

/// Best certified lower bound on the covering efficiency of a union of
/// rational intervals, given as `"lo,hi;lo,hi"`: dict with `efficiency`,
/// the winning `certificate`, and any `notes`.
#[pyfunction]
#[pyo3(signature = (spec, delta = None))]
fn interval_union_bound<'py>(
    py: Python<'py>,
    spec: &str,
    delta: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let s = IntervalUnion::parse(spec).map_err(err)?;
    let delta = match delta {
        Some(text) => parse_rat(text).map_err(err)?,
        None => transcover_core::realline::default_delta(&s),
    };
    let r = best_lower_bound(&s, &delta, &Limits::from_env()).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("efficiency", rat_to_string(&r.efficiency))?;
    d.set_item("certificate", cert_dict(py, &r.certificate)?)?;
    d.set_item("notes", r.notes.clone())?;
    Ok(d)
}

/// Uniform k-element subset of `Z_n` from the deterministic generator.
#[pyfunction]
fn sample_subset(n: u64, k: u64, seed: u64) -> PyResult<Vec<u64>> {
    let mut rng = SplitMix64::new(seed);
    Ok(random_lab::sample_subset(n, k, &mut rng).map_err(err)?.residues().to_vec())
}

/// Random-subset covering experiment; returns the full report as a dict.
#[pyfunction]
#[pyo3(signature = (n, k, trials, mode = "exact", seed = 0, threshold = None, node_budget = None))]
#[allow(clippy::too_many_arguments)]
fn experiment<'py>(
    py: Python<'py>,
    n: u64,
    k: u64,
    trials: u64,
    mode: &str,
    seed: u64,
    threshold: Option<&str>,
    node_budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = match mode {
        "exact" => TrialMode::Exact,
        "greedy" => TrialMode::Greedy,
        other => {
            return Err(PyValueError::new_err(format!(
                "mode must be 'exact' or 'greedy', got {other:?}"
            )))
        }
    };
    let mut spec = ExperimentSpec::new(n, k, trials, mode, seed);
    if let Some(text) = threshold {
        spec.threshold = parse_rat(text).map_err(err)?;
    }
    let r = random_lab::efficiency_experiment(&spec, &limits_with_budget(node_budget))
        .map_err(err)?;
    let opt = |v: &Option<transcover_core::Rat>| v.as_ref().map(rat_to_string);
    let d = PyDict::new(py);
    d.set_item("n", spec.n)?;
    d.set_item("k", spec.k)?;
    d.set_item("trials", spec.trials)?;
    d.set_item("mode", spec.mode.to_string())?;
    d.set_item("seed", spec.seed)?;
    d.set_item("threshold", rat_to_string(&spec.threshold))?;
    d.set_item("kappas", r.kappas.iter().map(rat_to_string).collect::<Vec<_>>())?;
    d.set_item("censored", r.censored)?;
    d.set_item("min_kappa", opt(&r.min_kappa))?;
    d.set_item("max_kappa", opt(&r.max_kappa))?;
    d.set_item("mean_kappa", opt(&r.mean_kappa))?;
    d.set_item("high_efficiency_fraction", opt(&r.high_efficiency_fraction))?;
    Ok(d)
}

#[pymodule]
fn transcover(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA_VERSION", transcover_core::SCHEMA_VERSION)?;
    m.add_class::<ZSet>()?;
    m.add_function(wrap_pyfunction!(cyclic_cover, m)?)?;
    m.add_function(wrap_pyfunction!(group_cover, m)?)?;
    m.add_function(wrap_pyfunction!(product_cover, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_bound, m)?)?;
    m.add_function(wrap_pyfunction!(two_interval_best, m)?)?;
    m.add_function(wrap_pyfunction!(interval_union_bound, m)?)?;
    m.add_function(wrap_pyfunction!(sample_subset, m)?)?;
    m.add_function(wrap_pyfunction!(experiment, m)?)?;
    Ok(())
}
