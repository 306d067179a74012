//! Python bindings: formulas, solving with full run statistics, model
//! checking, and the conflicts-proximity set operations.

// The pyo3 0.22 macros expand to conversions clippy flags as useless.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use burstsat::analytics::{self, STATS_SCHEMA_VERSION};
use burstsat::cnf;
use burstsat::engine::{Outcome, Solver, SolverConfig};

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A CNF formula over variables 1..=num_vars.
#[pyclass(module = "burstsat_py")]
struct Formula {
    inner: cnf::Formula,
}

#[pymethods]
impl Formula {
    /// Builds a formula from clauses of signed DIMACS literals.
    #[new]
    fn new(num_vars: u32, clauses: Vec<Vec<i32>>) -> PyResult<Formula> {
        let mut parsed = Vec::with_capacity(clauses.len());
        for clause in &clauses {
            if clause.contains(&0) {
                return Err(PyValueError::new_err("literal 0 is not allowed"));
            }
            parsed.push(cnf::Clause::from_dimacs(clause));
        }
        let inner = cnf::Formula::new(num_vars, parsed).map_err(value_error)?;
        Ok(Formula { inner })
    }

    /// Parses DIMACS CNF text.
    #[staticmethod]
    fn parse_dimacs(text: &str) -> PyResult<Formula> {
        Ok(Formula {
            inner: cnf::parse_dimacs(text).map_err(value_error)?,
        })
    }

    #[getter]
    fn num_vars(&self) -> u32 {
        self.inner.num_vars()
    }

    #[getter]
    fn num_clauses(&self) -> usize {
        self.inner.clauses().len()
    }

    fn clauses(&self) -> Vec<Vec<i32>> {
        self.inner
            .clauses()
            .iter()
            .map(|c| c.iter().map(|l| l.to_dimacs()).collect())
            .collect()
    }

    fn to_dimacs(&self) -> String {
        self.inner.to_dimacs()
    }

    fn __repr__(&self) -> String {
        format!(
            "Formula(num_vars={}, num_clauses={})",
            self.inner.num_vars(),
            self.inner.clauses().len()
        )
    }
}

/// Outcome of a solve call: `outcome` is "SAT", "UNSAT" or "UNKNOWN";
/// `model` holds signed DIMACS literals for SAT; `stats()` returns the flat
/// run-statistics dictionary.
#[pyclass(module = "burstsat_py")]
struct SolveResult {
    outcome: String,
    model: Option<Vec<i32>>,
    stats: serde_json::Value,
}

#[pymethods]
impl SolveResult {
    #[getter]
    fn outcome(&self) -> &str {
        &self.outcome
    }

    #[getter]
    fn model(&self) -> Option<Vec<i32>> {
        self.model.clone()
    }

    fn stats(&self, py: Python<'_>) -> PyResult<PyObject> {
        json_to_py(py, &self.stats)
    }

    fn __repr__(&self) -> String {
        format!("SolveResult(outcome={:?})", self.outcome)
    }
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<PyObject> {
    use pyo3::ToPyObject;
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => b.to_object(py),
        Value::Number(n) => {
            if let Some(i) = n.as_u64() {
                i.to_object(py)
            } else if let Some(i) = n.as_i64() {
                i.to_object(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).to_object(py)
            }
        }
        Value::String(s) => s.to_object(py),
        Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.to_object(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.to_object(py)
        }
    })
}

/// Solves a formula. Releases the GIL while the solver runs.
#[pyfunction]
#[pyo3(signature = (formula, *, crvr=false, k=50, q=0.1, seed=0, conflict_budget=None, timeout_secs=None, max_tracked_burst=10))]
#[allow(clippy::too_many_arguments)]
fn solve(
    py: Python<'_>,
    formula: &Formula,
    crvr: bool,
    k: usize,
    q: f64,
    seed: u64,
    conflict_budget: Option<u64>,
    timeout_secs: Option<f64>,
    max_tracked_burst: usize,
) -> PyResult<SolveResult> {
    let cfg = SolverConfig {
        seed,
        crvr_enabled: crvr,
        crvr_k: k,
        crvr_q: q,
        conflict_budget,
        time_budget: timeout_secs.map(std::time::Duration::from_secs_f64),
        max_tracked_burst,
        ..SolverConfig::default()
    };
    let mut solver = Solver::new(&formula.inner, cfg).map_err(value_error)?;
    let result = py
        .allow_threads(move || solver.solve())
        .map_err(value_error)?;
    let model = match &result.outcome {
        Outcome::Sat(m) => Some(m.to_dimacs_lits()),
        _ => None,
    };
    Ok(SolveResult {
        outcome: result.outcome.as_str().to_string(),
        model,
        stats: serde_json::to_value(&result.stats).map_err(value_error)?,
    })
}

/// Checks a total assignment (signed DIMACS literals, one per variable).
#[pyfunction]
fn check_model(formula: &Formula, model: Vec<i32>) -> PyResult<bool> {
    let n = formula.inner.num_vars() as usize;
    let mut values = vec![None; n + 1];
    for lit in model {
        let var = lit.unsigned_abs() as usize;
        if lit == 0 || var > n {
            return Err(PyValueError::new_err(format!("bad model literal {lit}")));
        }
        if values[var].replace(lit > 0).is_some() {
            return Err(PyValueError::new_err(format!("variable {var} set twice")));
        }
    }
    if values[1..].iter().any(Option::is_none) {
        return Err(PyValueError::new_err("model must assign every variable"));
    }
    let model = cnf::Model::from_values(values[1..].iter().map(|v| v.unwrap()).collect());
    Ok(cnf::check_model(&formula.inner, &model))
}

fn normalized_sets(sets: Vec<Vec<u32>>) -> PyResult<Vec<Vec<u32>>> {
    if sets.is_empty() {
        return Err(PyValueError::new_err("need at least one level set"));
    }
    Ok(sets
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect())
}

/// Intersection of decision-level sets (literal block proximity).
#[pyfunction]
fn lbp(sets: Vec<Vec<u32>>) -> PyResult<Vec<u32>> {
    let sets = normalized_sets(sets)?;
    let refs: Vec<&[u32]> = sets.iter().map(|s| s.as_slice()).collect();
    Ok(analytics::lbp(&refs))
}

/// Conflicts-proximity |intersection| / |union|; None when the union is
/// empty (undefined).
#[pyfunction]
fn conflicts_proximity(sets: Vec<Vec<u32>>) -> PyResult<Option<f64>> {
    let sets = normalized_sets(sets)?;
    let refs: Vec<&[u32]> = sets.iter().map(|s| s.as_slice()).collect();
    Ok(analytics::conflicts_proximity(&refs).map(|p| p.value()))
}

#[pymodule]
fn burstsat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Formula>()?;
    m.add_class::<SolveResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(check_model, m)?)?;
    m.add_function(wrap_pyfunction!(lbp, m)?)?;
    m.add_function(wrap_pyfunction!(conflicts_proximity, m)?)?;
    m.add("STATS_SCHEMA_VERSION", STATS_SCHEMA_VERSION)?;
    Ok(())
}
