//! Python bindings. Theories are passed by id (`"dlo-q"`, `"mul-r"`, ...);
//! formulas use the same text syntax as the command line.

use std::collections::BTreeMap;

use ordqe::eval::{check_assignment, parse_assignment, witness_block};
use ordqe::selftest::{run_selftest, SelftestConfig};
use ordqe::syntax::{parse_formula, print_formula, qe_driver, Formula, Theory};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn parse(theory: &str, text: &str) -> Result<(Theory, Formula), String> {
    let t: Theory = theory.parse().map_err(|e| format!("{e}"))?;
    let f = parse_formula(text, t).map_err(|e| e.to_string())?;
    Ok((t, f))
}

pub fn decide_text(theory: &str, text: &str) -> Result<bool, String> {
    let (t, f) = parse(theory, text)?;
    ordqe::syntax::decide(&f, t).map(|(b, _)| b).map_err(|e| e.to_string())
}

pub fn eliminate_text(theory: &str, text: &str) -> Result<String, String> {
    let (t, f) = parse(theory, text)?;
    Ok(print_formula(&qe_driver(&f, t).0))
}

/// Values for the leading `∃` block, printed as rationals or radicals.
pub fn witness_text(theory: &str, text: &str, assign: &BTreeMap<String, String>) -> Result<Option<BTreeMap<String, String>>, String> {
    let (t, f) = parse(theory, text)?;
    let joined: Vec<String> = assign.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let a = parse_assignment(&joined.join(",")).map_err(|e| e.to_string())?;
    check_assignment(&f, t, &a).map_err(|e| e.to_string())?;
    let w = witness_block(&f, t, &a).map_err(|e| e.to_string())?;
    Ok(w.map(|w| w.values.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()))
}

/// Decides a sentence.
#[pyfunction]
fn decide(theory: &str, formula: &str) -> PyResult<bool> {
    decide_text(theory, formula).map_err(PyValueError::new_err)
}

/// A quantifier-free equivalent, in the input syntax.
#[pyfunction]
fn eliminate(theory: &str, formula: &str) -> PyResult<String> {
    eliminate_text(theory, formula).map_err(PyValueError::new_err)
}

/// Verified values for the leading existential block, or `None`.
#[pyfunction]
#[pyo3(signature = (theory, formula, assign = BTreeMap::new()))]
fn witness(theory: &str, formula: &str, assign: BTreeMap<String, String>) -> PyResult<Option<BTreeMap<String, String>>> {
    witness_text(theory, formula, &assign).map_err(PyValueError::new_err)
}

/// `(suite, passed, checked, failed)` for each built-in suite.
#[pyfunction]
#[pyo3(signature = (seed = 7, instances = 200))]
fn selftest(seed: u64, instances: usize) -> Vec<(String, bool, usize, usize)> {
    let cfg = SelftestConfig { seed, instances, ..SelftestConfig::default() };
    run_selftest(&cfg).into_iter().map(|r| (r.name.to_string(), r.passed(), r.checked, r.failed)).collect()
}

#[pyfunction]
fn theories() -> Vec<&'static str> {
    Theory::ALL.iter().map(|t| t.id()).collect()
}

#[pymodule]
fn ordqe_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(eliminate, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add_function(wrap_pyfunction!(theories, m)?)?;
    Ok(())
}
