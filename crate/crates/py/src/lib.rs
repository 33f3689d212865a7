//! Python bindings. Reports come back as JSON text, identical to what the
//! `ogfiber` command prints.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ogfiber_cli::case::generator_table;
use ogfiber_cli::{cmd_case, cmd_check_point, cmd_reproduce, load_case, parse_cases, to_json, CliError, RunConfig};
use ogfiber_core::gitmodel::CycleType;

fn py_err(e: CliError) -> PyErr {
    match e.exit_code() {
        2 => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn one_case(case: &str) -> PyResult<CycleType> {
    let mut cases = parse_cases(case).map_err(py_err)?;
    if cases.len() != 1 {
        return Err(PyValueError::new_err(format!("expected a single case, got {case:?}")));
    }
    Ok(cases.remove(0))
}

fn config(
    cases: Vec<CycleType>,
    samples: usize,
    seed: u64,
    degree_cap: Option<u32>,
    timeout_sec: Option<u64>,
    unsafe_full_elimination: bool,
) -> PyResult<RunConfig> {
    let config = RunConfig {
        cases,
        degree_cap,
        timeout_sec,
        samples,
        seed,
        unsafe_full_elimination,
        ..RunConfig::default()
    };
    config.validate().map_err(py_err)?;
    Ok(config)
}

/// Names of the length-four cases.
#[pyfunction]
fn cases() -> Vec<String> {
    CycleType::length_four().iter().map(|c| c.to_string()).collect()
}

/// `(name, definition, weight, degree)` for each generator of a case.
#[pyfunction]
fn generators(py: Python<'_>, case: &str) -> PyResult<Vec<(String, String, String, Option<u32>)>> {
    let case = one_case(case)?;
    py.detach(|| {
        let gens = load_case(&case)?;
        generator_table(&gens)
    })
    .map(|rows| rows.into_iter().map(|r| (r.name, r.definition, r.weight, r.degree)).collect())
    .map_err(py_err)
}

/// Full report for one case, as JSON.
#[pyfunction]
#[pyo3(signature = (case, samples = 200, seed = 0, degree_cap = None, timeout_sec = None, unsafe_full_elimination = false))]
fn case_report(
    py: Python<'_>,
    case: &str,
    samples: usize,
    seed: u64,
    degree_cap: Option<u32>,
    timeout_sec: Option<u64>,
    unsafe_full_elimination: bool,
) -> PyResult<String> {
    let config = config(vec![one_case(case)?], samples, seed, degree_cap, timeout_sec, unsafe_full_elimination)?;
    py.detach(|| cmd_case(&config)).map(|(reports, _)| to_json(&reports[0])).map_err(py_err)
}

/// Stability of a point given as a mapping from variable names to values.
/// Values may be ints or strings such as `"-3/2"`.
#[pyfunction]
#[pyo3(signature = (case, values, seed = 0))]
fn check_point(py: Python<'_>, case: &str, values: &Bound<'_, PyDict>, seed: u64) -> PyResult<String> {
    let config = config(vec![one_case(case)?], 200, seed, None, None, false)?;
    let mut map = serde_json::Map::new();
    for (k, v) in values.iter() {
        map.insert(k.extract::<String>()?, serde_json::Value::String(v.str()?.to_string()));
    }
    let text = serde_json::Value::Object(map).to_string();
    py.detach(|| cmd_check_point(&config, &text, true)).map(|r| to_json(&r)).map_err(py_err)
}

/// Every acceptance criterion over the given cases (all by default).
/// Returns the report JSON and the exit code the command would use.
#[pyfunction]
#[pyo3(signature = (cases = None, samples = 200, seed = 0))]
fn reproduce(py: Python<'_>, cases: Option<Vec<String>>, samples: usize, seed: u64) -> PyResult<(String, i32)> {
    let selected = match cases {
        None => CycleType::length_four(),
        Some(list) => list.iter().map(|c| one_case(c)).collect::<PyResult<_>>()?,
    };
    let config = config(selected, samples, seed, None, None, false)?;
    py.detach(|| cmd_reproduce(&config))
        .map(|(report, _)| (to_json(&report), ogfiber_cli::exit_code(report.status)))
        .map_err(py_err)
}

#[pymodule]
fn ogfiber(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cases, m)?)?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add_function(wrap_pyfunction!(case_report, m)?)?;
    m.add_function(wrap_pyfunction!(check_point, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
