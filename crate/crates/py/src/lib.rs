//! Python bindings. Reports are returned as JSON strings with the same
//! layout as the command line tool.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use clifford_prym::exactfield::{GfField, UniPoly};
use clifford_prym::fibration::format::{parse_fibration, serialize_fibration};
use clifford_prym::fibration::{demo_fibration, transversal_curve};
use clifford_prym::spectral::{pushforward, LineBundleOnCover, SpectralCover};
use clifford_prym::verify::run_all;
use clifford_prym::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.name()))
}

/// A random fibration of the demo shape, as fibration file text.
#[pyfunction]
#[pyo3(signature = (p = 13, m = 1, seed = 0))]
fn demo(p: u64, m: usize, seed: u64) -> PyResult<String> {
    let field = GfField::canonical(p, m).map_err(py_err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(serialize_fibration(&demo_fibration(field, &mut rng).map_err(py_err)?))
}

/// Degree of the discriminant of a fibration given as file text.
#[pyfunction]
fn discriminant_degree(text: &str) -> PyResult<i64> {
    let fib = parse_fibration(text).map_err(py_err)?;
    Ok(fib.discriminant().degree())
}

/// Intersection with a random transversal curve of degree `d`, as JSON.
#[pyfunction]
#[pyo3(signature = (text, d = 1, seed = 0))]
fn intersect(text: &str, d: usize, seed: u64) -> PyResult<String> {
    let fib = parse_fibration(text).map_err(py_err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, inter) = transversal_curve(&fib, d, &mut rng, 500).map_err(py_err)?;
    Ok(inter.to_json().to_string())
}

/// Higgs field of the trivial bundle on `t^2 = s`, with `s` given by its
/// coefficients, constant term first.
#[pyfunction]
#[pyo3(signature = (s, p = 13))]
fn spectral(s: Vec<i64>, p: u64) -> PyResult<String> {
    let field = GfField::canonical(p, 1).map_err(py_err)?;
    let branch = UniPoly::new(s.iter().map(|&c| field.from_i64(c)).collect(), field.zero());
    let cover = SpectralCover::new(branch).map_err(py_err)?;
    let higgs = pushforward(&cover, &LineBundleOnCover::trivial(&field.zero())).map_err(py_err)?;
    Ok(higgs.to_json(&cover).to_string())
}

/// The full self-check report, as JSON.
#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn verify(py: Python<'_>, seed: u64) -> String {
    py.detach(|| run_all(seed).to_json().to_string())
}

#[pymodule]
fn clifford_prym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(demo, m)?)?;
    m.add_function(wrap_pyfunction!(discriminant_degree, m)?)?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(spectral, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
