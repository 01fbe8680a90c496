use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use pseudodiff::exact::parse_scalar;
use pseudodiff::fractional::FracOp;
use pseudodiff::krichever::{conjugated_pair, elliptic_plane, CurveData};
use pseudodiff::{acceptance, relations, PsDO};

create_exception!(pseudodiff_py, UnknownAtPrecision, PyException);

fn py_err(e: pseudodiff::Error) -> PyErr {
    if e.is_precision_limited() {
        UnknownAtPrecision::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// Product of two operators, rendered as text.
#[pyfunction]
#[pyo3(signature = (p, q, prec_x = 12))]
fn multiply(p: &str, q: &str, prec_x: usize) -> PyResult<String> {
    let p = PsDO::parse(p, prec_x).map_err(py_err)?;
    let q = PsDO::parse(q, prec_x).map_err(py_err)?;
    Ok(p.mul(&q).to_string())
}

/// Inverse of an operator with unit leading coefficient.
#[pyfunction]
#[pyo3(signature = (p, prec_x = 12))]
fn invert(p: &str, prec_x: usize) -> PyResult<String> {
    let p = PsDO::parse(p, prec_x).map_err(py_err)?;
    Ok(p.invert().map_err(py_err)?.to_string())
}

/// Polynomial relation between two commuting (fractional) operators.
#[pyfunction]
#[pyo3(signature = (p, q, nmax = 3, prec_x = 12))]
fn bc_relation(p: &str, q: &str, nmax: usize, prec_x: usize) -> PyResult<String> {
    let p = FracOp::parse(p, prec_x).map_err(py_err)?;
    let q = FracOp::parse(q, prec_x).map_err(py_err)?;
    let (f, _) = relations::bc_relation(&p, &q, nmax).map_err(py_err)?;
    Ok(f.to_string())
}

/// Relation satisfied by the commuting pair built from a Weierstrass curve and a point on it.
#[pyfunction]
#[pyo3(signature = (g2, g3, a, b, depth = 8, nmax = 3))]
fn elliptic_relation(
    g2: &str,
    g3: &str,
    a: &str,
    b: &str,
    depth: usize,
    nmax: usize,
) -> PyResult<String> {
    let s = |t: &str| parse_scalar(t).map_err(py_err);
    let curve = CurveData::new(s(g2)?, s(g3)?, s(a)?, s(b)?).map_err(py_err)?;
    let e = elliptic_plane(&curve, depth).map_err(py_err)?;
    let pair = conjugated_pair(&e).map_err(py_err)?;
    let l2 = FracOp::from_differential(pair.l2).map_err(py_err)?;
    let l3 = FracOp::from_differential(pair.l3).map_err(py_err)?;
    let (f, _) = relations::bc_relation(&l2, &l3, nmax).map_err(py_err)?;
    Ok(f.to_string())
}

/// Acceptance criteria as `(id, name, passed, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (only = None))]
fn selftest(only: Option<usize>) -> PyResult<Vec<(usize, String, bool, String)>> {
    let results = match only {
        Some(id) => acceptance::run(id)
            .map(|r| vec![r])
            .ok_or_else(|| PyValueError::new_err(format!("no criterion {id}")))?,
        None => acceptance::run_all(),
    };
    Ok(results
        .into_iter()
        .map(|r| (r.id, r.name.to_string(), r.passed, r.detail))
        .collect())
}

#[pymodule]
fn pseudodiff_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add(
        "UnknownAtPrecision",
        m.py().get_type::<UnknownAtPrecision>(),
    )?;
    m.add_function(wrap_pyfunction!(multiply, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(bc_relation, m)?)?;
    m.add_function(wrap_pyfunction!(elliptic_relation, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
