//! Python bindings. Problems go in as JSON text (the same format the CLI
//! reads) and reports come back as JSON strings.

use colorlie::algebra::{AlgebraError, ColorAlgebra};
use colorlie::linalg::{fmt_rational, parse_rational, Matrix, NilPolicy};
use colorlie::problem::Problem;
use colorlie::report;
use colorlie::structure::{color_flag, ideal_chain, z3_counterexample, Options, StructureError};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(colorlie_py, HypothesisError, PyException, "A theorem hypothesis fails.");
create_exception!(colorlie_py, FieldError, PyException, "An eigenvalue is not rational.");
create_exception!(colorlie_py, ComputationError, PyException, "An internal computation failed.");

fn structure_err(e: StructureError) -> PyErr {
    let msg = report::error(&e).to_string();
    match e.root_cause() {
        StructureError::IrrationalEigenvalue { .. } => FieldError::new_err(msg),
        StructureError::EmptySpace
        | StructureError::ZeroAlgebra
        | StructureError::Algebra(AlgebraError::NotClosed | AlgebraError::ClosureDiverged(_)) => {
            PyValueError::new_err(msg)
        }
        StructureError::TheoremViolation(_)
        | StructureError::Algebra(_)
        | StructureError::Graded(_)
        | StructureError::Linalg(_) => ComputationError::new_err(msg),
        _ => HypothesisError::new_err(msg),
    }
}

fn algebra_err(e: AlgebraError) -> PyErr {
    structure_err(StructureError::Algebra(e))
}

fn load(problem: &str) -> PyResult<(Problem, ColorAlgebra)> {
    let p = Problem::from_json(problem).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let l = p.algebra().map_err(algebra_err)?;
    Ok((p, l))
}

fn options(check_hypotheses: bool, seed: Option<u64>) -> Options {
    Options {
        check_hypotheses,
        policy: match seed {
            Some(seed) => NilPolicy::Auto { seed },
            None => NilPolicy::Deterministic,
        },
    }
}

/// Closes the generators and reports the dimensions of the algebra.
#[pyfunction]
fn validate(problem: &str) -> PyResult<String> {
    let (_, l) = load(problem)?;
    Ok(report::algebra(&l).to_string())
}

/// Derived and lower central series.
#[pyfunction]
fn series(problem: &str) -> PyResult<String> {
    let (_, l) = load(problem)?;
    Ok(report::series(&l).map_err(algebra_err)?.to_string())
}

/// Homogeneous flag basis, weights and generator matrices in that basis.
#[pyfunction]
#[pyo3(signature = (problem, check_hypotheses = true, seed = None))]
fn triangularize(problem: &str, check_hypotheses: bool, seed: Option<u64>) -> PyResult<String> {
    let (p, l) = load(problem)?;
    let flag = color_flag(&l, options(check_hypotheses, seed)).map_err(structure_err)?;
    Ok(report::flag(&flag, &p.generators).map_err(structure_err)?.to_string())
}

/// Chain of color ideals of every dimension.
#[pyfunction]
#[pyo3(signature = (problem, check_hypotheses = true, seed = None))]
fn chain(problem: &str, check_hypotheses: bool, seed: Option<u64>) -> PyResult<String> {
    let (_, l) = load(problem)?;
    let c = ideal_chain(&l, options(check_hypotheses, seed)).map_err(structure_err)?;
    Ok(report::chain(&c).to_string())
}

/// The Z_3-graded algebra that has no triangularizing homogeneous basis.
#[pyfunction]
fn z3_demo() -> PyResult<String> {
    let r = z3_counterexample().map_err(structure_err)?;
    Ok(report::z3(&r).to_string())
}

fn matrix(rows: Vec<Vec<String>>) -> PyResult<Matrix> {
    let rows = rows
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    parse_rational(s)
                        .ok_or_else(|| PyValueError::new_err(format!("not a rational: {s:?}")))
                })
                .collect()
        })
        .collect::<PyResult<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Characteristic polynomial of a square matrix of rational strings.
#[pyfunction]
fn char_poly(rows: Vec<Vec<String>>) -> PyResult<String> {
    let p = matrix(rows)?
        .char_poly()
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(p.to_string())
}

/// Rational eigenvalues with multiplicities.
#[pyfunction]
fn rational_eigenvalues(rows: Vec<Vec<String>>) -> PyResult<Vec<(String, usize)>> {
    let roots = matrix(rows)?
        .char_poly()
        .and_then(|p| p.rational_roots())
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(roots.iter().map(|(x, m)| (fmt_rational(x), *m)).collect())
}

#[pymodule]
fn colorlie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(triangularize, m)?)?;
    m.add_function(wrap_pyfunction!(chain, m)?)?;
    m.add_function(wrap_pyfunction!(z3_demo, m)?)?;
    m.add_function(wrap_pyfunction!(char_poly, m)?)?;
    m.add_function(wrap_pyfunction!(rational_eigenvalues, m)?)?;
    let py = m.py();
    m.add("HypothesisError", py.get_type::<HypothesisError>())?;
    m.add("FieldError", py.get_type::<FieldError>())?;
    m.add("ComputationError", py.get_type::<ComputationError>())?;
    Ok(())
}
