//! Machine-readable reports. Rationals are written as `"p/q"` strings and
//! degrees as coordinate arrays.

use serde_json::{json, Value};

use crate::algebra::{AlgebraError, ColorAlgebra, Subspace};
use crate::graded::{GradedVector, HomogeneousMap};
use crate::grading::GroupElement;
use crate::linalg::{fmt_rational, Matrix};
use crate::structure::{ColorFlag, EngelReport, IdealChain, StructureError, Z3Report};

pub fn degree(g: &GroupElement) -> Value {
    json!(g.coords())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| json!(fmt_rational(x))).collect()))
            .collect(),
    )
}

pub fn vector(v: &GradedVector) -> Value {
    let mut out = json!({ "flat": v.flatten().iter().map(fmt_rational).collect::<Vec<_>>() });
    if let Some(g) = v.homogeneous_degree() {
        out["degree"] = degree(g);
    }
    out
}

pub fn map(x: &HomogeneousMap) -> Value {
    json!({ "degree": degree(x.degree()), "matrix": matrix(&x.flatten()) })
}

pub fn component_dims(dims: &[(GroupElement, usize)]) -> Value {
    Value::Array(
        dims.iter()
            .map(|(g, n)| json!({ "degree": degree(g), "dim": n }))
            .collect(),
    )
}

fn subspace_summary(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "components": component_dims(&s.component_dims()) })
}

pub fn algebra(l: &ColorAlgebra) -> Value {
    json!({
        "group": l.space().group().to_string(),
        "space": component_dims(&l.space().components().map(|(g, n)| (g.clone(), n)).collect::<Vec<_>>()),
        "dim": l.dim(),
        "components": component_dims(&l.component_dims()),
    })
}

pub fn series(l: &ColorAlgebra) -> Result<Value, AlgebraError> {
    let derived = l.derived_series()?;
    let lower = l.lower_central_series()?;
    let solvable = derived.last().is_some_and(Subspace::is_zero);
    let nilpotent = lower.last().is_some_and(Subspace::is_zero);
    Ok(json!({
        "derived": derived.iter().map(subspace_summary).collect::<Vec<_>>(),
        "lower_central": lower.iter().map(subspace_summary).collect::<Vec<_>>(),
        "solvable": solvable,
        "nilpotent": nilpotent,
    }))
}

pub fn engel(report: &EngelReport) -> Value {
    json!({
        "all_ad_nilpotent": report.all_ad_nilpotent,
        "nilpotent": report.nilpotent,
        "central_witness": report.central_witness.as_ref().map(map),
    })
}

/// The flag basis, the weights and the given maps in the flag basis.
pub fn flag(flag: &ColorFlag, maps: &[HomogeneousMap]) -> Result<Value, StructureError> {
    let mut matrices = Vec::new();
    for x in maps {
        matrices.push(json!({
            "degree": degree(x.degree()),
            "matrix": matrix(&flag.matrix_of(x)?),
        }));
    }
    Ok(json!({
        "basis": flag.ordered_basis.iter().map(vector).collect::<Vec<_>>(),
        "weights": flag
            .weights
            .iter()
            .map(|w| w.values.iter().map(fmt_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "matrices": matrices,
    }))
}

pub fn chain(chain: &IdealChain) -> Value {
    json!({
        "dims": chain.chain.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "basis": chain.ordered_basis.iter().map(map).collect::<Vec<_>>(),
    })
}

pub fn z3(r: &Z3Report) -> Value {
    json!({
        "degree": degree(&r.degree),
        "matrix": matrix(&r.matrix),
        "derived_zero": r.derived_zero,
        "solvable": r.solvable,
        "derived_nil": r.derived_nil,
        "a_cubed_is_identity": r.a_cubed_is_identity,
        "char_poly": r.char_poly.to_string(),
        "rational_roots": r.rational_roots.iter().map(|(x, m)| json!([fmt_rational(x), m])).collect::<Vec<_>>(),
        "eigenvector": vector(&r.eigenvector),
        "eigenvector_homogeneous": r.eigenvector_homogeneous,
        "flag": "fails",
        "flag_error": error(&r.flag_error),
        "unchecked_flag_error": error(&r.unchecked_flag_error),
        "orderings": r.orderings.iter().map(|o| json!({
            "order": o.order.iter().map(|i| format!("e{i}")).collect::<Vec<_>>(),
            "matrix": matrix(&o.matrix),
            "upper_triangular": o.upper_triangular,
        })).collect::<Vec<_>>(),
        "exhaustive_orderings_checked": r.orderings.len(),
        "triangularizable": r.triangularizable,
    })
}

/// Stable short name of an error's root cause.
pub fn error_kind(e: &StructureError) -> &'static str {
    match e.root_cause() {
        StructureError::HypothesisFailed(_) => "HypothesisFailed",
        StructureError::TorsionGrading(_) => "TorsionGrading",
        StructureError::IrrationalEigenvalue { .. } => "IrrationalEigenvalue",
        StructureError::NoHomogeneousEigenvector => "NoHomogeneousEigenvector",
        StructureError::NoAnnihilatedVector => "NoAnnihilatedVector",
        StructureError::WeightNotInvariant => "WeightNotInvariant",
        StructureError::TheoremViolation(_) => "TheoremViolation",
        StructureError::EmptySpace => "EmptySpace",
        StructureError::NotSolvable => "NotSolvable",
        StructureError::ZeroAlgebra => "ZeroAlgebra",
        StructureError::Algebra(_) => "AlgebraError",
        StructureError::Graded(_) => "GradedError",
        StructureError::Linalg(_) => "LinalgError",
        StructureError::AtDepth { .. } => unreachable!("root cause has no depth"),
    }
}

pub fn error(e: &StructureError) -> Value {
    let mut out = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let StructureError::AtDepth { depth, .. } = e {
        out["depth"] = json!(depth);
    }
    if let StructureError::IrrationalEigenvalue { degree: g, poly } = e.root_cause() {
        out["degree"] = degree(g);
        out["polynomial"] = json!(poly.to_string());
    }
    out
}
