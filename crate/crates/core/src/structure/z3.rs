//! The `Z_3`-graded algebra `L = F A` that is solvable with nil `[L, L]` but
//! admits no homogeneous basis making `A` upper triangular.

use std::sync::Arc;

use num_rational::BigRational;

use super::{color_flag, Options, StructureError};
use crate::algebra::ColorAlgebra;
use crate::graded::{GradedSpace, GradedVector, HomogeneousMap};
use crate::grading::{Bicharacter, GroupElement, GroupSpec};
use crate::linalg::{Matrix, Poly};

/// `A` written in one ordering of the homogeneous basis `e1, e2, e3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingCheck {
    /// Indices (1-based, as in `e1, e2, e3`) of the basis in this order.
    pub order: [usize; 3],
    pub matrix: Matrix,
    pub upper_triangular: bool,
}

#[derive(Debug, Clone)]
pub struct Z3Report {
    pub space: Arc<GradedSpace>,
    pub a: HomogeneousMap,
    /// `A` in the basis `e1, e2, e3`.
    pub matrix: Matrix,
    pub degree: GroupElement,
    pub derived_zero: bool,
    pub solvable: bool,
    /// Every homogeneous element of `[L, L]` is nilpotent (vacuous here).
    pub derived_nil: bool,
    pub a_cubed_is_identity: bool,
    pub char_poly: Poly,
    pub rational_roots: Vec<(BigRational, usize)>,
    /// Eigenvector for the eigenvalue 1; it has a component in every degree.
    pub eigenvector: GradedVector,
    pub eigenvector_homogeneous: bool,
    /// `color_flag` with hypothesis checks.
    pub flag_error: StructureError,
    /// `color_flag` with hypothesis checks disabled.
    pub unchecked_flag_error: StructureError,
    pub orderings: Vec<OrderingCheck>,
    pub triangularizable: bool,
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [1, 2, 3],
    [1, 3, 2],
    [2, 1, 3],
    [2, 3, 1],
    [3, 1, 2],
    [3, 2, 1],
];

fn fail(what: &str) -> StructureError {
    StructureError::TheoremViolation(what.to_string())
}

/// Builds the example, checks each of its claimed properties and
/// enumerates every homogeneous basis.
///
/// Each `V_i` is one-dimensional, so a homogeneous basis is an ordering of
/// nonzero multiples of `e1, e2, e3`. Rescaling by an invertible diagonal
/// matrix does not move zero entries, so the six orderings decide
/// triangularizability.
pub fn z3_counterexample() -> Result<Z3Report, StructureError> {
    let group = GroupSpec::new(0, vec![3]).expect("Z_3");
    let e = |i: i64| group.element(&[i]).expect("rank one");
    let space = GradedSpace::new(group.clone(), [(e(1), 1), (e(2), 1), (e(0), 1)])?;
    let one = || Matrix::from_i64(&[&[1]]);
    // A e1 = e3, A e2 = e1, A e3 = e2.
    let a = HomogeneousMap::new(&space, e(2), [(e(1), one()), (e(2), one()), (e(0), one())])?;
    let r = Bicharacter::trivial(group.clone());
    let l = ColorAlgebra::bracket_closure(&space, &r, [a.clone()])?;
    if l.dim() != 1 {
        return Err(fail("L = F A is not one-dimensional"));
    }

    // Flattened order is e3, e1, e2; reorder to e1, e2, e3.
    let flat = a.flatten();
    let to_e123 = [1usize, 2, 0];
    let mut matrix = Matrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            matrix[(i, j)] = flat[(to_e123[i], to_e123[j])].clone();
        }
    }
    if matrix != Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]) {
        return Err(fail("A does not match e1 -> e3, e2 -> e1, e3 -> e2"));
    }

    let derived = l.derived_algebra()?;
    let derived_zero = derived.is_zero();
    let solvable = l.is_solvable()?;
    let derived_nil = derived
        .elements()
        .iter()
        .map(|x| x.flatten().is_nilpotent())
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|b| b);
    if !(derived_zero && solvable && derived_nil) {
        return Err(fail("L should be abelian, solvable, with nil derived algebra"));
    }
    let a_cubed_is_identity = matrix.pow(3)? == Matrix::identity(3);
    let char_poly = matrix.char_poly()?;
    let rational_roots = char_poly.rational_roots()?;
    let eigen_flat = flat.sub(&Matrix::identity(3))?.kernel_basis();
    let eigenvector = GradedVector::from_flat(&space, &eigen_flat[0])?;
    let eigenvector_homogeneous = eigenvector.is_homogeneous();

    let flag_error = match color_flag(&l, Options::default()) {
        Ok(_) => return Err(fail("color_flag succeeded on the torsion example")),
        Err(e) => e,
    };
    let unchecked_flag_error = match color_flag(&l, Options::unchecked()) {
        Ok(_) => return Err(fail("unchecked color_flag succeeded on the torsion example")),
        Err(e) => e,
    };

    let orderings: Vec<OrderingCheck> = PERMUTATIONS
        .iter()
        .map(|&order| {
            let mut m = Matrix::zeros(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    m[(i, j)] = matrix[(order[i] - 1, order[j] - 1)].clone();
                }
            }
            let upper_triangular = m.is_upper_triangular();
            OrderingCheck {
                order,
                matrix: m,
                upper_triangular,
            }
        })
        .collect();
    let triangularizable = orderings.iter().any(|o| o.upper_triangular);
    if triangularizable {
        return Err(fail("some homogeneous ordering makes A upper triangular"));
    }

    Ok(Z3Report {
        space,
        degree: a.degree().clone(),
        a,
        matrix,
        derived_zero,
        solvable,
        derived_nil,
        a_cubed_is_identity,
        char_poly,
        rational_roots,
        eigenvector,
        eigenvector_homogeneous,
        flag_error,
        unchecked_flag_error,
        orderings,
        triangularizable,
    })
}
