//! Constructive structure theory: annihilated vectors, Engel's theorem,
//! common homogeneous eigenvectors, color flags and ideal chains.
//!
//! Every algorithm first checks the hypotheses of the theorem it implements
//! (unless [`Options::check_hypotheses`] is off). When the hypotheses were
//! checked, a failure of the construction is reported as
//! [`StructureError::TheoremViolation`]; when they were skipped, the same
//! failure is reported as a plain diagnostic.

mod flag;
mod z3;


pub use flag::{color_flag, ideal_chain, ColorFlag, GradedQuotient, IdealChain};
pub use z3::{z3_counterexample, OrderingCheck, Z3Report};

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, ColorAlgebra, Subspace};
use crate::graded::{
    graded_kernel, homogeneous_eigenvalues, GradedError, GradedSpace, GradedVector, HomogeneousMap,
};
use crate::grading::{GroupElement, GroupSpec};
use crate::linalg::{nil_subspace_check, LinalgError, Matrix, NilPolicy, Poly};

/// A hypothesis of one of the theorems that failed to hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    Solvable,
    /// The degree-`g` component of `L` contains a non-nilpotent element.
    ComponentNil(GroupElement),
    /// The degree-`g` component of `[L, L]` contains a non-nilpotent element.
    DerivedNil(GroupElement),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Solvable => write!(f, "L is not solvable"),
            Hypothesis::ComponentNil(g) => {
                write!(f, "component L_{g} contains a non-nilpotent element")
            }
            Hypothesis::DerivedNil(g) => {
                write!(f, "component [L,L]_{g} contains a non-nilpotent element")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(Hypothesis),
    #[error("grading group {0} has torsion; homogeneous triangularization can fail")]
    TorsionGrading(GroupSpec),
    #[error("no rational eigenvalue in degree {degree}: characteristic polynomial {poly}")]
    IrrationalEigenvalue { degree: GroupElement, poly: Poly },
    #[error("no common homogeneous eigenvector")]
    NoHomogeneousEigenvector,
    #[error("no nonzero homogeneous vector is annihilated by L")]
    NoAnnihilatedVector,
    #[error("the weight does not vanish on [L, K]; L does not stabilize the weight space")]
    WeightNotInvariant,
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error("the graded space is zero")]
    EmptySpace,
    #[error("L is not solvable: [L, L] = L")]
    NotSolvable,
    #[error("L is zero")]
    ZeroAlgebra,
    #[error("at flag step {depth}: {source}")]
    AtDepth {
        depth: usize,
        source: Box<StructureError>,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl StructureError {
    /// The error with depth annotations removed.
    pub fn root_cause(&self) -> &StructureError {
        match self {
            StructureError::AtDepth { source, .. } => source.root_cause(),
            e => e,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub check_hypotheses: bool,
    pub policy: NilPolicy,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            check_hypotheses: true,
            policy: NilPolicy::default(),
        }
    }
}

impl Options {
    pub fn unchecked() -> Self {
        Self {
            check_hypotheses: false,
            ..Self::default()
        }
    }
}

/// A linear functional on `L`, stored by its values on the basis of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    pub values: Vec<BigRational>,
}

impl Weight {
    /// `lambda(x)` for any homogeneous `x` in `L`.
    pub fn eval(&self, l: &ColorAlgebra, x: &HomogeneousMap) -> Result<BigRational, AlgebraError> {
        let coords = l.coordinates(x)?;
        Ok(dot(&coords, &self.values))
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Failure of a construction that the theorem guarantees.
fn violation(strict: bool, diagnostic: StructureError, what: &str) -> StructureError {
    if strict {
        StructureError::TheoremViolation(what.to_string())
    } else {
        diagnostic
    }
}

/// True iff every degree component of the span of `elements` is nil.
/// Returns the first failing degree otherwise.
fn first_non_nil_component(
    elements: &[HomogeneousMap],
    policy: NilPolicy,
) -> Result<Option<GroupElement>, StructureError> {
    let mut by_degree: BTreeMap<&GroupElement, Vec<Matrix>> = BTreeMap::new();
    for x in elements {
        by_degree.entry(x.degree()).or_default().push(x.flatten());
    }
    for (g, mats) in by_degree {
        if !nil_subspace_check(&mats, policy)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Hypotheses of the common eigenvector theorem and its corollaries.
fn check_solvable_hypotheses(l: &ColorAlgebra, policy: NilPolicy) -> Result<(), StructureError> {
    l.require_closed()?;
    let group = l.space().group();
    if !group.is_torsion_free() {
        return Err(StructureError::TorsionGrading(group.clone()));
    }
    if !l.is_solvable()? {
        return Err(StructureError::HypothesisFailed(Hypothesis::Solvable));
    }
    let derived = l.derived_algebra()?;
    if let Some(g) = first_non_nil_component(derived.elements(), policy)? {
        return Err(StructureError::HypothesisFailed(Hypothesis::DerivedNil(g)));
    }
    Ok(())
}

/// A nonzero homogeneous `v` with `x(v) = 0` for every `x` in `L`.
pub fn common_annihilated_vector(
    l: &ColorAlgebra,
    opts: Options,
) -> Result<GradedVector, StructureError> {
    if opts.check_hypotheses {
        l.require_closed()?;
        if let Some(g) = first_non_nil_component(l.basis(), opts.policy)? {
            return Err(StructureError::HypothesisFailed(Hypothesis::ComponentNil(g)));
        }
    }
    if l.space().is_zero() {
        return Err(StructureError::EmptySpace);
    }
    graded_kernel(l.space(), l.basis())?
        .into_iter()
        .next()
        .ok_or_else(|| {
            violation(
                opts.check_hypotheses,
                StructureError::NoAnnihilatedVector,
                "nil algebra annihilates no homogeneous vector",
            )
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngelReport {
    /// Every homogeneous element of `L` is ad-nilpotent.
    pub all_ad_nilpotent: bool,
    /// The lower central series reaches zero.
    pub nilpotent: bool,
    /// A nonzero central element, produced when `L` is nonzero and all
    /// homogeneous elements are ad-nilpotent.
    pub central_witness: Option<HomogeneousMap>,
}

pub fn engel_check(l: &ColorAlgebra, opts: Options) -> Result<EngelReport, StructureError> {
    l.require_closed()?;
    let ad = l.ad_representation()?;
    let all_ad_nilpotent = first_non_nil_component(ad.basis(), opts.policy)?.is_none();
    let nilpotent = l.is_nilpotent()?;
    if all_ad_nilpotent && !nilpotent {
        return Err(StructureError::TheoremViolation(
            "every homogeneous element is ad-nilpotent but L is not nilpotent".into(),
        ));
    }
    let central_witness = if all_ad_nilpotent && !l.is_zero() {
        let center = l.center()?;
        let z = center.elements().first().cloned().ok_or_else(|| {
            StructureError::TheoremViolation("nilpotent L has zero center".into())
        })?;
        Some(z)
    } else {
        None
    };
    Ok(EngelReport {
        all_ad_nilpotent,
        nilpotent,
        central_witness,
    })
}

/// A color ideal `K` of codimension one together with a homogeneous `z`
/// such that `L = K + F z`.
///
/// A homogeneous basis of `[L, L]` is extended degree by degree with basis
/// elements of `L`; `z` is the first extension element and `K` is spanned
/// by `[L, L]` and the remaining ones. Any subspace containing `[L, L]` is
/// an ideal, so this also covers abelian `L`.
pub fn codim_one_ideal(l: &ColorAlgebra) -> Result<(Subspace, HomogeneousMap), StructureError> {
    l.require_closed()?;
    if l.is_zero() {
        return Err(StructureError::ZeroAlgebra);
    }
    let derived = l.derived_algebra()?;
    if derived.dim() == l.dim() {
        return Err(StructureError::NotSolvable);
    }
    let mut extended = derived.clone();
    let mut complement = Vec::new();
    for x in l.basis() {
        if !extended.contains(x) {
            extended = l.subspace(extended.elements().iter().chain([x]).cloned())?;
            complement.push(x.clone());
        }
    }
    let z = complement.remove(0);
    let k = l.subspace(derived.elements().iter().chain(&complement).cloned())?;
    debug_assert_eq!(k.dim() + 1, l.dim());
    Ok((k, z))
}

/// A graded subspace of `V` given per degree by a matrix whose columns are
/// a basis of the component.
#[derive(Debug, Clone)]
pub(crate) struct WeightSpace {
    pub components: BTreeMap<GroupElement, Matrix>,
}

impl WeightSpace {
    fn whole(space: &GradedSpace) -> Self {
        Self {
            components: space
                .components()
                .map(|(g, n)| (g.clone(), Matrix::identity(n)))
                .collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// First basis vector in canonical degree order.
    fn first_vector(&self, space: &std::sync::Arc<GradedSpace>) -> Result<GradedVector, GradedError> {
        let (g, b) = self.components.iter().next().expect("nonzero weight space");
        GradedVector::homogeneous(space, g, b.column(0))
    }
}

/// Solves `B M = Y` for `M` where `B` has independent columns; `None` if
/// some column of `Y` leaves the column space of `B`.
fn solve_in_columns(b: &Matrix, y: &Matrix) -> Option<Matrix> {
    let k = b.cols();
    let mut aug = Matrix::zeros(b.rows(), k + y.cols());
    aug.set_block(0, 0, b);
    aug.set_block(0, k, y);
    let ech = aug.rref();
    if ech.pivots.len() != k || ech.pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(ech.reduced.block(0, k, k, y.cols()))
}

/// The weight of `L` on a homogeneous common eigenvector `v`, read off from
/// the action of each basis element.
fn weight_at(l_basis: &[HomogeneousMap], v: &GradedVector) -> Result<Vec<BigRational>, StructureError> {
    let g = v.homogeneous_degree().expect("nonzero homogeneous").clone();
    let coords = v.component(&g).expect("degree of v");
    let p = coords.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut values = Vec::with_capacity(l_basis.len());
    for x in l_basis {
        let xv = x.apply(v)?;
        let value = xv
            .component(&g)
            .map_or_else(BigRational::zero, |c| &c[p] / &coords[p]);
        if xv != v.scale(&value) {
            return Err(StructureError::TheoremViolation(
                "weight space vector is not a common eigenvector".into(),
            ));
        }
        values.push(value);
    }
    Ok(values)
}

/// The joint eigenspace `W = {w : x(w) = lambda(x) w for x in L}` of a weight
/// `lambda` found by the proof's recursion, with `lambda` on the basis of `L`.
///
/// `L = K + F z` with `K` an ideal of codimension one; recursing into `K`
/// gives its weight space `W_K`, which `L` stabilizes because
/// `lambda([y, x]) = 0`. Then `W` is an eigenspace of `z` inside `W_K`: the
/// kernel when `|z| != 0`, a rational eigenspace when `|z| = 0`.
pub(crate) fn weight_space(
    l: &ColorAlgebra,
    strict: bool,
) -> Result<(Vec<BigRational>, WeightSpace), StructureError> {
    let space = l.space();
    if l.is_zero() {
        return Ok((Vec::new(), WeightSpace::whole(space)));
    }
    let (k, z) = codim_one_ideal(l)?;
    let k_alg = l.subalgebra(&k)?;
    let (lambda_k, w_k) = weight_space(&k_alg, strict)?;

    for y in l.basis() {
        for x in k_alg.basis() {
            let c = k_alg.coordinates(&l.bracket(y, x)?)?;
            if !dot(&c, &lambda_k).is_zero() {
                return Err(violation(
                    strict,
                    StructureError::WeightNotInvariant,
                    "lambda([y, x]) is nonzero",
                ));
            }
        }
    }

    let mut components = BTreeMap::new();
    if z.degree().is_identity() {
        let mut blocks = Vec::new();
        for (g, b) in &w_k.components {
            let zb = z.block(g).expect("degree-zero block").mul(b)?;
            let m = solve_in_columns(b, &zb).ok_or_else(|| {
                violation(
                    strict,
                    StructureError::WeightNotInvariant,
                    "z does not stabilize the weight space",
                )
            })?;
            blocks.push((g.clone(), m));
        }
        let w_space = GradedSpace::new(
            space.group().clone(),
            w_k.components.iter().map(|(g, b)| (g.clone(), b.cols())),
        )?;
        let restricted = HomogeneousMap::new(&w_space, space.group().identity(), blocks)?;
        let report = homogeneous_eigenvalues(&restricted)?;
        let Some(pair) = report.pairs.first() else {
            let (degree, poly) = report.irrational.into_iter().next().expect("nonempty W");
            return Err(StructureError::IrrationalEigenvalue { degree, poly });
        };
        let mu = &pair.value;
        for (g, m) in restricted.blocks() {
            let shifted = m.sub(&Matrix::identity(m.rows()).scale(mu))?;
            let kernel = shifted.kernel_basis();
            if kernel.is_empty() {
                continue;
            }
            let b = &w_k.components[g];
            let coords = Matrix::from_columns(b.cols(), &kernel);
            components.insert(g.clone(), b.mul(&coords)?);
        }
    } else {
        for (g, b) in &w_k.components {
            let Some(zg) = z.block(g) else {
                components.insert(g.clone(), b.clone());
                continue;
            };
            let kernel = zg.mul(b)?.kernel_basis();
            if kernel.is_empty() {
                continue;
            }
            let coords = Matrix::from_columns(b.cols(), &kernel);
            components.insert(g.clone(), b.mul(&coords)?);
        }
    }
    let w = WeightSpace { components };
    if w.is_zero() {
        return Err(violation(
            strict,
            StructureError::NoHomogeneousEigenvector,
            "z has no homogeneous eigenvector in the weight space",
        ));
    }
    let v = w.first_vector(space)?;
    let lambda = weight_at(l.basis(), &v)?;
    Ok((lambda, w))
}

/// A homogeneous `v` with `x(v) = lambda(x) v` for every `x` in `L`.
pub fn common_homogeneous_eigenvector(
    l: &ColorAlgebra,
    opts: Options,
) -> Result<(GradedVector, Weight), StructureError> {
    if opts.check_hypotheses {
        check_solvable_hypotheses(l, opts.policy)?;
    } else {
        l.require_closed()?;
    }
    if l.space().is_zero() {
        return Err(StructureError::EmptySpace);
    }
    let (values, w) = weight_space(l, opts.check_hypotheses)?;
    let v = w.first_vector(l.space())?;
    Ok((v, Weight { values }))
}
