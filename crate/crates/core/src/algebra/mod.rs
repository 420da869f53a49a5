//! Linear Lie color algebras: bracket-closed graded spans of homogeneous maps.
//!
//! The color bracket of homogeneous `a`, `b` is `ab - r(|b|, |a|) ba`. An
//! algebra is stored as a basis of homogeneous maps together with an exact
//! per-degree echelon form, so every subspace computed here is graded by
//! construction.

mod adjoint;
mod span;

pub use adjoint::{AdExpansion, AdNilpotencyCheck};

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::graded::{same_space, GradedError, GradedSpace, HomogeneousMap};
use crate::grading::{Bicharacter, GradingError, GroupElement};
use crate::linalg::Matrix;

use span::GradedSpan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live on different graded spaces")]
    SpaceMismatch,
    #[error("bicharacter and space are graded by different groups")]
    GroupMismatch,
    #[error("algebra has not been verified to be closed under the bracket")]
    NotClosed,
    #[error("element is not in the algebra")]
    NotInAlgebra,
    #[error("subspaces belong to different algebras")]
    ParentMismatch,
    #[error("bracket closure exceeded {0} dimensions")]
    ClosureDiverged(usize),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

/// `[a, b] = a b - r(|b|, |a|) b a`.
pub fn color_bracket(
    r: &Bicharacter,
    a: &HomogeneousMap,
    b: &HomogeneousMap,
) -> Result<HomogeneousMap, AlgebraError> {
    if !same_space(a.space(), b.space()) {
        return Err(AlgebraError::SpaceMismatch);
    }
    if r.group() != a.space().group() {
        return Err(AlgebraError::GroupMismatch);
    }
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    let twist = r.eval_unchecked(b.degree(), a.degree());
    Ok(ab.sub(&ba.scale(&twist))?)
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A linear Lie color algebra: a span of homogeneous maps on `V`.
#[derive(Debug, Clone)]
pub struct ColorAlgebra {
    id: u64,
    r: Bicharacter,
    span: GradedSpan,
    closed: bool,
    adjoint_space: Arc<GradedSpace>,
}

impl ColorAlgebra {
    /// Span of `elements` without closure verification. Dependent elements
    /// are dropped.
    pub fn span(
        space: &Arc<GradedSpace>,
        r: &Bicharacter,
        elements: impl IntoIterator<Item = HomogeneousMap>,
    ) -> Result<Self, AlgebraError> {
        if r.group() != space.group() {
            return Err(AlgebraError::GroupMismatch);
        }
        let mut span = GradedSpan::new(space);
        for e in elements {
            if !same_space(space, e.space()) {
                return Err(AlgebraError::SpaceMismatch);
            }
            span.insert(e);
        }
        Ok(Self::from_span(r.clone(), span, false))
    }

    fn from_span(r: Bicharacter, span: GradedSpan, closed: bool) -> Self {
        let adjoint_space = GradedSpace::new(r.group().clone(), span.component_dims())
            .expect("degrees come from the group");
        Self {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            r,
            span,
            closed,
            adjoint_space,
        }
    }

    /// Smallest bracket-closed span containing `generators`.
    pub fn bracket_closure(
        space: &Arc<GradedSpace>,
        r: &Bicharacter,
        generators: impl IntoIterator<Item = HomogeneousMap>,
    ) -> Result<Self, AlgebraError> {
        let mut algebra = Self::span(space, r, generators)?;
        let cap = space.total_dim() * space.total_dim();
        let mut k = 0;
        while k < algebra.span.len() {
            for i in 0..=k {
                let b = color_bracket(r, &algebra.span.basis()[i], &algebra.span.basis()[k])?;
                if !b.is_zero() {
                    algebra.span.insert(b);
                }
            }
            if algebra.span.len() > cap {
                return Err(AlgebraError::ClosureDiverged(cap));
            }
            k += 1;
        }
        Ok(Self::from_span(r.clone(), algebra.span, true))
    }

    /// Checks that the bracket of any two basis elements stays in the span.
    pub fn verify_closed(mut self) -> Result<Self, AlgebraError> {
        let basis = self.span.basis();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                if !self.span.contains(&color_bracket(&self.r, a, b)?) {
                    return Err(AlgebraError::NotClosed);
                }
            }
        }
        self.closed = true;
        Ok(self)
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub(crate) fn require_closed(&self) -> Result<(), AlgebraError> {
        if self.closed {
            Ok(())
        } else {
            Err(AlgebraError::NotClosed)
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.span.space()
    }

    pub fn bicharacter(&self) -> &Bicharacter {
        &self.r
    }

    pub fn basis(&self) -> &[HomogeneousMap] {
        self.span.basis()
    }

    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// `(degree, dim L_degree)` for every nonzero component.
    pub fn component_dims(&self) -> Vec<(GroupElement, usize)> {
        self.span.component_dims()
    }

    /// Basis elements of degree `g`.
    pub fn component(&self, g: &GroupElement) -> Vec<&HomogeneousMap> {
        self.span
            .members(g)
            .iter()
            .map(|&i| &self.span.basis()[i])
            .collect()
    }

    /// The graded space `{L_g}` that `L` itself defines; home of the
    /// adjoint representation.
    pub fn adjoint_space(&self) -> &Arc<GradedSpace> {
        &self.adjoint_space
    }

    pub fn bracket(
        &self,
        a: &HomogeneousMap,
        b: &HomogeneousMap,
    ) -> Result<HomogeneousMap, AlgebraError> {
        color_bracket(&self.r, a, b)
    }

    pub fn contains(&self, x: &HomogeneousMap) -> bool {
        same_space(self.space(), x.space()) && self.span.contains(x)
    }

    /// Coordinates of a homogeneous element in the basis of `L`.
    pub fn coordinates(&self, x: &HomogeneousMap) -> Result<Vec<BigRational>, AlgebraError> {
        if !same_space(self.space(), x.space()) {
            return Err(AlgebraError::SpaceMismatch);
        }
        self.span.coordinates(x).ok_or(AlgebraError::NotInAlgebra)
    }

    pub(crate) fn local_coordinates(
        &self,
        x: &HomogeneousMap,
    ) -> Result<Vec<BigRational>, AlgebraError> {
        if !same_space(self.space(), x.space()) {
            return Err(AlgebraError::SpaceMismatch);
        }
        self.span.local_coordinates(x).ok_or(AlgebraError::NotInAlgebra)
    }

    /// The element of degree `g` with the given coordinates in `L_g`.
    pub fn combine_component(&self, g: &GroupElement, coords: &[BigRational]) -> HomogeneousMap {
        self.span.combine_local(g, coords)
    }

    pub fn whole(&self) -> Subspace {
        Subspace {
            parent: self.id,
            span: self.span.clone(),
        }
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace {
            parent: self.id,
            span: GradedSpan::new(self.space()),
        }
    }

    /// Graded subspace spanned by homogeneous elements of `L`.
    pub fn subspace(
        &self,
        elements: impl IntoIterator<Item = HomogeneousMap>,
    ) -> Result<Subspace, AlgebraError> {
        let mut s = self.zero_subspace();
        for e in elements {
            if !self.contains(&e) {
                return Err(AlgebraError::NotInAlgebra);
            }
            s.span.insert(e);
        }
        Ok(s)
    }

    fn check_parent(&self, s: &Subspace) -> Result<(), AlgebraError> {
        if s.parent == self.id {
            Ok(())
        } else {
            Err(AlgebraError::ParentMismatch)
        }
    }

    /// Graded span of `[s, t]` over homogeneous bases of `S` and `T`.
    pub fn bracket_subspaces(&self, s: &Subspace, t: &Subspace) -> Result<Subspace, AlgebraError> {
        self.check_parent(s)?;
        self.check_parent(t)?;
        let mut out = self.zero_subspace();
        for a in s.elements() {
            for b in t.elements() {
                let c = self.bracket(a, b)?;
                if !c.is_zero() {
                    out.span.insert(c);
                }
            }
        }
        Ok(out)
    }

    /// `L, [L,L], [[L,L],[L,L]], ...` until the terms stop shrinking.
    pub fn derived_series(&self) -> Result<Vec<Subspace>, AlgebraError> {
        self.require_closed()?;
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            let next = self.bracket_subspaces(last, last)?;
            if next.dim() == last.dim() {
                break;
            }
            series.push(next);
        }
        Ok(series)
    }

    /// `L, [L,L], [L,[L,L]], ...` until the terms stop shrinking.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>, AlgebraError> {
        self.require_closed()?;
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            let next = self.bracket_subspaces(&whole, last)?;
            if next.dim() == last.dim() {
                break;
            }
            series.push(next);
        }
        Ok(series)
    }

    pub fn derived_algebra(&self) -> Result<Subspace, AlgebraError> {
        let whole = self.whole();
        self.bracket_subspaces(&whole, &whole)
    }

    pub fn is_solvable(&self) -> Result<bool, AlgebraError> {
        Ok(self.derived_series()?.last().unwrap().dim() == 0)
    }

    pub fn is_nilpotent(&self) -> Result<bool, AlgebraError> {
        Ok(self.lower_central_series()?.last().unwrap().dim() == 0)
    }

    /// `Z(L)`, computed degree by degree: for each `g`, the `x in L_g` with
    /// `[x, b] = 0` for every basis element `b`.
    pub fn center(&self) -> Result<Subspace, AlgebraError> {
        self.require_closed()?;
        let mut out = self.zero_subspace();
        for (g, _) in self.component_dims() {
            let members = self.component(&g);
            let columns: Vec<Vec<BigRational>> = members
                .iter()
                .map(|x| {
                    let mut col = Vec::new();
                    for b in self.basis() {
                        col.extend(self.bracket(x, b).map(|c| c.coefficients())?);
                    }
                    Ok(col)
                })
                .collect::<Result<_, AlgebraError>>()?;
            let rows = columns.first().map_or(0, Vec::len);
            let system = Matrix::from_columns(rows, &columns);
            for coords in system.kernel_basis() {
                out.span.insert(self.combine_component(&g, &coords));
            }
        }
        Ok(out)
    }

    /// True iff `[L, S]` is contained in `S`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool, AlgebraError> {
        self.check_parent(s)?;
        for x in self.basis() {
            for y in s.elements() {
                if !s.span.contains(&self.bracket(x, y)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Treats a color ideal (or any bracket-closed subspace) as an algebra.
    pub fn subalgebra(&self, s: &Subspace) -> Result<Self, AlgebraError> {
        self.check_parent(s)?;
        Self::from_span(self.r.clone(), s.span.clone(), false).verify_closed()
    }
}

/// A graded subspace of a [`ColorAlgebra`].
#[derive(Debug, Clone)]
pub struct Subspace {
    parent: u64,
    span: GradedSpan,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Homogeneous basis, in insertion order.
    pub fn elements(&self) -> &[HomogeneousMap] {
        self.span.basis()
    }

    pub fn component_dims(&self) -> Vec<(GroupElement, usize)> {
        self.span.component_dims()
    }

    pub fn contains(&self, x: &HomogeneousMap) -> bool {
        same_space(self.span.space(), x.space()) && self.span.contains(x)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.elements().iter().all(|x| other.contains(x))
    }
}
