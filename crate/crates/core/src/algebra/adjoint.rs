//! The adjoint representation `ad x: y -> [x, y]` and its powers.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, ColorAlgebra};
use crate::graded::{same_space, HomogeneousMap};
use crate::grading::GroupElement;

/// `(ad X)^m (Y) = sum_{i+j=m} k_ij X^i Y X^j` for `X`, `Y` of fixed degrees.
///
/// The coefficients depend on the degree of `Y` through the bicharacter, so
/// an expansion is only valid for the `y_degree` it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdExpansion {
    pub x_degree: GroupElement,
    pub y_degree: GroupElement,
    pub power: usize,
    /// `(i, j, k_ij)` with `i + j = power`, ordered by decreasing `i`;
    /// vanishing coefficients are omitted.
    pub terms: Vec<(usize, usize, BigRational)>,
}

impl AdExpansion {
    /// `sum k_ij X^i Y X^j`.
    pub fn evaluate(
        &self,
        x: &HomogeneousMap,
        y: &HomogeneousMap,
    ) -> Result<HomogeneousMap, AlgebraError> {
        if !same_space(x.space(), y.space()) {
            return Err(AlgebraError::SpaceMismatch);
        }
        let space = x.space();
        let degree = space
            .group()
            .add(y.degree(), &space.group().multiple(x.degree(), self.power as i64))?;
        let mut acc = HomogeneousMap::zero(space, degree)?;
        for (i, j, k) in &self.terms {
            let term = x.pow(*i)?.compose(y)?.compose(&x.pow(*j)?)?;
            acc = acc.add(&term.scale(k))?;
        }
        Ok(acc)
    }
}

/// Outcome of checking that a nilpotent element is ad-nilpotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdNilpotencyCheck {
    /// Whether `X` itself is nilpotent; when false the check is vacuous.
    pub hypothesis_met: bool,
    /// `(ad X)^exponent = 0` on `L` (always true when the hypothesis fails).
    pub verified: bool,
    /// `2 dim V`: every term `X^i Y X^j` with `i + j = 2 dim V` has
    /// `i >= dim V` or `j >= dim V` and so vanishes.
    pub exponent: usize,
}

impl ColorAlgebra {
    fn require_member(&self, x: &HomogeneousMap) -> Result<(), AlgebraError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(AlgebraError::NotInAlgebra)
        }
    }

    /// `ad x` as a homogeneous map of degree `|x|` on the adjoint space
    /// `{L_g}`, in the basis of `L`.
    pub fn ad_map(&self, x: &HomogeneousMap) -> Result<HomogeneousMap, AlgebraError> {
        self.require_member(x)?;
        let adj = self.adjoint_space();
        let mut blocks = Vec::new();
        for (h, _) in self.component_dims() {
            let target = adj.add_degrees(&h, x.degree());
            let images: Vec<HomogeneousMap> = self
                .component(&h)
                .into_iter()
                .map(|b| self.bracket(x, b))
                .collect::<Result<_, _>>()?;
            if !adj.contains_degree(&target) {
                if images.iter().any(|m| !m.is_zero()) {
                    return Err(AlgebraError::NotClosed);
                }
                continue;
            }
            let columns: Vec<Vec<BigRational>> = images
                .iter()
                .map(|m| {
                    self.local_coordinates(m)
                        .map_err(|_| AlgebraError::NotClosed)
                })
                .collect::<Result<_, _>>()?;
            let block = crate::linalg::Matrix::from_columns(adj.dim(&target), &columns);
            blocks.push((h, block));
        }
        Ok(HomogeneousMap::new(adj, x.degree().clone(), blocks)?)
    }

    /// `ad L` as a color algebra acting on `{L_g}`.
    pub fn ad_representation(&self) -> Result<ColorAlgebra, AlgebraError> {
        self.require_closed()?;
        let images: Vec<HomogeneousMap> = self
            .basis()
            .iter()
            .map(|b| self.ad_map(b))
            .collect::<Result<_, _>>()?;
        ColorAlgebra::bracket_closure(self.adjoint_space(), self.bicharacter(), images)
    }

    /// Coefficients `k_ij` of `(ad X)^m (Y)` for `Y` of degree `y_degree`,
    /// from the recursion `(ad X)^m (Y) = [X, (ad X)^(m-1) (Y)]`.
    pub fn ad_power_expand(
        &self,
        x: &HomogeneousMap,
        y_degree: &GroupElement,
        power: usize,
    ) -> Result<AdExpansion, AlgebraError> {
        self.require_member(x)?;
        let group = self.space().group();
        if !group.contains(y_degree) {
            return Err(AlgebraError::GroupMismatch);
        }
        let r = self.bicharacter();
        let u = x.degree();
        // [X, T] = X T - r(|T|, |X|) T X with |T| = |Y| + (i + j)|X|.
        let base = r.eval_unchecked(y_degree, u);
        let self_twist = r.eval_unchecked(u, u);
        let mut terms: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        terms.insert((0, 0), BigRational::one());
        for step in 0..power {
            let twist = &base * crate::grading::rational_pow(&self_twist, step as i64);
            let mut next: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
            for ((i, j), k) in terms {
                *next.entry((i + 1, j)).or_insert_with(BigRational::zero) += &k;
                *next.entry((i, j + 1)).or_insert_with(BigRational::zero) -= &twist * &k;
            }
            next.retain(|_, k| !k.is_zero());
            terms = next;
        }
        Ok(AdExpansion {
            x_degree: u.clone(),
            y_degree: y_degree.clone(),
            power,
            terms: terms
                .into_iter()
                .rev()
                .map(|((i, j), k)| (i, j, k))
                .collect(),
        })
    }

    /// If `x` is nilpotent, verifies that `ad x` is nilpotent on `L`.
    pub fn ad_nilpotency_check(&self, x: &HomogeneousMap) -> Result<AdNilpotencyCheck, AlgebraError> {
        self.require_member(x)?;
        let exponent = 2 * self.space().total_dim();
        let hypothesis_met = x
            .flatten()
            .is_nilpotent()
            .map_err(crate::graded::GradedError::from)?;
        if !hypothesis_met {
            return Ok(AdNilpotencyCheck {
                hypothesis_met,
                verified: true,
                exponent,
            });
        }
        let ad = self.ad_map(x)?.flatten();
        let verified = ad
            .pow(exponent as u64)
            .map_err(crate::graded::GradedError::from)?
            .is_zero();
        Ok(AdNilpotencyCheck {
            hypothesis_met,
            verified,
            exponent,
        })
    }
}
