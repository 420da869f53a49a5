use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::grading::GroupElement;
use crate::graded::{GradedSpace, HomogeneousMap};

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    vector: Vec<BigRational>,
    /// Expresses `vector` in terms of the members of this degree.
    combo: Vec<BigRational>,
}

#[derive(Debug, Clone, Default)]
struct DegreeSpan {
    /// Global basis indices of the members of this degree, in insertion order.
    members: Vec<usize>,
    rows: Vec<EchelonRow>,
}

impl DegreeSpan {
    /// Splits `v` as `remainder + sum combo[i] * member_i`, where the
    /// remainder has zeros in every pivot column.
    fn reduce(&self, v: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = v.to_vec();
        let mut combo = vec![BigRational::zero(); self.members.len()];
        for row in &self.rows {
            let c = rem[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (r, x) in rem.iter_mut().zip(&row.vector) {
                if !x.is_zero() {
                    *r -= &c * x;
                }
            }
            for (k, x) in combo.iter_mut().zip(&row.combo) {
                if !x.is_zero() {
                    *k += &c * x;
                }
            }
        }
        (rem, combo)
    }
}

/// A graded span of homogeneous maps on one space. Each degree keeps an
/// incrementally maintained reduced echelon form of its members, so that
/// membership tests and coordinates are exact and never mix degrees.
#[derive(Debug, Clone)]
pub(crate) struct GradedSpan {
    space: Arc<GradedSpace>,
    basis: Vec<HomogeneousMap>,
    degrees: BTreeMap<GroupElement, DegreeSpan>,
}

impl GradedSpan {
    pub fn new(space: &Arc<GradedSpace>) -> Self {
        Self {
            space: Arc::clone(space),
            basis: Vec::new(),
            degrees: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn basis(&self) -> &[HomogeneousMap] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    /// Degrees carrying at least one member, with their dimensions.
    pub fn component_dims(&self) -> Vec<(GroupElement, usize)> {
        self.degrees
            .iter()
            .map(|(g, d)| (g.clone(), d.members.len()))
            .collect()
    }

    /// Global indices of the members of degree `g`.
    pub fn members(&self, g: &GroupElement) -> &[usize] {
        self.degrees.get(g).map_or(&[], |d| d.members.as_slice())
    }

    /// Adds `map` if it is not already in the span; returns its new index.
    pub fn insert(&mut self, map: HomogeneousMap) -> Option<usize> {
        let v = map.coefficients();
        let (rem, combo) = match self.degrees.get(map.degree()) {
            Some(entry) => entry.reduce(&v),
            None => (v, Vec::new()),
        };
        let pivot = rem.iter().position(|x| !x.is_zero())?;
        let entry = self.degrees.entry(map.degree().clone()).or_default();
        let inv = rem[pivot].recip();
        let local = entry.members.len();
        let mut row_combo: Vec<BigRational> = combo.iter().map(|c| -c * &inv).collect();
        row_combo.push(inv.clone());
        let row = EchelonRow {
            pivot,
            vector: rem.iter().map(|x| x * &inv).collect(),
            combo: row_combo,
        };
        for other in &mut entry.rows {
            other.combo.push(BigRational::zero());
            let c = other.vector[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (o, x) in other.vector.iter_mut().zip(&row.vector) {
                if !x.is_zero() {
                    *o -= &c * x;
                }
            }
            for (o, x) in other.combo.iter_mut().zip(&row.combo) {
                if !x.is_zero() {
                    *o -= &c * x;
                }
            }
        }
        entry.rows.push(row);
        let index = self.basis.len();
        entry.members.push(index);
        debug_assert_eq!(entry.members.len(), local + 1);
        self.basis.push(map);
        Some(index)
    }

    /// Coordinates of `map` relative to the members of its degree.
    pub fn local_coordinates(&self, map: &HomogeneousMap) -> Option<Vec<BigRational>> {
        if map.is_zero() {
            return Some(vec![BigRational::zero(); self.members(map.degree()).len()]);
        }
        let entry = self.degrees.get(map.degree())?;
        let (rem, combo) = entry.reduce(&map.coefficients());
        rem.iter().all(Zero::is_zero).then_some(combo)
    }

    /// Coordinates of `map` relative to the whole basis.
    pub fn coordinates(&self, map: &HomogeneousMap) -> Option<Vec<BigRational>> {
        let local = self.local_coordinates(map)?;
        let mut out = vec![BigRational::zero(); self.basis.len()];
        for (&i, c) in self.members(map.degree()).iter().zip(local) {
            out[i] = c;
        }
        Some(out)
    }

    pub fn contains(&self, map: &HomogeneousMap) -> bool {
        self.local_coordinates(map).is_some()
    }

    /// `sum coords[i] * basis[i]` restricted to members of degree `g`.
    pub fn combine_local(&self, g: &GroupElement, coords: &[BigRational]) -> HomogeneousMap {
        let mut acc = HomogeneousMap::zero(&self.space, g.clone()).expect("degree of the space");
        for (&i, c) in self.members(g).iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            let term = if c.is_one() {
                self.basis[i].clone()
            } else {
                self.basis[i].scale(c)
            };
            acc = acc.add(&term).expect("same degree");
        }
        acc
    }
}
