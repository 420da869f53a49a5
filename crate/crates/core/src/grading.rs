//! Finitely generated abelian grading groups and skew-symmetric bicharacters.
//!
//! A grading group is presented in invariant-factor form
//! `Z^r x Z_{m1} x ... x Z_{mk}`. Elements carry their free coordinates and
//! torsion residues; torsion residues are always kept reduced so that two
//! equal elements have identical representations.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("torsion modulus {0} is smaller than 2")]
    ModulusTooSmall(i64),
    #[error("element has {got} coordinates, group expects {expected}")]
    GroupMismatch { expected: usize, got: usize },
    #[error("bicharacter matrix must be {expected}x{expected}")]
    DimensionMismatch { expected: usize },
    #[error("bicharacter entry ({0}, {1}) is zero")]
    ZeroEntry(usize, usize),
    #[error("bicharacter is not skew symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("bicharacter diagonal entry {0} is not 1 or -1")]
    BadDiagonal(usize),
    #[error("bicharacter entry ({row}, {col}) is not an m-th root of unity for torsion modulus {modulus}")]
    TorsionIncompatible { row: usize, col: usize, modulus: i64 },
}

/// The group `Z^free_rank x Z_{m1} x ... x Z_{mk}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    free_rank: usize,
    torsion_moduli: Vec<i64>,
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion_moduli: Vec<i64>) -> Result<Self, GradingError> {
        if let Some(&m) = torsion_moduli.iter().find(|&&m| m < 2) {
            return Err(GradingError::ModulusTooSmall(m));
        }
        Ok(Self {
            free_rank,
            torsion_moduli,
        })
    }

    /// The trivial group, used for ungraded algebras.
    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            torsion_moduli: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_moduli(&self) -> &[i64] {
        &self.torsion_moduli
    }

    /// Number of generators, free ones first.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion_moduli.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_moduli.is_empty()
    }

    /// Builds an element from `[free..., torsion...]` coordinates, reducing
    /// the torsion part.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GradingError> {
        if coords.len() != self.rank() {
            return Err(GradingError::GroupMismatch {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        let (free, torsion) = coords.split_at(self.free_rank);
        let torsion = torsion
            .iter()
            .zip(&self.torsion_moduli)
            .map(|(&t, &m)| t.rem_euclid(m))
            .collect();
        Ok(GroupElement {
            free: free.to_vec(),
            torsion,
        })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion_moduli.len()],
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.free.len() == self.free_rank
            && g.torsion.len() == self.torsion_moduli.len()
            && g
                .torsion
                .iter()
                .zip(&self.torsion_moduli)
                .all(|(&t, &m)| (0..m).contains(&t))
    }

    fn check(&self, g: &GroupElement) -> Result<(), GradingError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GradingError::GroupMismatch {
                expected: self.rank(),
                got: g.free.len() + g.torsion.len(),
            })
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GradingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion_moduli)
                .map(|((x, y), m)| (x + y).rem_euclid(*m))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GradingError> {
        self.check(a)?;
        Ok(GroupElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion_moduli)
                .map(|(x, m)| (-x).rem_euclid(*m))
                .collect(),
        })
    }

    /// `n * a`.
    pub fn multiple(&self, a: &GroupElement, n: i64) -> GroupElement {
        GroupElement {
            free: a.free.iter().map(|x| x * n).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion_moduli)
                .map(|(x, m)| (x * n).rem_euclid(*m))
                .collect(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion_moduli.iter().map(|m| format!("Z_{m}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// An element of a [`GroupSpec`]. Ordering is lexicographic on the free part,
/// then on the torsion part; this is the canonical order of graded components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    free: Vec<i64>,
    torsion: Vec<i64>,
}

impl GroupElement {
    pub fn free_part(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[i64] {
        &self.torsion
    }

    /// `[free..., torsion...]`, the form used in problem files.
    pub fn coords(&self) -> Vec<i64> {
        self.free.iter().chain(&self.torsion).copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&x| x == 0)
    }

    /// True iff the free part is nonzero. Multiples of such an element never
    /// repeat, which is what forces nonzero-degree maps to be nilpotent.
    pub fn has_infinite_order(&self) -> bool {
        self.free.iter().any(|&x| x != 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.coords();
        match coords.len() {
            0 => return write!(f, "0"),
            1 => return write!(f, "{}", coords[0]),
            _ => {}
        }
        write!(f, "(")?;
        for (i, c) in coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A skew-symmetric bicharacter `r: G x G -> Q*`, given by its values on
/// pairs of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    group: GroupSpec,
    values: Vec<Vec<BigRational>>,
}

impl Bicharacter {
    pub fn new(group: GroupSpec, values: Vec<Vec<BigRational>>) -> Result<Self, GradingError> {
        let n = group.rank();
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(GradingError::DimensionMismatch { expected: n });
        }
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(GradingError::ZeroEntry(i, j));
                }
            }
        }
        for (i, row) in values.iter().enumerate() {
            if !row[i].abs().is_one() {
                return Err(GradingError::BadDiagonal(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if !(&values[i][j] * &values[j][i]).is_one() {
                    return Err(GradingError::NotSkewSymmetric(i, j));
                }
            }
        }
        for (t, &m) in group.torsion_moduli.iter().enumerate() {
            let i = group.free_rank + t;
            for j in 0..n {
                for (row, col) in [(i, j), (j, i)] {
                    if !rational_pow(&values[row][col], m).is_one() {
                        return Err(GradingError::TorsionIncompatible {
                            row,
                            col,
                            modulus: m,
                        });
                    }
                }
            }
        }
        Ok(Self { group, values })
    }

    /// `r(g, h) = 1` for all `g, h`.
    pub fn trivial(group: GroupSpec) -> Self {
        let n = group.rank();
        Self {
            group,
            values: vec![vec![BigRational::one(); n]; n],
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_one())
    }

    /// `prod_{i,j} values[i][j]^(g_i * h_j)`.
    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Result<BigRational, GradingError> {
        self.group.check(g)?;
        self.group.check(h)?;
        Ok(self.eval_unchecked(g, h))
    }

    pub(crate) fn eval_unchecked(&self, g: &GroupElement, h: &GroupElement) -> BigRational {
        let gc = g.coords();
        let hc = h.coords();
        let mut acc = BigRational::one();
        for (i, &gi) in gc.iter().enumerate() {
            if gi == 0 {
                continue;
            }
            for (j, &hj) in hc.iter().enumerate() {
                if hj == 0 || self.values[i][j].is_one() {
                    continue;
                }
                acc *= rational_pow(&self.values[i][j], gi * hj);
            }
        }
        acc
    }
}

/// `base^exp` for any integer exponent; `base` must be nonzero when `exp < 0`.
pub(crate) fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    let magnitude = exp.unsigned_abs();
    let mut result = BigRational::one();
    let mut b = base.clone();
    let mut e = magnitude;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    if exp < 0 {
        result.recip()
    } else {
        result
    }
}
