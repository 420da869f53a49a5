//! Graded vector spaces and homogeneous linear maps stored as block matrices.
//!
//! A [`GradedSpace`] is `V = sum_g V_g` with finitely many nonzero components.
//! A [`HomogeneousMap`] of degree `u` sends `V_h` into `V_{h+u}` and is stored
//! as one block `n_{h+u} x n_h` per source degree `h` for which both `h` and
//! `h+u` lie in the support. Degrees outside the support carry no blocks: a
//! map whose image would leave the support is zero there.
//!
//! Flattening concatenates the components in the canonical order of degrees
//! (the `Ord` of [`GroupElement`]).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::grading::{GradingError, GroupElement, GroupSpec};
use crate::linalg::{fmt_rational, LinalgError, Matrix, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("degree {0} appears twice in the space description")]
    DuplicateDegree(GroupElement),
    #[error("degree {0} is not in the support of the space")]
    UnknownDegree(GroupElement),
    #[error("block for source degree {source_degree} has shape {got:?}, expected {expected:?}")]
    ShapeMismatch {
        source_degree: GroupElement,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("operands live on different graded spaces")]
    SpaceMismatch,
    #[error("operands have different degrees {0} and {1}")]
    DegreeMismatch(GroupElement, GroupElement),
    #[error("matrix is not homogeneous of degree {0}")]
    NotHomogeneous(GroupElement),
    #[error("vector has length {got}, space has dimension {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("degree {0} has finite order; the grading does not force nilpotency")]
    TorsionDegree(GroupElement),
    #[error("degree is zero; the grading does not force nilpotency")]
    ZeroDegree,
    #[error("map has nonzero degree {0}; eigenvalues are only computed blockwise for degree 0")]
    NonzeroDegree(GroupElement),
    #[error("nilpotency certificate failed: f^{0} is nonzero")]
    CertificateFailed(usize),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `V = sum_g V_g` with `dim V_g = n_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    group: GroupSpec,
    dims: BTreeMap<GroupElement, usize>,
    offsets: BTreeMap<GroupElement, usize>,
    total: usize,
}

impl GradedSpace {
    /// Degrees with dimension zero are dropped from the support.
    pub fn new(
        group: GroupSpec,
        dims: impl IntoIterator<Item = (GroupElement, usize)>,
    ) -> Result<Arc<Self>, GradedError> {
        let mut map = BTreeMap::new();
        for (g, n) in dims {
            if !group.contains(&g) {
                return Err(GradingError::GroupMismatch {
                    expected: group.rank(),
                    got: g.coords().len(),
                }
                .into());
            }
            if map.contains_key(&g) {
                return Err(GradedError::DuplicateDegree(g));
            }
            map.insert(g, n);
        }
        map.retain(|_, n| *n > 0);
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for (g, &n) in &map {
            offsets.insert(g.clone(), total);
            total += n;
        }
        Ok(Arc::new(Self {
            group,
            dims: map,
            offsets,
            total,
        }))
    }

    /// Ungraded `F^n`, i.e. graded by the trivial group.
    pub fn ungraded(n: usize) -> Arc<Self> {
        let group = GroupSpec::trivial();
        let id = group.identity();
        Self::new(group, [(id, n)]).expect("trivial grading is valid")
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn is_zero(&self) -> bool {
        self.total == 0
    }

    /// `n_g`, zero outside the support.
    pub fn dim(&self, g: &GroupElement) -> usize {
        self.dims.get(g).copied().unwrap_or(0)
    }

    /// Support degrees with their dimensions, in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (&GroupElement, usize)> {
        self.dims.iter().map(|(g, &n)| (g, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.dims.keys()
    }

    pub fn contains_degree(&self, g: &GroupElement) -> bool {
        self.dims.contains_key(g)
    }

    /// Position of the first coordinate of `V_g` in flattened vectors.
    pub fn offset(&self, g: &GroupElement) -> Option<usize> {
        self.offsets.get(g).copied()
    }

    /// Degree of the `i`-th flattened coordinate.
    pub fn degree_of_coordinate(&self, i: usize) -> Option<(&GroupElement, usize)> {
        self.offsets
            .iter()
            .rev()
            .find(|(_, &off)| off <= i)
            .filter(|(g, &off)| i < off + self.dims[*g])
            .map(|(g, &off)| (g, i - off))
    }

    pub(crate) fn add_degrees(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.group.add_unchecked(a, b)
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (g, n)) in self.components().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}: {n}")?;
        }
        write!(f, "}} over {}", self.group)
    }
}

pub(crate) fn same_space(a: &Arc<GradedSpace>, b: &Arc<GradedSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A linear map `V -> V` of a single degree.
#[derive(Debug, Clone)]
pub struct HomogeneousMap {
    space: Arc<GradedSpace>,
    degree: GroupElement,
    blocks: BTreeMap<GroupElement, Matrix>,
}

impl PartialEq for HomogeneousMap {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space)
            && self.degree == other.degree
            && self.blocks == other.blocks
    }
}

impl Eq for HomogeneousMap {}

impl HomogeneousMap {
    /// Builds a map from `(source degree, block)` pairs; omitted blocks are zero.
    pub fn new(
        space: &Arc<GradedSpace>,
        degree: GroupElement,
        blocks: impl IntoIterator<Item = (GroupElement, Matrix)>,
    ) -> Result<Self, GradedError> {
        let mut map = Self::zero(space, degree)?;
        for (source, block) in blocks {
            let Some(slot) = map.blocks.get_mut(&source) else {
                if space.contains_degree(&source) {
                    return Err(GradedError::UnknownDegree(
                        space.add_degrees(&source, &map.degree),
                    ));
                }
                return Err(GradedError::UnknownDegree(source));
            };
            if slot.shape() != block.shape() {
                return Err(GradedError::ShapeMismatch {
                    source_degree: source,
                    expected: slot.shape(),
                    got: block.shape(),
                });
            }
            *slot = block;
        }
        Ok(map)
    }

    pub fn zero(space: &Arc<GradedSpace>, degree: GroupElement) -> Result<Self, GradedError> {
        if !space.group.contains(&degree) {
            return Err(GradingError::GroupMismatch {
                expected: space.group.rank(),
                got: degree.coords().len(),
            }
            .into());
        }
        let blocks = space
            .components()
            .filter_map(|(h, n)| {
                let target = space.add_degrees(h, &degree);
                let m = space.dim(&target);
                (m > 0).then(|| (h.clone(), Matrix::zeros(m, n)))
            })
            .collect();
        Ok(Self {
            space: Arc::clone(space),
            degree,
            blocks,
        })
    }

    pub fn identity(space: &Arc<GradedSpace>) -> Self {
        let mut map = Self::zero(space, space.group.identity()).expect("identity degree");
        for (h, block) in map.blocks.iter_mut() {
            *block = Matrix::identity(space.dim(h));
        }
        map
    }

    /// Reads off the degree-`degree` part of a flattened matrix, failing if
    /// the matrix has entries outside that degree's block pattern.
    pub fn from_flat(
        space: &Arc<GradedSpace>,
        degree: GroupElement,
        m: &Matrix,
    ) -> Result<Self, GradedError> {
        let n = space.total_dim();
        if m.shape() != (n, n) {
            return Err(LinalgError::SizeMismatch {
                left: (n, n),
                right: m.shape(),
            }
            .into());
        }
        let map = Self::homogeneous_part(space, degree.clone(), m)?;
        if map.flatten() != *m {
            return Err(GradedError::NotHomogeneous(degree));
        }
        Ok(map)
    }

    fn homogeneous_part(
        space: &Arc<GradedSpace>,
        degree: GroupElement,
        m: &Matrix,
    ) -> Result<Self, GradedError> {
        let mut map = Self::zero(space, degree)?;
        for (h, block) in map.blocks.iter_mut() {
            let target = space.add_degrees(h, &map.degree);
            let (r, c) = block.shape();
            *block = m.block(space.offset(&target).unwrap(), space.offset(h).unwrap(), r, c);
        }
        Ok(map)
    }

    /// Splits a flattened matrix into its nonzero homogeneous components.
    pub fn decompose(space: &Arc<GradedSpace>, m: &Matrix) -> Result<Vec<Self>, GradedError> {
        let n = space.total_dim();
        if m.shape() != (n, n) {
            return Err(LinalgError::SizeMismatch {
                left: (n, n),
                right: m.shape(),
            }
            .into());
        }
        let mut degrees: Vec<GroupElement> = Vec::new();
        for h in space.support() {
            for g in space.support() {
                let neg = space.group.neg(h)?;
                let u = space.add_degrees(g, &neg);
                if !degrees.contains(&u) {
                    degrees.push(u);
                }
            }
        }
        degrees.sort();
        let mut parts = Vec::new();
        for u in degrees {
            let part = Self::homogeneous_part(space, u, m)?;
            if !part.is_zero() {
                parts.push(part);
            }
        }
        Ok(parts)
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn degree(&self) -> &GroupElement {
        &self.degree
    }

    /// The block `V_h -> V_{h+degree}`, if both components exist.
    pub fn block(&self, source: &GroupElement) -> Option<&Matrix> {
        self.blocks.get(source)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&GroupElement, &Matrix)> {
        self.blocks.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// Concatenated block entries; a fixed layout for all maps of one degree
    /// on one space, used for span computations.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.blocks
            .values()
            .flat_map(|b| b.entries().iter().cloned())
            .collect()
    }

    /// The map as an ordinary `dim V x dim V` matrix.
    pub fn flatten(&self) -> Matrix {
        let n = self.space.total_dim();
        let mut m = Matrix::zeros(n, n);
        for (h, block) in &self.blocks {
            let target = self.space.add_degrees(h, &self.degree);
            m.set_block(
                self.space.offset(&target).unwrap(),
                self.space.offset(h).unwrap(),
                block,
            );
        }
        m
    }

    fn check_space(&self, other: &Self) -> Result<(), GradedError> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(GradedError::SpaceMismatch)
        }
    }

    /// `self o other`, of degree `|self| + |other|`.
    pub fn compose(&self, other: &Self) -> Result<Self, GradedError> {
        self.check_space(other)?;
        let degree = self.space.add_degrees(&self.degree, &other.degree);
        let mut out = Self::zero(&self.space, degree)?;
        for (h, block) in out.blocks.iter_mut() {
            let mid = self.space.add_degrees(h, &other.degree);
            if let (Some(inner), Some(outer)) = (other.blocks.get(h), self.blocks.get(&mid)) {
                *block = outer.mul(inner)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, GradedError> {
        self.check_space(other)?;
        if self.degree != other.degree {
            return Err(GradedError::DegreeMismatch(
                self.degree.clone(),
                other.degree.clone(),
            ));
        }
        let blocks = self
            .blocks
            .iter()
            .map(|(h, b)| Ok((h.clone(), b.add(&other.blocks[h])?)))
            .collect::<Result<_, LinalgError>>()?;
        Ok(Self {
            space: Arc::clone(&self.space),
            degree: self.degree.clone(),
            blocks,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GradedError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            space: Arc::clone(&self.space),
            degree: self.degree.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|(h, b)| (h.clone(), b.scale(c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Result<Self, GradedError> {
        let mut acc = Self::identity(&self.space);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Component at `g + degree` of the image is `block_g * v_g`.
    pub fn apply(&self, v: &GradedVector) -> Result<GradedVector, GradedError> {
        if !same_space(&self.space, &v.space) {
            return Err(GradedError::SpaceMismatch);
        }
        let mut out = GradedVector::zero(&self.space);
        for (h, block) in &self.blocks {
            let target = self.space.add_degrees(h, &self.degree);
            let image = block.mul_vec(&v.components[h])?;
            out.components.insert(target, image);
        }
        Ok(out)
    }
}

impl fmt::Display for HomogeneousMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        write!(f, "{}", self.flatten())
    }
}

/// A vector of `V`, stored componentwise.
#[derive(Debug, Clone)]
pub struct GradedVector {
    space: Arc<GradedSpace>,
    components: BTreeMap<GroupElement, Vec<BigRational>>,
}

impl PartialEq for GradedVector {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.components == other.components
    }
}

impl Eq for GradedVector {}

impl GradedVector {
    pub fn zero(space: &Arc<GradedSpace>) -> Self {
        Self {
            space: Arc::clone(space),
            components: space
                .components()
                .map(|(g, n)| (g.clone(), vec![BigRational::zero(); n]))
                .collect(),
        }
    }

    /// The vector supported in degree `degree` with the given coordinates.
    pub fn homogeneous(
        space: &Arc<GradedSpace>,
        degree: &GroupElement,
        coords: Vec<BigRational>,
    ) -> Result<Self, GradedError> {
        let n = space.dim(degree);
        if n == 0 {
            return Err(GradedError::UnknownDegree(degree.clone()));
        }
        if coords.len() != n {
            return Err(GradedError::LengthMismatch {
                expected: n,
                got: coords.len(),
            });
        }
        let mut v = Self::zero(space);
        v.components.insert(degree.clone(), coords);
        Ok(v)
    }

    /// `i`-th standard basis vector of `V_degree`.
    pub fn basis_vector(
        space: &Arc<GradedSpace>,
        degree: &GroupElement,
        index: usize,
    ) -> Result<Self, GradedError> {
        let n = space.dim(degree);
        let mut coords = vec![BigRational::zero(); n];
        if index >= n {
            return Err(GradedError::UnknownDegree(degree.clone()));
        }
        coords[index] = BigRational::one();
        Self::homogeneous(space, degree, coords)
    }

    /// Standard homogeneous basis of `V` in flattened order.
    pub fn standard_basis(space: &Arc<GradedSpace>) -> Vec<Self> {
        space
            .components()
            .flat_map(|(g, n)| (0..n).map(move |i| (g, i)))
            .map(|(g, i)| Self::basis_vector(space, g, i).expect("in range"))
            .collect()
    }

    pub fn from_flat(space: &Arc<GradedSpace>, flat: &[BigRational]) -> Result<Self, GradedError> {
        if flat.len() != space.total_dim() {
            return Err(GradedError::LengthMismatch {
                expected: space.total_dim(),
                got: flat.len(),
            });
        }
        let components = space
            .components()
            .map(|(g, n)| {
                let off = space.offset(g).unwrap();
                (g.clone(), flat[off..off + n].to_vec())
            })
            .collect();
        Ok(Self {
            space: Arc::clone(space),
            components,
        })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn flatten(&self) -> Vec<BigRational> {
        self.components.values().flatten().cloned().collect()
    }

    pub fn component(&self, g: &GroupElement) -> Option<&[BigRational]> {
        self.components.get(g).map(Vec::as_slice)
    }

    pub fn components(&self) -> impl Iterator<Item = (&GroupElement, &[BigRational])> {
        self.components.iter().map(|(g, v)| (g, v.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().flatten().all(Zero::is_zero)
    }

    /// The unique degree carrying a nonzero component, if there is exactly one.
    pub fn homogeneous_degree(&self) -> Option<&GroupElement> {
        let mut nonzero = self
            .components
            .iter()
            .filter(|(_, v)| v.iter().any(|x| !x.is_zero()));
        let (g, _) = nonzero.next()?;
        nonzero.next().is_none().then_some(g)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            space: Arc::clone(&self.space),
            components: self
                .components
                .iter()
                .map(|(g, v)| (g.clone(), v.iter().map(|x| x * c).collect()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GradedError> {
        if !same_space(&self.space, &other.space) {
            return Err(GradedError::SpaceMismatch);
        }
        Ok(Self {
            space: Arc::clone(&self.space),
            components: self
                .components
                .iter()
                .map(|(g, v)| {
                    let w = &other.components[g];
                    (g.clone(), v.iter().zip(w).map(|(a, b)| a - b).collect())
                })
                .collect(),
        })
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, v) in &self.components {
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coords: Vec<String> = v.iter().map(fmt_rational).collect();
            write!(f, "[{}]@{g}", coords.join(", "))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Homogeneous basis of the common kernel of `maps`, computed degree by
/// degree. With no maps this is the standard basis of `V`.
pub fn graded_kernel(
    space: &Arc<GradedSpace>,
    maps: &[HomogeneousMap],
) -> Result<Vec<GradedVector>, GradedError> {
    if maps.iter().any(|m| !same_space(space, &m.space)) {
        return Err(GradedError::SpaceMismatch);
    }
    let mut out = Vec::new();
    for (h, n) in space.components() {
        let mut stacked = Matrix::zeros(0, n);
        for m in maps {
            if let Some(b) = m.block(h) {
                stacked = stacked.vstack(b)?;
            }
        }
        for v in stacked.kernel_basis() {
            out.push(GradedVector::homogeneous(space, h, v)?);
        }
    }
    Ok(out)
}

/// Evidence that a map of infinite-order degree is nilpotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyCertificate {
    pub degree: GroupElement,
    /// Length of the longest chain `g, g+u, g+2u, ...` inside the support;
    /// `f^exponent = 0` because every such chain leaves the support.
    pub exponent: usize,
    /// Smallest `k <= exponent` with `f^k = 0`.
    pub minimal_exponent: usize,
}

/// Certifies nilpotency of a map whose degree has infinite order.
pub fn nilpotent_by_grading(f: &HomogeneousMap) -> Result<NilpotencyCertificate, GradedError> {
    let u = &f.degree;
    if u.is_identity() {
        return Err(GradedError::ZeroDegree);
    }
    if !u.has_infinite_order() {
        return Err(GradedError::TorsionDegree(u.clone()));
    }
    let space = &f.space;
    let mut exponent = 0;
    for g in space.support() {
        let mut len = 0;
        let mut cur = g.clone();
        while space.contains_degree(&cur) {
            len += 1;
            cur = space.add_degrees(&cur, u);
        }
        exponent = exponent.max(len);
    }
    let mut power = HomogeneousMap::identity(space);
    let mut minimal_exponent = None;
    for k in 0..=exponent {
        if power.is_zero() {
            minimal_exponent = Some(k);
            break;
        }
        power = f.compose(&power)?;
    }
    let minimal_exponent = minimal_exponent.ok_or(GradedError::CertificateFailed(exponent))?;
    Ok(NilpotencyCertificate {
        degree: u.clone(),
        exponent,
        minimal_exponent,
    })
}

/// One rational eigenvalue of a diagonal block with a homogeneous eigenvector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousEigenpair {
    pub degree: GroupElement,
    pub value: BigRational,
    pub vector: GradedVector,
}

/// Output of [`homogeneous_eigenvalues`]: rational eigenpairs per component,
/// plus the characteristic polynomials of blocks with irrational roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenReport {
    pub pairs: Vec<HomogeneousEigenpair>,
    pub irrational: Vec<(GroupElement, Poly)>,
}

impl EigenReport {
    pub fn is_complete(&self) -> bool {
        self.irrational.is_empty()
    }
}

/// Rational eigenvalues of each diagonal block of a degree-zero map, one
/// homogeneous eigenvector per eigenvalue.
pub fn homogeneous_eigenvalues(f: &HomogeneousMap) -> Result<EigenReport, GradedError> {
    if !f.degree.is_identity() {
        return Err(GradedError::NonzeroDegree(f.degree.clone()));
    }
    let mut report = EigenReport {
        pairs: Vec::new(),
        irrational: Vec::new(),
    };
    for (g, block) in &f.blocks {
        let poly = block.char_poly()?;
        let roots = poly.rational_roots()?;
        let found: usize = roots.iter().map(|(_, m)| m).sum();
        for (value, _) in roots {
            let n = block.rows();
            let shifted = block.sub(&Matrix::identity(n).scale(&value))?;
            let kernel = shifted.kernel_basis();
            let v = kernel.into_iter().next().expect("root of char poly has an eigenvector");
            report.pairs.push(HomogeneousEigenpair {
                degree: g.clone(),
                value,
                vector: GradedVector::homogeneous(&f.space, g, v)?,
            });
        }
        if found < block.rows() {
            report.irrational.push((g.clone(), poly));
        }
    }
    Ok(report)
}
