//! Color flags by repeated graded quotients, and ideal chains through the
//! adjoint representation.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_solvable_hypotheses, weight_at, weight_space, Options, StructureError, Weight};
use crate::algebra::{ColorAlgebra, Subspace};
use crate::graded::{GradedError, GradedSpace, GradedVector, HomogeneousMap};
use crate::grading::GroupElement;
use crate::linalg::Matrix;

/// `V / F v` for a nonzero homogeneous `v`, with explicit flattened
/// projection `V -> V / F v` and section `V / F v -> V`.
///
/// If `v` has degree `g` and its first nonzero coordinate is `p`, the
/// quotient drops coordinate `p` of `V_g`: the projection subtracts the
/// multiple of `v` that clears coordinate `p`, and the section inserts a zero
/// there. Both preserve degrees.
#[derive(Debug, Clone)]
pub struct GradedQuotient {
    space: Arc<GradedSpace>,
    projection: Matrix,
    section: Matrix,
}

impl GradedQuotient {
    pub fn new(space: &Arc<GradedSpace>, v: &GradedVector) -> Result<Self, GradedError> {
        let g = v
            .homogeneous_degree()
            .ok_or_else(|| GradedError::NotHomogeneous(space.group().identity()))?
            .clone();
        let coords = v.component(&g).expect("degree of v");
        let p = coords.iter().position(|c| !c.is_zero()).expect("nonzero");
        let quotient = GradedSpace::new(
            space.group().clone(),
            space
                .components()
                .map(|(h, n)| (h.clone(), if *h == g { n - 1 } else { n })),
        )?;
        let (n, m) = (space.total_dim(), quotient.total_dim());
        let mut projection = Matrix::zeros(m, n);
        let mut section = Matrix::zeros(n, m);
        for (h, _) in quotient.components() {
            let q0 = quotient.offset(h).unwrap();
            let v0 = space.offset(h).unwrap();
            let sources: Vec<usize> = (0..space.dim(h)).filter(|&i| *h != g || i != p).collect();
            for (j, &i) in sources.iter().enumerate() {
                projection[(q0 + j, v0 + i)] = BigRational::one();
                section[(v0 + i, q0 + j)] = BigRational::one();
                if *h == g {
                    projection[(q0 + j, v0 + p)] = -(&coords[i] / &coords[p]);
                }
            }
        }
        Ok(Self {
            space: quotient,
            projection,
            section,
        })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    /// The induced map `projection . x . section` on the quotient.
    pub fn induce(&self, x: &HomogeneousMap) -> Result<HomogeneousMap, GradedError> {
        let flat = self.projection.mul(&x.flatten())?.mul(&self.section)?;
        HomogeneousMap::from_flat(&self.space, x.degree().clone(), &flat)
    }

    /// True iff `induced . projection = projection . x`, i.e. `x` preserves
    /// `F v` and `induced` is its action on the quotient.
    pub fn intertwines(&self, x: &HomogeneousMap, induced: &HomogeneousMap) -> Result<bool, GradedError> {
        let left = induced.flatten().mul(&self.projection)?;
        let right = self.projection.mul(&x.flatten())?;
        Ok(left == right)
    }
}

/// A homogeneous basis of `V` in which every element of `L` is upper
/// triangular, with the diagonal weights.
#[derive(Debug, Clone)]
pub struct ColorFlag {
    pub space: Arc<GradedSpace>,
    pub ordered_basis: Vec<GradedVector>,
    /// `weights[k]` gives the `k`-th diagonal entry of every basis element of `L`.
    pub weights: Vec<Weight>,
}

impl ColorFlag {
    /// Columns are the flattened flag basis vectors.
    pub fn change_of_basis(&self) -> Matrix {
        let columns: Vec<Vec<BigRational>> =
            self.ordered_basis.iter().map(GradedVector::flatten).collect();
        Matrix::from_columns(self.space.total_dim(), &columns)
    }

    /// Matrix of `x` in the flag basis.
    pub fn matrix_of(&self, x: &HomogeneousMap) -> Result<Matrix, StructureError> {
        let p = self.change_of_basis();
        let p_inv = p.inverse()?;
        Ok(p_inv.mul(&x.flatten())?.mul(&p)?)
    }
}

fn at_depth(depth: usize) -> impl Fn(StructureError) -> StructureError {
    move |e| StructureError::AtDepth {
        depth,
        source: Box::new(e),
    }
}

/// Extracts a common homogeneous eigenvector, passes to the quotient by it
/// and repeats. The result is verified: every basis element of `L` is upper
/// triangular in the flag basis with the recorded weights on the diagonal.
pub fn color_flag(l: &ColorAlgebra, opts: Options) -> Result<ColorFlag, StructureError> {
    if opts.check_hypotheses {
        check_solvable_hypotheses(l, opts.policy)?;
    } else {
        l.require_closed()?;
    }
    flag_unchecked(l, opts.check_hypotheses)
}

fn flag_unchecked(l: &ColorAlgebra, strict: bool) -> Result<ColorFlag, StructureError> {
    let space = l.space();
    let r = l.bicharacter();
    let mut quotient_space = Arc::clone(space);
    let mut maps: Vec<HomogeneousMap> = l.basis().to_vec();
    let mut lift = Matrix::identity(space.total_dim());
    let mut ordered_basis = Vec::new();
    let mut weights = Vec::new();
    let mut depth = 0;
    while !quotient_space.is_zero() {
        let step = |maps: &[HomogeneousMap]| -> Result<(GradedVector, Vec<BigRational>), StructureError> {
            let image = ColorAlgebra::span(&quotient_space, r, maps.iter().cloned())?
                .verify_closed()
                .map_err(|_| StructureError::TheoremViolation("induced action is not closed".into()))?;
            let (_, w) = weight_space(&image, strict)?;
            let v = w.first_vector(&quotient_space)?;
            let lambda = weight_at(maps, &v)?;
            Ok((v, lambda))
        };
        let (v, lambda) = step(&maps).map_err(at_depth(depth))?;
        let lifted = lift.mul_vec(&v.flatten())?;
        ordered_basis.push(GradedVector::from_flat(space, &lifted)?);
        weights.push(Weight { values: lambda });

        let quotient = GradedQuotient::new(&quotient_space, &v)?;
        let mut induced = Vec::with_capacity(maps.len());
        for x in &maps {
            let y = quotient.induce(x)?;
            if !quotient.intertwines(x, &y)? {
                return Err(at_depth(depth)(StructureError::TheoremViolation(
                    "eigenvector line is not invariant".into(),
                )));
            }
            induced.push(y);
        }
        lift = lift.mul(quotient.section())?;
        maps = induced;
        quotient_space = Arc::clone(quotient.space());
        depth += 1;
    }
    let flag = ColorFlag {
        space: Arc::clone(space),
        ordered_basis,
        weights,
    };
    verify_flag(l, &flag)?;
    Ok(flag)
}

fn verify_flag(l: &ColorAlgebra, flag: &ColorFlag) -> Result<(), StructureError> {
    if flag.ordered_basis.iter().any(|v| !v.is_homogeneous()) {
        return Err(StructureError::TheoremViolation("flag basis is not homogeneous".into()));
    }
    let p = flag.change_of_basis();
    let p_inv = p
        .inverse()
        .map_err(|_| StructureError::TheoremViolation("flag vectors are dependent".into()))?;
    for (i, x) in l.basis().iter().enumerate() {
        let m = p_inv.mul(&x.flatten())?.mul(&p)?;
        if !m.is_upper_triangular() {
            return Err(StructureError::TheoremViolation(format!(
                "basis element {i} is not upper triangular in the flag basis"
            )));
        }
        for (k, w) in flag.weights.iter().enumerate() {
            if m[(k, k)] != w.values[i] {
                return Err(StructureError::TheoremViolation(format!(
                    "diagonal entry {k} of basis element {i} differs from its weight"
                )));
            }
        }
    }
    Ok(())
}

/// `0 = L_0 ⊂ L_1 ⊂ ... ⊂ L_n = L` with `dim L_i = i`, each a color ideal.
#[derive(Debug, Clone)]
pub struct IdealChain {
    pub chain: Vec<Subspace>,
    /// Homogeneous basis of `L` with `L_i` spanned by the first `i` elements.
    pub ordered_basis: Vec<HomogeneousMap>,
}

/// A color flag of `ad L` acting on `L`, read back as elements of `L`.
pub fn ideal_chain(l: &ColorAlgebra, opts: Options) -> Result<IdealChain, StructureError> {
    if opts.check_hypotheses {
        check_solvable_hypotheses(l, opts.policy)?;
    } else {
        l.require_closed()?;
    }
    let ad = l.ad_representation()?;
    let flag = flag_unchecked(&ad, opts.check_hypotheses)?;
    let ordered_basis: Vec<HomogeneousMap> = flag
        .ordered_basis
        .iter()
        .map(|u| {
            let g: &GroupElement = u.homogeneous_degree().expect("verified homogeneous");
            l.combine_component(g, u.component(g).expect("degree of u"))
        })
        .collect();
    let mut chain = vec![l.zero_subspace()];
    for i in 1..=ordered_basis.len() {
        let s = l.subspace(ordered_basis[..i].iter().cloned())?;
        if s.dim() != i {
            return Err(StructureError::TheoremViolation(format!("L_{i} has dimension {}", s.dim())));
        }
        if !l.is_ideal(&s)? {
            return Err(StructureError::TheoremViolation(format!("L_{i} is not an ideal")));
        }
        chain.push(s);
    }
    Ok(IdealChain {
        chain,
        ordered_basis,
    })
}
