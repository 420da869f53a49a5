//! Seeded generators for random graded spaces, homogeneous maps and
//! algebra instances with known structure.
//!
//! Triangular instances are built upper triangular in a homogeneous basis
//! and then conjugated by a random invertible degree-preserving map, which
//! keeps the grading but hides the triangular structure.

use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AlgebraError, ColorAlgebra};
use crate::graded::{GradedSpace, HomogeneousMap};
use crate::grading::{Bicharacter, GroupElement, GroupSpec};
use crate::linalg::{q, Matrix};

/// A grading group with a bicharacter on it.
#[derive(Debug, Clone)]
pub struct GradingConfig {
    pub name: &'static str,
    pub group: GroupSpec,
    pub r: Bicharacter,
}

fn config(name: &'static str, free: usize, torsion: Vec<i64>, values: &[&[(i64, i64)]]) -> GradingConfig {
    let group = GroupSpec::new(free, torsion).expect("valid group");
    let values = values
        .iter()
        .map(|row| row.iter().map(|&(n, d)| q(n, d)).collect())
        .collect();
    let r = Bicharacter::new(group.clone(), values).expect("valid bicharacter");
    GradingConfig { name, group, r }
}

/// Gradings used by the randomized identity checks.
pub fn standard_configs() -> Vec<GradingConfig> {
    vec![
        config("Z trivial", 1, vec![], &[&[(1, 1)]]),
        config("Z signed", 1, vec![], &[&[(-1, 1)]]),
        config("Z^2 q=1/2", 2, vec![], &[&[(1, 1), (1, 2)], &[(2, 1), (-1, 1)]]),
        config("Z_2 super", 0, vec![2], &[&[(-1, 1)]]),
        config("Z_3 trivial", 0, vec![3], &[&[(1, 1)]]),
        config("Z x Z_2", 1, vec![2], &[&[(1, 1), (-1, 1)], &[(-1, 1), (-1, 1)]]),
    ]
}

/// Torsion-free gradings, including the trivial group.
pub fn torsion_free_configs() -> Vec<GradingConfig> {
    vec![
        config("ungraded", 0, vec![], &[]),
        config("Z trivial", 1, vec![], &[&[(1, 1)]]),
        config("Z signed", 1, vec![], &[&[(-1, 1)]]),
        config("Z^2 q=3", 2, vec![], &[&[(1, 1), (3, 1)], &[(1, 3), (1, 1)]]),
    ]
}

fn random_element(rng: &mut impl Rng, group: &GroupSpec, spread: i64) -> GroupElement {
    let coords: Vec<i64> = (0..group.rank())
        .map(|i| {
            if i < group.free_rank() {
                rng.gen_range(-spread..=spread)
            } else {
                rng.gen_range(0..group.torsion_moduli()[i - group.free_rank()])
            }
        })
        .collect();
    group.element(&coords).expect("right rank")
}

/// A space with up to `max_degrees` components of dimension `1..=max_dim`,
/// total dimension at most `max_total` and at least one.
pub fn random_space(
    rng: &mut impl Rng,
    group: &GroupSpec,
    max_degrees: usize,
    max_dim: usize,
    max_total: usize,
) -> Arc<GradedSpace> {
    let mut dims: Vec<(GroupElement, usize)> = Vec::new();
    let count = rng.gen_range(1..=max_degrees);
    let mut total = 0;
    for _ in 0..count * 4 {
        if dims.len() == count || total >= max_total {
            break;
        }
        let g = random_element(rng, group, 2);
        if dims.iter().any(|(h, _)| *h == g) {
            continue;
        }
        let n = rng.gen_range(1..=max_dim).min(max_total - total);
        total += n;
        dims.push((g, n));
    }
    GradedSpace::new(group.clone(), dims).expect("distinct degrees")
}

/// A degree `g - h` for support degrees `g`, `h`, so maps of it can be nonzero.
pub fn random_active_degree(rng: &mut impl Rng, space: &GradedSpace) -> GroupElement {
    let support: Vec<&GroupElement> = space.support().collect();
    let g = support[rng.gen_range(0..support.len())];
    let h = support[rng.gen_range(0..support.len())];
    let neg = space.group().neg(h).expect("same group");
    space.group().add(g, &neg).expect("same group")
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, range: i64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = BigRational::from_integer(rng.gen_range(-range..=range).into());
        }
    }
    m
}

/// A map of the given degree with integer entries in `[-range, range]`.
pub fn random_map(
    rng: &mut impl Rng,
    space: &Arc<GradedSpace>,
    degree: &GroupElement,
    range: i64,
) -> HomogeneousMap {
    let zero = HomogeneousMap::zero(space, degree.clone()).expect("degree of the group");
    let blocks: Vec<(GroupElement, Matrix)> = zero
        .blocks()
        .map(|(h, b)| (h.clone(), random_matrix(rng, b.rows(), b.cols(), range)))
        .collect();
    HomogeneousMap::new(space, degree.clone(), blocks).expect("shapes match")
}

/// A random invertible degree-zero map and its inverse.
pub fn random_graded_automorphism(
    rng: &mut impl Rng,
    space: &Arc<GradedSpace>,
) -> (HomogeneousMap, HomogeneousMap) {
    let id = space.group().identity();
    let mut blocks = Vec::new();
    let mut inverses = Vec::new();
    for (g, n) in space.components() {
        loop {
            let m = random_matrix(rng, n, n, 2);
            if let Ok(inv) = m.inverse() {
                blocks.push((g.clone(), m));
                inverses.push((g.clone(), inv));
                break;
            }
        }
    }
    (
        HomogeneousMap::new(space, id.clone(), blocks).expect("diagonal blocks"),
        HomogeneousMap::new(space, id, inverses).expect("diagonal blocks"),
    )
}

/// `p x p^-1`.
pub fn conjugate(p: &HomogeneousMap, p_inv: &HomogeneousMap, x: &HomogeneousMap) -> HomogeneousMap {
    p.compose(x)
        .and_then(|px| px.compose(p_inv))
        .expect("same space")
}

/// A random algebra that is upper triangular in a hidden homogeneous flag.
#[derive(Debug, Clone)]
pub struct TriangularInstance {
    pub space: Arc<GradedSpace>,
    pub r: Bicharacter,
    /// Generators after conjugation.
    pub generators: Vec<HomogeneousMap>,
    pub algebra: ColorAlgebra,
}

/// Shape parameters for [`triangular_instance`].
#[derive(Debug, Clone, Copy)]
pub struct TriangularShape {
    pub max_degrees: usize,
    pub max_dim: usize,
    pub max_total: usize,
    pub generators: usize,
    /// Strictly upper triangular (nil) when true; otherwise degree-zero
    /// generators get random rational diagonals.
    pub strict: bool,
}

impl Default for TriangularShape {
    fn default() -> Self {
        Self {
            max_degrees: 3,
            max_dim: 2,
            max_total: 4,
            generators: 2,
            strict: false,
        }
    }
}

/// Builds generators that are upper triangular with respect to a random
/// ordering of the standard homogeneous basis, conjugates them by a random
/// degree-preserving automorphism and closes under the bracket.
pub fn triangular_instance(
    rng: &mut impl Rng,
    grading: &GradingConfig,
    shape: TriangularShape,
) -> Result<TriangularInstance, AlgebraError> {
    let space = random_space(rng, &grading.group, shape.max_degrees, shape.max_dim, shape.max_total);
    let n = space.total_dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // rank[i] = position of flattened coordinate i in the hidden flag.
    let mut rank = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }
    let (p, p_inv) = random_graded_automorphism(rng, &space);
    let mut generators = Vec::new();
    for _ in 0..shape.generators {
        let degree = if !shape.strict && rng.gen_bool(0.5) {
            grading.group.identity()
        } else {
            random_active_degree(rng, &space)
        };
        let zero = HomogeneousMap::zero(&space, degree.clone())?;
        let mut blocks = Vec::new();
        for (h, b) in zero.blocks() {
            let target = space.add_degrees(h, &degree);
            let row0 = space.offset(&target).expect("target in support");
            let col0 = space.offset(h).expect("source in support");
            let mut block = b.clone();
            for a in 0..block.rows() {
                for c in 0..block.cols() {
                    let (i, j) = (row0 + a, col0 + c);
                    if rank[i] < rank[j] {
                        block[(a, c)] = BigRational::from_integer(rng.gen_range(-2..=2).into());
                    } else if i == j && !shape.strict {
                        block[(a, c)] = q(rng.gen_range(-3..=3), rng.gen_range(1..=2));
                    }
                }
            }
            blocks.push((h.clone(), block));
        }
        let x = HomogeneousMap::new(&space, degree, blocks)?;
        generators.push(conjugate(&p, &p_inv, &x));
    }
    let algebra = ColorAlgebra::bracket_closure(&space, &grading.r, generators.clone())?;
    Ok(TriangularInstance {
        space,
        r: grading.r.clone(),
        generators,
        algebra,
    })
}
