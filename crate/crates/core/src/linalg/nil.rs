//! Deciding whether every element of a span of matrices is nilpotent.
//!
//! In characteristic zero a matrix `M` of size `n` is nilpotent iff
//! `trace(M^k) = 0` for `k = 1..n`. For a span `M(t) = sum t_i B_i` each
//! `p_k(t) = trace(M(t)^k)` is a homogeneous polynomial of degree `k` in the
//! `s` span coordinates, so the span is nil iff every `p_k` vanishes
//! identically. Testing nilpotency of `M(t)` at a point tests all `p_k` there
//! at once.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LinalgError, Matrix};

/// Largest span dimension handled by exact lattice evaluation under
/// [`NilPolicy::Auto`].
pub const DETERMINISTIC_MAX_SPAN: usize = 4;

/// Number of independent random evaluation points used by the
/// probabilistic policy.
pub const RANDOM_POINTS: usize = 3;

/// Coordinates of random evaluation points are drawn from `[-RANDOM_RANGE, RANDOM_RANGE]`.
///
/// A nonzero `p_k` has degree at most `n`, so by Schwartz-Zippel a single
/// point misses it with probability at most `n / (2 * RANDOM_RANGE + 1)`; with
/// [`RANDOM_POINTS`] independent points the failure probability is at most
/// `(n / (2 * RANDOM_RANGE + 1))^3`, below `1e-26` for `n <= 50`.
pub const RANDOM_RANGE: i64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilPolicy {
    /// Exact lattice evaluation when the span has dimension at most
    /// [`DETERMINISTIC_MAX_SPAN`], random evaluation otherwise.
    Auto { seed: u64 },
    /// Always exact, whatever the span dimension.
    Deterministic,
    /// Always random evaluation.
    Probabilistic { seed: u64 },
}

impl Default for NilPolicy {
    fn default() -> Self {
        NilPolicy::Auto { seed: 0 }
    }
}

/// True iff every element of `span(basis)` is nilpotent.
///
/// The deterministic route evaluates on the lattice points
/// `{t in {0..n}^s : sum t = n}`. Restricted to that hyperplane each `p_k`
/// (`k <= n`) becomes a polynomial of total degree at most `n` in `s - 1`
/// variables, for which those points are unisolvent; vanishing there forces
/// `p_k` to vanish on the hyperplane and, by homogeneity, everywhere.
pub fn nil_subspace_check(basis: &[Matrix], policy: NilPolicy) -> Result<bool, LinalgError> {
    let Some(first) = basis.first() else {
        return Ok(true);
    };
    first.require_square()?;
    let n = first.rows();
    if let Some(bad) = basis.iter().find(|b| b.shape() != first.shape()) {
        return Err(LinalgError::SizeMismatch {
            left: first.shape(),
            right: bad.shape(),
        });
    }
    for b in basis {
        if !b.is_nilpotent()? {
            return Ok(false);
        }
    }
    if basis.len() == 1 || n == 0 {
        return Ok(true);
    }
    let deterministic = match policy {
        NilPolicy::Deterministic => true,
        NilPolicy::Probabilistic { .. } => false,
        NilPolicy::Auto { .. } => basis.len() <= DETERMINISTIC_MAX_SPAN,
    };
    if deterministic {
        let mut all_nil = true;
        let mut point = vec![0u64; basis.len()];
        for_each_lattice_point(&mut point, 0, n as u64, &mut |t| {
            if !all_nil {
                return;
            }
            let coeffs: Vec<BigRational> = t
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect();
            match combination(basis, &coeffs).is_nilpotent() {
                Ok(true) => {}
                _ => all_nil = false,
            }
        });
        Ok(all_nil)
    } else {
        let seed = match policy {
            NilPolicy::Auto { seed } | NilPolicy::Probabilistic { seed } => seed,
            NilPolicy::Deterministic => unreachable!(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_POINTS {
            let coeffs: Vec<BigRational> = basis
                .iter()
                .map(|_| BigRational::from_integer(rng.gen_range(-RANDOM_RANGE..=RANDOM_RANGE).into()))
                .collect();
            if !combination(basis, &coeffs).is_nilpotent()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `sum coeffs[i] * basis[i]`; `basis` must be nonempty with equal shapes.
pub fn combination(basis: &[Matrix], coeffs: &[BigRational]) -> Matrix {
    let (r, c) = basis[0].shape();
    let mut acc = Matrix::zeros(r, c);
    for (b, t) in basis.iter().zip(coeffs) {
        if num_traits::Zero::is_zero(t) {
            continue;
        }
        acc = acc.add(&b.scale(t)).expect("equal shapes");
    }
    acc
}

/// Visits every nonnegative integer vector of the given length summing to `total`.
fn for_each_lattice_point(
    point: &mut Vec<u64>,
    index: usize,
    remaining: u64,
    visit: &mut impl FnMut(&[u64]),
) {
    if index + 1 == point.len() {
        point[index] = remaining;
        visit(point);
        return;
    }
    for x in 0..=remaining {
        point[index] = x;
        for_each_lattice_point(point, index + 1, remaining - x, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_point_count_is_binomial() {
        let mut count = 0;
        let mut point = vec![0; 4];
        for_each_lattice_point(&mut point, 0, 5, &mut |t| {
            assert_eq!(t.iter().sum::<u64>(), 5);
            count += 1;
        });
        // C(5 + 3, 3)
        assert_eq!(count, 56);
    }

    #[test]
    fn examples() {
        let e12 = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let e21 = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        for policy in [
            NilPolicy::Deterministic,
            NilPolicy::Probabilistic { seed: 7 },
            NilPolicy::default(),
        ] {
            assert!(nil_subspace_check(&[e12.clone()], policy).unwrap());
            assert!(!nil_subspace_check(&[e12.clone(), e21.clone()], policy).unwrap());
            assert!(nil_subspace_check(&[], policy).unwrap());
        }
    }

    #[test]
    fn individually_nilpotent_but_not_nil_span() {
        // Both basis elements are nilpotent but their sum is not; only the
        // mixed lattice points detect this.
        let a = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let b = Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!(a.is_nilpotent().unwrap());
        assert!(b.is_nilpotent().unwrap());
        assert!(!nil_subspace_check(&[a.clone(), b.clone()], NilPolicy::Deterministic).unwrap());
        assert!(!nil_subspace_check(&[a, b], NilPolicy::Probabilistic { seed: 1 }).unwrap());
    }

    #[test]
    fn size_mismatch_is_reported() {
        let a = Matrix::zeros(2, 2);
        let b = Matrix::zeros(3, 3);
        assert!(matches!(
            nil_subspace_check(&[a, b], NilPolicy::Deterministic),
            Err(LinalgError::SizeMismatch { .. })
        ));
    }
}
