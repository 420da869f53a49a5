//! Exact dense linear algebra over arbitrary-precision rationals.

mod matrix;
mod nil;
mod poly;

pub use matrix::{Echelon, Matrix};
pub use nil::{
    combination, nil_subspace_check, NilPolicy, DETERMINISTIC_MAX_SPAN, RANDOM_POINTS,
    RANDOM_RANGE,
};
pub use poly::Poly;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("incompatible shapes {left:?} and {right:?}")]
    SizeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("matrix is singular")]
    Singular,
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
}

/// Formats a rational in lowest terms as `p/q`, or `p` when `q = 1`.
pub fn fmt_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, or `p/q` with integer `p`, `q` and `q != 0`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Shorthand for building small rationals.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
