use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{fmt_rational, LinalgError, Matrix};

/// Univariate polynomial over the rationals, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Evaluates the polynomial at a square matrix by Horner's scheme.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix, LinalgError> {
        m.require_square()?;
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    /// Synthetic division by `(t - root)`; returns the quotient if exact.
    fn divide_by_root(&self, root: &BigRational) -> Option<Poly> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut quotient = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + carry * root;
            quotient[i - 1] = carry.clone();
        }
        let remainder = &self.coeffs[0] + carry * root;
        if !remainder.is_zero() {
            return None;
        }
        Some(Poly::new(quotient))
    }

    /// All rational roots with multiplicities, ascending by value.
    ///
    /// Clears denominators and content, then tests every candidate `p/q` with
    /// `p | a_0` and `q | a_n` (rational root theorem).
    pub fn rational_roots(&self) -> Result<Vec<(BigRational, usize)>, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        let lowest = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if lowest > 0 {
            roots.push((BigRational::zero(), lowest));
        }
        let mut rest = Poly::new(self.coeffs[lowest..].to_vec());
        if rest.degree() == Some(0) {
            return Ok(roots);
        }
        let ints = integer_coefficients(&rest);
        let a0 = ints.first().unwrap().abs();
        let an = ints.last().unwrap().abs();
        let nums = divisors(&a0);
        let dens = divisors(&an);
        let mut candidates: Vec<BigRational> = Vec::new();
        for p in &nums {
            for q in &dens {
                if p.gcd(q).is_one() {
                    let c = BigRational::new(p.clone(), q.clone());
                    candidates.push(-c.clone());
                    candidates.push(c);
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            let mut mult = 0;
            while let Some(q) = rest.divide_by_root(&c) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
            if rest.degree() == Some(0) {
                break;
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(roots)
    }
}

/// Scales to a primitive integer polynomial with the same roots.
fn integer_coefficients(p: &Poly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    debug_assert_eq!(n.sign(), Sign::Plus);
    if let Some(small) = n.to_u64() {
        let mut out = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                out.push(BigInt::from(d));
                if d != small / d {
                    out.push(BigInt::from(small / d));
                }
            }
            d += 1;
        }
        return out;
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                out.push(other);
            }
            out.push(d.clone());
        }
        d += 1;
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = power == 0 || !magnitude.is_one();
            if show_coeff {
                write!(f, "{}", fmt_rational(&magnitude))?;
                if power > 0 {
                    write!(f, "*")?;
                }
            }
            match power {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{power}")?,
            }
        }
        Ok(())
    }
}
