use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A polynomial in `t` with arbitrary-precision integer coefficients.
///
/// Stored densely with no trailing zeros, so the zero polynomial is the empty
/// coefficient vector and has no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactPolynomial {
    coeffs: Vec<BigInt>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exponent: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exponent + 1];
        coeffs[exponent] = c;
        Self::new(coeffs)
    }

    /// `1 + c·t^e` for `c = ±1`; the building block of every closed form here.
    pub fn binomial(sign: i64, exponent: usize) -> Self {
        if exponent == 0 {
            return Self::from_i64(&[1 + sign]);
        }
        let mut coeffs = vec![BigInt::zero(); exponent + 1];
        coeffs[0] = BigInt::one();
        coeffs[exponent] = BigInt::from(sign);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficients as `i64`, panicking on overflow. Test and display helper.
    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| c.to_i64().expect("coefficient exceeds i64"))
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        ExactPolynomial::new(convolve(&self.coeffs, &rhs.coeffs, len))
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn neg(self) -> ExactPolynomial {
        ExactPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactPolynomial {
            type Output = ExactPolynomial;

            fn $method(self, rhs: ExactPolynomial) -> ExactPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::render::format_terms(
            &self.coeffs,
            crate::cli::render::TermStyle::Plain,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_degree() {
        let p = ExactPolynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.coeff(7), BigInt::zero());
        assert_eq!(ExactPolynomial::from_i64(&[0, 0]).degree(), None);
        assert!(ExactPolynomial::from_i64(&[0]).is_zero());
    }

    #[test]
    fn binomial_and_shift() {
        assert_eq!(
            ExactPolynomial::binomial(-1, 2).to_i64_vec(),
            vec![1, 0, -1]
        );
        assert_eq!(ExactPolynomial::binomial(-1, 0), ExactPolynomial::zero());
        assert_eq!(
            ExactPolynomial::from_i64(&[1, 1]).shift(2).to_i64_vec(),
            vec![0, 0, 1, 1]
        );
        assert!(ExactPolynomial::zero().shift(3).is_zero());
    }

    #[test]
    fn cancellation_drops_degree() {
        let a = ExactPolynomial::from_i64(&[1, 1]);
        let b = ExactPolynomial::from_i64(&[0, 1]);
        assert_eq!((&a - &b).degree(), Some(0));
        assert!((&a - &a).is_zero());
    }
}
