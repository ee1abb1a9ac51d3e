use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::{convolve, ExactPolynomial};

/// A power series in `t` known up to and including `t^T`.
///
/// Always holds exactly `T + 1` coefficients. Two series are only meaningfully
/// comparable up to the smaller truncation order ([`TruncatedSeries::agrees_with`]);
/// the derived `PartialEq` is structural and also requires equal orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series from `T + 1` coefficients. Panics on an empty vector.
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series holds at least t^0");
        Self { coeffs }
    }

    pub fn zero(truncation: u32) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); truncation as usize + 1],
        }
    }

    pub fn one(truncation: u32) -> Self {
        Self::from_polynomial(&ExactPolynomial::one(), truncation)
    }

    pub fn from_polynomial(p: &ExactPolynomial, truncation: u32) -> Self {
        let len = truncation as usize + 1;
        Self {
            coeffs: (0..len).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn truncation_order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| c.to_i64().expect("coefficient exceeds i64"))
            .collect()
    }

    /// Drops everything above `t^truncation`. Panics if asked to extend.
    pub fn truncate(&self, truncation: u32) -> Self {
        assert!(
            truncation <= self.truncation_order(),
            "cannot extend a series from order {} to {}",
            self.truncation_order(),
            truncation
        );
        Self {
            coeffs: self.coeffs[..=truncation as usize].to_vec(),
        }
    }

    /// Equality of coefficients up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.coeffs.len().min(other.coeffs.len());
        self.coeffs[..n] == other.coeffs[..n]
    }

    pub fn to_polynomial(&self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: convolve(&self.coeffs, &other.coeffs, n),
        }
    }

    pub fn mul_poly(&self, p: &ExactPolynomial) -> Self {
        Self {
            coeffs: convolve(p.coefficients(), &self.coeffs, self.coeffs.len()),
        }
    }

    /// In-place `self -= t^k · other`, with `other` covering at least
    /// `T - k` orders. Terms of `other` beyond `T` are ignored.
    pub fn sub_shifted(&mut self, other: &Self, k: usize) {
        for (i, c) in other.coeffs.iter().enumerate() {
            let Some(slot) = self.coeffs.get_mut(i + k) else {
                break;
            };
            *slot -= c;
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coefficients(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn binary_ops_use_min_order() {
        let a = s(&[1, 1, 1, 1]);
        let b = s(&[1, -1]);
        assert_eq!(a.mul(&b).to_i64_vec(), vec![1, 0]);
        assert_eq!(a.add(&b).truncation_order(), 1);
    }

    #[test]
    fn sub_shifted_clips_at_order() {
        let mut a = s(&[1, 4, 8, 16, 32]);
        a.sub_shifted(&s(&[1, 8, 30]), 3);
        assert_eq!(a.to_i64_vec(), vec![1, 4, 8, 15, 24]);
    }

    #[test]
    fn agreement_up_to_min() {
        let a = s(&[1, 2, 3]);
        assert!(a.agrees_with(&s(&[1, 2])));
        assert!(!a.agrees_with(&s(&[1, 3, 3, 4])));
        assert_eq!(a.truncate(1), s(&[1, 2]));
    }
}
