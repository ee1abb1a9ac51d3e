//! Exact arithmetic in `Z[t]` and `Z[[t]]/(t^{T+1})`.
//!
//! Both containers are dense: every series handled by this crate fills all
//! (even) degrees, so sparse storage would only add bookkeeping.
//! Multiplication is schoolbook convolution that skips zero coefficients of
//! the left operand, which keeps products with sparse factors such as
//! `1 - t^{2r}` cheap.

mod poly;
mod series;

pub use poly::ExactPolynomial;
pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn poly_mul(a: &ExactPolynomial, b: &ExactPolynomial) -> ExactPolynomial {
    a * b
}

pub fn poly_pow(p: &ExactPolynomial, e: u32) -> ExactPolynomial {
    p.pow(e)
}

/// Expansion of `1/p` up to and including `t^truncation`.
pub fn series_inverse(p: &ExactPolynomial, truncation: u32) -> Result<TruncatedSeries> {
    let c0 = p.coeff(0);
    if !(c0.is_one() || (-&c0).is_one()) {
        return Err(Error::NonUnitConstant(c0.to_string()));
    }
    let len = truncation as usize + 1;
    let pc = p.coefficients();
    let mut q: Vec<BigInt> = Vec::with_capacity(len);
    q.push(c0.clone());
    for k in 1..len {
        let mut acc = BigInt::zero();
        for (i, pi) in pc.iter().enumerate().take(k + 1).skip(1) {
            if !pi.is_zero() {
                acc += pi * &q[k - i];
            }
        }
        // 1/c0 == c0 for a unit
        if c0.is_negative() {
            q.push(acc);
        } else {
            q.push(-acc);
        }
    }
    Ok(TruncatedSeries::from_coefficients(q))
}

/// Quotient `num / den`, failing if the division leaves a remainder.
pub fn poly_divide_exact(num: &ExactPolynomial, den: &ExactPolynomial) -> Result<ExactPolynomial> {
    let den_deg = den.degree().ok_or(Error::DivisionByZero)?;
    let Some(num_deg) = num.degree() else {
        return Ok(ExactPolynomial::zero());
    };
    if num_deg < den_deg {
        return Err(Error::InexactDivision {
            remainder_degree: num_deg,
        });
    }
    let dc = den.coefficients();
    let lead = &dc[den_deg];
    let mut rem: Vec<BigInt> = num.coefficients().to_vec();
    let mut quot = vec![BigInt::zero(); num_deg - den_deg + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + den_deg];
        if top.is_zero() {
            continue;
        }
        if !(top % lead).is_zero() {
            return Err(Error::InexactDivision {
                remainder_degree: k + den_deg,
            });
        }
        let factor = top / lead;
        for (i, d) in dc.iter().enumerate() {
            if !d.is_zero() {
                rem[k + i] -= &factor * d;
            }
        }
        quot[k] = factor;
    }
    if let Some(pos) = rem.iter().rposition(|c| !c.is_zero()) {
        return Err(Error::InexactDivision {
            remainder_degree: pos,
        });
    }
    Ok(ExactPolynomial::new(quot))
}

pub fn is_palindromic(p: &ExactPolynomial) -> Result<bool> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let c = p.coefficients();
    Ok((0..=deg / 2).all(|i| c[i] == c[deg - i]))
}
