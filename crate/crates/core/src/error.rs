use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series inverse needs constant term +1 or -1, got {0}")]
    NonUnitConstant(String),

    #[error("exact division left a nonzero remainder of degree {remainder_degree}")]
    InexactDivision { remainder_degree: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("r*deg D - n = {0} is negative: the divisor variety is empty")]
    EmptyDivisorVariety(i64),

    #[error("invalid Harder-Narasimhan data at index {index}: {reason}")]
    InvalidType { index: usize, reason: String },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("genus 0 is not supported by the stratification recursion")]
    GenusZero,

    #[error("rank {rank} and degree {degree} are not coprime (gcd = {gcd}); Betti polynomials require gcd(r, n) = 1")]
    NotCoprime { rank: u32, degree: i64, gcd: i64 },

    #[error("the rank-2 oracle needs an odd degree, got {0}")]
    EvenDegree(i64),

    #[error("truncation {given} is below the required minimum {required}")]
    TruncationTooSmall { given: u32, required: u32 },

    #[error("parameters out of range: {0}")]
    TooLarge(String),

    #[error("structural check failed: {summary}\n{dump}")]
    CheckFailed { summary: String, dump: String },

    #[error("memo conflict for (g={genus}, r={rank}, n={degree}, T={truncation}): a different series is already stored")]
    MemoConflict {
        genus: u32,
        rank: u32,
        degree: i64,
        truncation: u32,
    },

    #[error("cache I/O at {path}: {message}")]
    Cache { path: PathBuf, message: String },

    #[error("malformed document: {0}")]
    Document(String),
}
