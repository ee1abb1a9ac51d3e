//! Closed-form generating functions for divisors on a curve.
//!
//! Symmetric products `C^(m)` are read off from
//! `Σ_m P(C^(m)) u^m = (1 + ut)^{2g} / ((1 - u)(1 - ut²))`. Rank-`r` divisor
//! varieties `Div(D)` are sums over compositions of `m = r·deg D - n`, and the
//! ind-variety of all divisors has the stable series
//!
//! ```text
//!   ∏_{j=1}^{r} (1 + t^{2j-1})^{2g} / ((1 - t^{2r}) ∏_{j=1}^{r-1} (1 - t^{2j})²)
//! ```
//!
//! which is computed twice: directly ([`div_stable_series`]) and as minus the
//! residue at `u = 1` of the factored bivariate series ([`residue_series`]).

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{series_inverse, ExactPolynomial, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveContext {
    pub genus: u32,
}

impl CurveContext {
    pub fn new(genus: u32) -> Self {
        Self { genus }
    }
}

/// `P(C^(m); t)`, the coefficient of `u^m` in `(1 + ut)^{2g} / ((1 - u)(1 - ut²))`.
pub fn sym_product_poly(ctx: CurveContext, m: u32) -> ExactPolynomial {
    let two_g = 2 * ctx.genus;
    let m = m as usize;
    let mut coeffs = vec![BigInt::zero(); 2 * m + 1];
    // u^k t^k from the numerator, u^a from 1/(1-u), u^b t^{2b} from 1/(1-ut²)
    for k in 0..=m.min(two_g as usize) {
        let c = binomial(BigInt::from(two_g), BigInt::from(k));
        for b in 0..=(m - k) {
            coeffs[k + 2 * b] += &c;
        }
    }
    ExactPolynomial::new(coeffs)
}

/// Calls `visit` on every composition of `total` into `parts` nonnegative
/// integers, in lexicographic order.
pub fn for_each_composition(total: u32, parts: usize, mut visit: impl FnMut(&[u32])) {
    fn rec(slot: usize, left: u32, buf: &mut [u32], visit: &mut dyn FnMut(&[u32])) {
        if slot + 1 == buf.len() {
            buf[slot] = left;
            visit(buf);
            return;
        }
        for v in 0..=left {
            buf[slot] = v;
            rec(slot + 1, left - v, buf, visit);
        }
    }
    if parts == 0 {
        if total == 0 {
            visit(&[]);
        }
        return;
    }
    let mut buf = vec![0; parts];
    rec(0, total, &mut buf, &mut visit);
}

/// Poincaré polynomial of the finite-level divisor variety `Div(D)` of rank
/// `r` and degree `n`, for an effective `D` of degree `deg_d`:
/// `Σ_m t^{2 Σ (i-1) m_i} ∏_i P(C^(m_i))` over compositions of `r·deg D - n`.
pub fn div_finite_poly(ctx: CurveContext, r: u32, n: i64, deg_d: u32) -> Result<ExactPolynomial> {
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    let m = i64::from(r) * i64::from(deg_d) - n;
    if m < 0 {
        return Err(Error::EmptyDivisorVariety(m));
    }
    let m = m as u32;
    let sym: Vec<ExactPolynomial> = (0..=m).map(|k| sym_product_poly(ctx, k)).collect();
    let top = 2 * m as usize * r as usize;
    let mut acc = vec![BigInt::zero(); top + 1];
    for_each_composition(m, r as usize, |parts| {
        let weight: usize = parts
            .iter()
            .enumerate()
            .map(|(i, &mi)| i * mi as usize)
            .sum();
        let term = parts
            .iter()
            .fold(ExactPolynomial::one(), |p, &mi| &p * &sym[mi as usize]);
        for (i, c) in term.coefficients().iter().enumerate() {
            acc[2 * weight + i] += c;
        }
    });
    Ok(ExactPolynomial::new(acc))
}

/// Stable Poincaré series of the ind-variety of rank-`r` divisors, up to `t^T`.
///
/// Independent of the degree `n`. The denominator is assembled as one
/// polynomial and inverted with [`series_inverse`].
pub fn div_stable_series(ctx: CurveContext, r: u32, truncation: u32) -> Result<TruncatedSeries> {
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    let mut numerator = TruncatedSeries::one(truncation);
    for j in 1..=r as usize {
        let factor = ExactPolynomial::binomial(1, 2 * j - 1).pow(2 * ctx.genus);
        numerator = numerator.mul_poly(&factor);
    }
    let mut denominator = ExactPolynomial::binomial(-1, 2 * r as usize);
    for j in 1..r as usize {
        let f = ExactPolynomial::binomial(-1, 2 * j);
        denominator = &denominator * &(&f * &f);
    }
    Ok(numerator.mul(&series_inverse(&denominator, truncation)?))
}

/// One linear-in-`u` factor of `E(t, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EFactor {
    /// `(1 + u·t^e)^multiplicity` in the numerator.
    Numerator { t_exponent: u32, multiplicity: u32 },
    /// `(1 - u·t^e)` in the denominator.
    Denominator { t_exponent: u32 },
}

impl EFactor {
    /// True when the factor vanishes at `u = 1`, i.e. `1 - u·t⁰`.
    pub fn is_pole(&self) -> bool {
        matches!(self, EFactor::Denominator { t_exponent: 0 })
    }
}

/// `E(t, u) = ∏_{j=0}^{r-1} (1 + u t^{2j+1})^{2g} / ((1 - u t^{2j})(1 - u t^{2j+2}))`,
/// kept as its list of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredESeries {
    genus: u32,
    rank: u32,
    factors: Vec<EFactor>,
}

impl FactoredESeries {
    pub fn new(ctx: CurveContext, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let factors = (0..rank)
            .flat_map(|j| {
                [
                    EFactor::Numerator {
                        t_exponent: 2 * j + 1,
                        multiplicity: 2 * ctx.genus,
                    },
                    EFactor::Denominator { t_exponent: 2 * j },
                    EFactor::Denominator {
                        t_exponent: 2 * j + 2,
                    },
                ]
            })
            .collect::<Vec<_>>();
        debug_assert_eq!(factors.iter().filter(|f| f.is_pole()).count(), 1);
        Ok(Self {
            genus: ctx.genus,
            rank,
            factors,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn factors(&self) -> &[EFactor] {
        &self.factors
    }
}

/// `-Res_{u=1} E(t, u)` up to `t^T`.
///
/// The only factor vanishing at `u = 1` is the simple pole `1/(1 - u)`, so the
/// residue is the remaining product evaluated at `u = 1`. Each surviving
/// denominator `1/(1 - t^e)` is expanded as its own geometric series.
pub fn residue_series(e: &FactoredESeries, truncation: u32) -> TruncatedSeries {
    let len = truncation as usize + 1;
    let mut acc = TruncatedSeries::one(truncation);
    let mut pole_seen = false;
    for factor in e.factors() {
        match *factor {
            EFactor::Numerator {
                t_exponent,
                multiplicity,
            } => {
                let f = ExactPolynomial::binomial(1, t_exponent as usize).pow(multiplicity);
                acc = acc.mul_poly(&f);
            }
            EFactor::Denominator { t_exponent: 0 } => {
                assert!(!pole_seen, "E(t,u) has a double pole at u = 1");
                pole_seen = true;
            }
            EFactor::Denominator { t_exponent } => {
                let mut geo = vec![BigInt::zero(); len];
                for slot in geo.iter_mut().step_by(t_exponent as usize) {
                    *slot = BigInt::one();
                }
                acc = acc.mul(&TruncatedSeries::from_coefficients(geo));
            }
        }
    }
    assert!(pole_seen, "E(t,u) has no pole at u = 1");
    acc
}
