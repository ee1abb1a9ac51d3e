//! The stratification recursion for semistable divisors and the Betti
//! polynomials of `N(r, n)`.
//!
//! The stable divisor series splits over Harder–Narasimhan strata as
//!
//! ```text
//!   P(Div^{r,n}) = P(ss^{r,n}) + Σ_{P proper} t^{2 d_P} ∏_j P(ss^{r'_j, d'_j})
//! ```
//!
//! so the semistable series is the divisor series minus finitely many stratum
//! contributions below any fixed order. Every piece of a proper type has
//! smaller rank, and rank 1 is the base case: a rank-1 module has no proper
//! submodule of positive rank, so everything is semistable. For coprime
//! `(r, n)` the moduli space satisfies `P(N(r, n)) = (1 - t²) P(ss^{r,n})`.

mod memo;

pub use memo::{MemoKey, MemoStore, CACHE_DIR_ENV};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{
    is_palindromic, poly_divide_exact, series_inverse, ExactPolynomial, TruncatedSeries,
};
use crate::genfun::{div_stable_series, CurveContext};
use crate::strata::{enumerate_with_codim, HNType};

/// Extra coefficients computed past `2·dim` and required to vanish.
pub const TRUNCATION_SLACK: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModuliQuery {
    pub genus: u32,
    pub rank: u32,
    pub degree: i64,
    /// `None` means `2·dim + TRUNCATION_SLACK`.
    pub truncation: Option<u32>,
}

impl ModuliQuery {
    pub fn new(genus: u32, rank: u32, degree: i64) -> Self {
        Self {
            genus,
            rank,
            degree,
            truncation: None,
        }
    }

    pub fn with_truncation(mut self, truncation: u32) -> Self {
        self.truncation = Some(truncation);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.genus == 0 {
            return Err(Error::GenusZero);
        }
        if self.rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(())
    }

    pub fn resolved_truncation(&self) -> Result<u32> {
        match self.truncation {
            Some(t) => Ok(t),
            None => Ok(2 * dim_moduli_u32(self.genus, self.rank)? + TRUNCATION_SLACK),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiChecks {
    pub palindromic: bool,
    pub degree_matches_2dim: bool,
    pub tail_vanishes: bool,
    pub nonnegative: bool,
}

impl BettiChecks {
    pub fn all_pass(&self) -> bool {
        self.palindromic && self.degree_matches_2dim && self.tail_vanishes && self.nonnegative
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiReport {
    pub polynomial: ExactPolynomial,
    pub moduli_dimension: u64,
    pub truncation_used: u32,
    pub checks: BettiChecks,
}

/// `dim N(r, n) = 1 + r²(g - 1)`.
pub fn dim_moduli(genus: u32, rank: u32) -> Result<u64> {
    if genus == 0 {
        return Err(Error::GenusZero);
    }
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(1 + u64::from(rank).pow(2) * (u64::from(genus) - 1))
}

fn dim_moduli_u32(genus: u32, rank: u32) -> Result<u32> {
    let d = dim_moduli(genus, rank)?;
    u32::try_from(d)
        .ok()
        .filter(|d| {
            d.checked_mul(2)
                .and_then(|x| x.checked_add(TRUNCATION_SLACK))
                .is_some()
        })
        .ok_or_else(|| Error::TooLarge(format!("dim N({rank}, n) in genus {genus} is {d}")))
}

/// Runs the recursion against a [`MemoStore`].
#[derive(Debug, Default)]
pub struct HnRecursion {
    memo: MemoStore,
}

impl HnRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_memo(memo: MemoStore) -> Self {
        Self { memo }
    }

    pub fn memo(&self) -> &MemoStore {
        &self.memo
    }

    /// `P((Div^{r,n})^{ss}; t)` up to `t^T`.
    pub fn ss_series(&self, q: &ModuliQuery) -> Result<TruncatedSeries> {
        q.validate()?;
        let truncation = q.resolved_truncation()?;
        self.ss(q.genus, q.rank, q.degree, truncation)
    }

    fn ss(&self, genus: u32, rank: u32, degree: i64, truncation: u32) -> Result<TruncatedSeries> {
        let key = MemoKey {
            genus,
            rank,
            degree,
            truncation,
        };
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit);
        }
        let ctx = CurveContext::new(genus);
        let mut series = div_stable_series(ctx, rank, truncation)?;
        if rank > 1 {
            for (ty, codim) in enumerate_with_codim(rank, degree, genus, u64::from(truncation / 2))?
            {
                let shift = 2 * codim as u32;
                let stratum = self.stratum(genus, &ty, truncation - shift)?;
                series.sub_shifted(&stratum, shift as usize);
            }
        }
        self.memo.put(key, &series)?;
        Ok(series)
    }

    /// `P(S_P; t) = ∏_j P((Div^{r'_j, d'_j})^{ss}; t)` up to `t^T`.
    pub fn stratum_series(
        &self,
        genus: u32,
        ty: &HNType,
        truncation: u32,
    ) -> Result<TruncatedSeries> {
        if genus == 0 {
            return Err(Error::GenusZero);
        }
        self.stratum(genus, ty, truncation)
    }

    fn stratum(&self, genus: u32, ty: &HNType, truncation: u32) -> Result<TruncatedSeries> {
        let mut acc: Option<TruncatedSeries> = None;
        for piece in ty.pieces() {
            let s = self.ss(genus, piece.rank, piece.degree, truncation)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.mul(&s),
            });
        }
        Ok(acc.expect("a type has at least one piece"))
    }

    /// Betti polynomial of `N(r, n)` for coprime `(r, n)`, with every
    /// structural check enforced.
    pub fn betti_poly(&self, q: &ModuliQuery) -> Result<BettiReport> {
        let report = self.betti_unchecked(q)?;
        if !report.checks.all_pass() {
            let series = self.ss_series(&q.with_truncation(report.truncation_used))?;
            return Err(check_failure(q, &report, &series));
        }
        Ok(report)
    }

    /// Same as [`HnRecursion::betti_poly`] but returns the report even when a
    /// check fails.
    #[cfg(feature = "unsafe-skip-checks")]
    pub fn betti_poly_unverified(&self, q: &ModuliQuery) -> Result<BettiReport> {
        self.betti_unchecked(q)
    }

    fn betti_unchecked(&self, q: &ModuliQuery) -> Result<BettiReport> {
        q.validate()?;
        let gcd = i64::from(q.rank).gcd(&q.degree);
        if gcd != 1 {
            return Err(Error::NotCoprime {
                rank: q.rank,
                degree: q.degree,
                gcd,
            });
        }
        let dim = dim_moduli_u32(q.genus, q.rank)?;
        let truncation = q.resolved_truncation()?;
        if truncation < 2 * dim {
            return Err(Error::TruncationTooSmall {
                given: truncation,
                required: 2 * dim,
            });
        }
        let ss = self.ss(q.genus, q.rank, q.degree, truncation)?;
        Ok(assemble_report(&ss, dim))
    }
}

/// Multiplies by `1 - t²` and runs the structural checks.
fn assemble_report(ss: &TruncatedSeries, dim: u32) -> BettiReport {
    let full = ss.mul_poly(&ExactPolynomial::binomial(-1, 2));
    let top = 2 * dim as usize;
    let tail_vanishes = full.coefficients()[top + 1..]
        .iter()
        .all(|c| c == &0.into());
    let polynomial = full.truncate(top as u32).to_polynomial();
    let checks = BettiChecks {
        palindromic: is_palindromic(&polynomial).unwrap_or(false),
        degree_matches_2dim: polynomial.degree() == Some(top),
        tail_vanishes,
        nonnegative: polynomial.is_nonnegative(),
    };
    BettiReport {
        polynomial,
        moduli_dimension: u64::from(dim),
        truncation_used: ss.truncation_order(),
        checks,
    }
}

fn check_failure(q: &ModuliQuery, report: &BettiReport, ss: &TruncatedSeries) -> Error {
    let c = &report.checks;
    let failed: Vec<&str> = [
        (c.palindromic, "palindromic"),
        (c.degree_matches_2dim, "degree_matches_2dim"),
        (c.tail_vanishes, "tail_vanishes"),
        (c.nonnegative, "nonnegative"),
    ]
    .into_iter()
    .filter(|(ok, _)| !ok)
    .map(|(_, name)| name)
    .collect();
    let full = ss.mul_poly(&ExactPolynomial::binomial(-1, 2));
    let mut dump = format!(
        "query: g={} r={} n={} T={} dim={}\n",
        q.genus, q.rank, q.degree, report.truncation_used, report.moduli_dimension
    );
    for (i, (s, b)) in ss
        .coefficients()
        .iter()
        .zip(full.coefficients())
        .enumerate()
    {
        let mark = if i as u64 > 2 * report.moduli_dimension && b != &0.into() {
            "  <-- tail"
        } else {
            ""
        };
        dump.push_str(&format!("t^{i}: ss={s} (1-t^2)*ss={b}{mark}\n"));
    }
    Error::CheckFailed {
        summary: format!("failed checks: {}", failed.join(", ")),
        dump,
    }
}

/// Rank-2 semistable series from the closed-form geometric sum over strata.
///
/// Proper rank-2 types are `[(1, d), (1, n - d)]` with `2d > n`, of codimension
/// `2d - n + g - 1`. For odd `n` the exponents `2(2d - n + g - 1)` run over an
/// arithmetic progression of step 4, so the stratum sum is
/// `P1² · t^{e0} / (1 - t⁴)` with `P1 = (1 + t)^{2g} / (1 - t²)`. Shares no code
/// with the recursion or the type enumerator.
pub fn rank2_oracle(genus: u32, degree: i64, truncation: u32) -> Result<TruncatedSeries> {
    let (numerator, denominator) = rank2_closed_form(genus, degree)?;
    Ok(TruncatedSeries::from_polynomial(&numerator, truncation)
        .mul(&series_inverse(&denominator, truncation)?))
}

/// `(1 - t²)` times [`rank2_oracle`], obtained by exact polynomial division.
pub fn rank2_betti_oracle(genus: u32, degree: i64) -> Result<ExactPolynomial> {
    let (numerator, denominator) = rank2_closed_form(genus, degree)?;
    let reduced = poly_divide_exact(&denominator, &ExactPolynomial::binomial(-1, 2))?;
    poly_divide_exact(&numerator, &reduced)
}

/// `(numerator, denominator)` of the rank-2 semistable series:
/// `(1+t)^{2g} [(1+t³)^{2g} - t^{e0} (1+t)^{2g}] / ((1 - t⁴)(1 - t²)²)`.
fn rank2_closed_form(genus: u32, degree: i64) -> Result<(ExactPolynomial, ExactPolynomial)> {
    if genus == 0 {
        return Err(Error::GenusZero);
    }
    if degree.rem_euclid(2) == 0 {
        return Err(Error::EvenDegree(degree));
    }
    let two_g = 2 * genus;
    let d_min = degree.div_euclid(2) + 1;
    let e0 = (2 * (2 * d_min - degree + i64::from(genus) - 1)) as usize;
    let jac = ExactPolynomial::binomial(1, 1).pow(two_g);
    let first_stratum_term = jac.shift(e0);
    let div2 = ExactPolynomial::binomial(1, 3).pow(two_g);
    let numerator = &jac * &(&div2 - &first_stratum_term);
    let one_minus_t2 = ExactPolynomial::binomial(-1, 2);
    let denominator = &ExactPolynomial::binomial(-1, 4) * &(&one_minus_t2 * &one_minus_t2);
    Ok((numerator, denominator))
}
