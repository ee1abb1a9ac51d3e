//! The output document and its JSON wire form.
//!
//! Coefficients travel as decimal strings so no consumer ever routes them
//! through a 64-bit float. The same form is used for cache files.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{ExactPolynomial, TruncatedSeries};
use crate::hnrec::{BettiChecks, BettiReport};
use crate::strata::HNType;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Polynomial(ExactPolynomial),
    Series(TruncatedSeries),
    /// Proper types with their codimensions, in canonical order.
    TypeList(Vec<(HNType, u64)>),
    BettiReport(BettiReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metadata {
    pub genus: u32,
    pub rank: Option<u32>,
    pub degree: Option<i64>,
    /// `m` for symmetric products `C^(m)`.
    pub points: Option<u32>,
    /// `deg D` for finite-level divisor varieties.
    pub twist: Option<u32>,
    pub max_codim: Option<u64>,
    pub version: String,
}

impl Default for Metadata {
    fn default() -> Self {
        Self {
            genus: 0,
            rank: None,
            degree: None,
            points: None,
            twist: None,
            max_codim: None,
            version: VERSION.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputDocument {
    pub payload: Payload,
    pub meta: Metadata,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    kind: String,
    genus: u32,
    rank: Option<u32>,
    degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    twist: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_codim: Option<u64>,
    variable: String,
    coefficients: Vec<String>,
    polynomial_degree: Option<usize>,
    truncation: Option<u32>,
    dimension: Option<u64>,
    checks: Option<BettiChecks>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    types: Option<Vec<WireType>>,
    version: String,
}

#[derive(Serialize, Deserialize)]
struct WireType {
    codim: u64,
    pieces: Vec<(u32, i64)>,
}

fn decimal(coeffs: &[BigInt]) -> Vec<String> {
    if coeffs.is_empty() {
        return vec!["0".to_string()];
    }
    coeffs.iter().map(BigInt::to_string).collect()
}

fn parse_decimal(coeffs: &[String]) -> Result<Vec<BigInt>> {
    coeffs
        .iter()
        .map(|c| {
            c.parse::<BigInt>()
                .map_err(|_| Error::Document(format!("coefficient {c:?} is not a decimal integer")))
        })
        .collect()
}

impl OutputDocument {
    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Polynomial(_) => "polynomial",
            Payload::Series(_) => "series",
            Payload::TypeList(_) => "type-list",
            Payload::BettiReport(_) => "betti-report",
        }
    }

    pub fn to_json(&self) -> String {
        let m = &self.meta;
        let mut wire = Wire {
            kind: self.kind().to_string(),
            genus: m.genus,
            rank: m.rank,
            degree: m.degree,
            points: m.points,
            twist: m.twist,
            max_codim: m.max_codim,
            variable: "t".to_string(),
            coefficients: Vec::new(),
            polynomial_degree: None,
            truncation: None,
            dimension: None,
            checks: None,
            types: None,
            version: m.version.clone(),
        };
        match &self.payload {
            Payload::Polynomial(p) => {
                wire.coefficients = decimal(p.coefficients());
                wire.polynomial_degree = p.degree();
            }
            Payload::Series(s) => {
                wire.coefficients = decimal(s.coefficients());
                wire.truncation = Some(s.truncation_order());
            }
            Payload::TypeList(types) => {
                wire.types = Some(
                    types
                        .iter()
                        .map(|(t, codim)| WireType {
                            codim: *codim,
                            pieces: t.pieces().iter().map(|p| (p.rank, p.degree)).collect(),
                        })
                        .collect(),
                );
            }
            Payload::BettiReport(r) => {
                wire.coefficients = decimal(r.polynomial.coefficients());
                wire.polynomial_degree = r.polynomial.degree();
                wire.truncation = Some(r.truncation_used);
                wire.dimension = Some(r.moduli_dimension);
                wire.checks = Some(r.checks);
            }
        }
        let mut text =
            serde_json::to_string_pretty(&wire).expect("wire form is always serializable");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        if wire.variable != "t" {
            return Err(Error::Document(format!(
                "unknown variable {:?}",
                wire.variable
            )));
        }
        let coeffs = parse_decimal(&wire.coefficients)?;
        let payload = match wire.kind.as_str() {
            "polynomial" => Payload::Polynomial(ExactPolynomial::new(coeffs)),
            "series" => {
                let truncation = wire
                    .truncation
                    .ok_or_else(|| Error::Document("series without truncation".into()))?;
                if coeffs.len() != truncation as usize + 1 {
                    return Err(Error::Document(format!(
                        "series of order {truncation} carries {} coefficients",
                        coeffs.len()
                    )));
                }
                Payload::Series(TruncatedSeries::from_coefficients(coeffs))
            }
            "type-list" => {
                let types = wire
                    .types
                    .ok_or_else(|| Error::Document("type-list without types".into()))?
                    .into_iter()
                    .map(|w| {
                        let ty = HNType::from_pairs(&w.pieces)?;
                        if wire.genus > 0 && ty.codim(wire.genus)? != w.codim {
                            return Err(Error::Document(format!(
                                "wrong codimension recorded for {ty}"
                            )));
                        }
                        Ok((ty, w.codim))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Payload::TypeList(types)
            }
            "betti-report" => {
                let missing = |f: &str| Error::Document(format!("betti-report without {f}"));
                Payload::BettiReport(BettiReport {
                    polynomial: ExactPolynomial::new(coeffs),
                    moduli_dimension: wire.dimension.ok_or_else(|| missing("dimension"))?,
                    truncation_used: wire.truncation.ok_or_else(|| missing("truncation"))?,
                    checks: wire.checks.ok_or_else(|| missing("checks"))?,
                })
            }
            other => return Err(Error::Document(format!("unknown kind {other:?}"))),
        };
        Ok(Self {
            payload,
            meta: Metadata {
                genus: wire.genus,
                rank: wire.rank,
                degree: wire.degree,
                points: wire.points,
                twist: wire.twist,
                max_codim: wire.max_codim,
                version: wire.version,
            },
        })
    }
}
