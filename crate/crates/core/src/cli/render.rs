//! Text, LaTeX and CSV renderings. All output uses `\n` line endings and no
//! locale-dependent formatting.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::document::{OutputDocument, Payload};
use crate::hnrec::BettiChecks;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermStyle {
    /// `4t^2`
    Plain,
    /// `4t^{2}`
    Latex,
}

fn power(style: TermStyle, e: usize) -> String {
    match (e, style) {
        (0, _) => String::new(),
        (1, _) => "t".to_string(),
        (_, TermStyle::Plain) => format!("t^{e}"),
        (_, TermStyle::Latex) => format!("t^{{{e}}}"),
    }
}

/// Nonzero terms in increasing exponent, `"0"` when there are none.
pub fn format_terms(coeffs: &[BigInt], style: TermStyle) -> String {
    let mut out = String::new();
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        if e == 0 || !abs.is_one() {
            write!(out, "{abs}").unwrap();
        }
        out.push_str(&power(style, e));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn big_o(style: TermStyle, order: u32) -> String {
    format!("O({})", power(style, order as usize + 1))
}

fn checks_summary(c: &BettiChecks) -> String {
    if c.all_pass() {
        return "all pass".to_string();
    }
    let failed: Vec<&str> = [
        (c.palindromic, "palindromic"),
        (c.degree_matches_2dim, "degree"),
        (c.tail_vanishes, "tail"),
        (c.nonnegative, "nonnegative"),
    ]
    .into_iter()
    .filter(|(ok, _)| !ok)
    .map(|(_, n)| n)
    .collect();
    format!("FAILED {}", failed.join(","))
}

fn footer(doc: &OutputDocument) -> String {
    let m = &doc.meta;
    let mut out = format!("# {} genus={}", doc.kind(), m.genus);
    let mut field = |name: &str, v: Option<String>| {
        if let Some(v) = v {
            write!(out, " {name}={v}").unwrap();
        }
    };
    field("rank", m.rank.map(|v| v.to_string()));
    field("degree", m.degree.map(|v| v.to_string()));
    field("points", m.points.map(|v| v.to_string()));
    field("twist", m.twist.map(|v| v.to_string()));
    field("max_codim", m.max_codim.map(|v| v.to_string()));
    let truncation = match &doc.payload {
        Payload::Series(s) => Some(s.truncation_order()),
        Payload::BettiReport(r) => Some(r.truncation_used),
        _ => None,
    };
    field("truncation", truncation.map(|v| v.to_string()));
    write!(out, " version={}", m.version).unwrap();
    out
}

pub fn render_text(doc: &OutputDocument) -> String {
    let body = match &doc.payload {
        Payload::Polynomial(p) => format_terms(p.coefficients(), TermStyle::Plain),
        Payload::Series(s) => format!(
            "{} + {}",
            format_terms(s.coefficients(), TermStyle::Plain),
            big_o(TermStyle::Plain, s.truncation_order())
        ),
        Payload::TypeList(types) if types.is_empty() => "no proper types".to_string(),
        Payload::TypeList(types) => types
            .iter()
            .map(|(t, c)| format!("codim {c}: {t}"))
            .collect::<Vec<_>>()
            .join("\n"),
        Payload::BettiReport(r) => format!(
            "{}  (dim {}, checks: {})",
            format_terms(r.polynomial.coefficients(), TermStyle::Plain),
            r.moduli_dimension,
            checks_summary(&r.checks)
        ),
    };
    format!("{body}\n{}\n", footer(doc))
}

pub fn render_latex(doc: &OutputDocument) -> String {
    let body = match &doc.payload {
        Payload::Polynomial(p) => format_terms(p.coefficients(), TermStyle::Latex),
        Payload::Series(s) => format!(
            "{} + {}",
            format_terms(s.coefficients(), TermStyle::Latex),
            big_o(TermStyle::Latex, s.truncation_order())
        ),
        Payload::TypeList(types) if types.is_empty() => "\\emptyset".to_string(),
        Payload::TypeList(types) => types
            .iter()
            .map(|(t, c)| {
                let pieces: Vec<String> = t
                    .pieces()
                    .iter()
                    .map(|p| format!("({},{})", p.rank, p.degree))
                    .collect();
                format!("[{}]_{{{c}}}", pieces.join(","))
            })
            .collect::<Vec<_>>()
            .join(r",\; "),
        Payload::BettiReport(r) => format_terms(r.polynomial.coefficients(), TermStyle::Latex),
    };
    format!("{body}\n")
}

pub fn render_csv(doc: &OutputDocument) -> String {
    let mut out = String::new();
    let rows = |out: &mut String, coeffs: &[BigInt]| {
        if coeffs.is_empty() {
            out.push_str("0,0\n");
        }
        for (e, c) in coeffs.iter().enumerate() {
            writeln!(out, "{e},{c}").unwrap();
        }
    };
    match &doc.payload {
        Payload::Polynomial(p) => rows(&mut out, p.coefficients()),
        Payload::Series(s) => rows(&mut out, s.coefficients()),
        Payload::BettiReport(r) => rows(&mut out, r.polynomial.coefficients()),
        Payload::TypeList(types) => {
            for (t, c) in types {
                write!(out, "{c},").unwrap();
                for p in t.pieces() {
                    write!(out, "({};{})", p.rank, p.degree).unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}
