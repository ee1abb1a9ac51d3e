//! Command-line surface.
//!
//! Exit codes: `0` success, `2` invalid arguments, `3` internal check failure
//! (with a diagnostic dump on stderr), `4` cache warning under `--strict-cache`.

pub mod document;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::genfun::{div_finite_poly, div_stable_series, sym_product_poly, CurveContext};
use crate::hnrec::{HnRecursion, MemoStore, ModuliQuery};
use crate::strata::enumerate_with_codim;
use document::{Metadata, OutputDocument, Payload};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_CACHE: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "hnbetti",
    version,
    about = "Exact Betti numbers of moduli of vector bundles on curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Persistent memo cache directory (overrides HNBETTI_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Treat cache warnings (corrupt entries, failed writes) as fatal.
    #[arg(long, global = true)]
    strict_cache: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Poincaré polynomial of the symmetric product C^(M).
    Sympoly {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        points: u32,
    },
    /// Poincaré polynomial of the finite-level divisor variety Div(D), deg D = DEGD.
    Divpoly {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        rank: u32,
        #[arg(long, allow_negative_numbers = true)]
        deg: i64,
        #[arg(long)]
        twist: u32,
    },
    /// Stable Poincaré series of all rank-R divisors.
    Divseries {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        rank: u32,
        #[arg(long, allow_negative_numbers = true)]
        truncate: i64,
        /// Accepted for symmetry with the other commands; the series does not depend on it.
        #[arg(long, allow_negative_numbers = true)]
        deg: Option<i64>,
    },
    /// Harder–Narasimhan types of bounded codimension.
    Polygons {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        rank: u32,
        #[arg(long, allow_negative_numbers = true)]
        deg: i64,
        #[arg(long, allow_negative_numbers = true)]
        max_codim: i64,
    },
    /// Poincaré series of the semistable divisors.
    Ssseries {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        rank: u32,
        #[arg(long, allow_negative_numbers = true)]
        deg: i64,
        #[arg(long, allow_negative_numbers = true)]
        truncate: i64,
    },
    /// Betti polynomial of the moduli space N(R, N) for coprime R, N.
    Betti {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        rank: u32,
        #[arg(long, allow_negative_numbers = true)]
        deg: i64,
        #[arg(long, allow_negative_numbers = true)]
        truncate: Option<i64>,
        /// Emit the polynomial even when structural checks fail.
        #[cfg(feature = "unsafe-skip-checks")]
        #[arg(long)]
        skip_checks: bool,
    },
}

enum Failure {
    Invalid(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CheckFailed { .. }
        | Error::MemoConflict { .. }
        | Error::InexactDivision { .. }
        | Error::DivisionByZero
        | Error::NonUnitConstant(_)
        | Error::Document(_) => EXIT_CHECK_FAILED,
        Error::Cache { .. } => EXIT_CACHE,
        _ => EXIT_INVALID,
    }
}

fn nonnegative(name: &str, v: i64) -> Result<u32, Failure> {
    u32::try_from(v)
        .map_err(|_| Failure::Invalid(format!("--{name} must be a nonnegative integer, got {v}")))
}

fn need_genus(genus: u32) -> Result<(), Failure> {
    if genus == 0 {
        return Err(Failure::Lib(Error::GenusZero));
    }
    Ok(())
}

fn memo_for(cache_dir: Option<PathBuf>) -> MemoStore {
    match cache_dir {
        Some(dir) => MemoStore::with_cache_dir(dir),
        None => MemoStore::from_env(),
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the rendered document to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };
    let format = cli.format;
    let strict = cli.strict_cache;
    let memo = memo_for(cli.cache_dir);
    let rec = HnRecursion::with_memo(memo);

    let result = execute(cli.command, &rec);

    let warnings = rec.memo().warnings();
    for w in &warnings {
        let _ = writeln!(err, "warning: {w}");
    }

    let doc = match result {
        Ok(doc) => doc,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INVALID;
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if strict && !warnings.is_empty() {
        let _ = writeln!(err, "error: cache warnings with --strict-cache");
        return EXIT_CACHE;
    }
    let rendered = match format {
        Format::Text => render::render_text(&doc),
        Format::Json => doc.to_json(),
        Format::Latex => render::render_latex(&doc),
        Format::Csv => render::render_csv(&doc),
    };
    if out.write_all(rendered.as_bytes()).is_err() {
        return EXIT_INVALID;
    }
    EXIT_OK
}

fn execute(command: Command, rec: &HnRecursion) -> Result<OutputDocument, Failure> {
    let doc = match command {
        Command::Sympoly { genus, points } => OutputDocument {
            payload: Payload::Polynomial(sym_product_poly(CurveContext::new(genus), points)),
            meta: Metadata {
                genus,
                points: Some(points),
                ..Metadata::default()
            },
        },
        Command::Divpoly {
            genus,
            rank,
            deg,
            twist,
        } => OutputDocument {
            payload: Payload::Polynomial(div_finite_poly(
                CurveContext::new(genus),
                rank,
                deg,
                twist,
            )?),
            meta: Metadata {
                genus,
                rank: Some(rank),
                degree: Some(deg),
                twist: Some(twist),
                ..Metadata::default()
            },
        },
        Command::Divseries {
            genus,
            rank,
            truncate,
            deg: _,
        } => {
            let t = nonnegative("truncate", truncate)?;
            OutputDocument {
                payload: Payload::Series(div_stable_series(CurveContext::new(genus), rank, t)?),
                meta: Metadata {
                    genus,
                    rank: Some(rank),
                    ..Metadata::default()
                },
            }
        }
        Command::Polygons {
            genus,
            rank,
            deg,
            max_codim,
        } => {
            need_genus(genus)?;
            let c = nonnegative("max-codim", max_codim)?;
            OutputDocument {
                payload: Payload::TypeList(enumerate_with_codim(rank, deg, genus, u64::from(c))?),
                meta: Metadata {
                    genus,
                    rank: Some(rank),
                    degree: Some(deg),
                    max_codim: Some(u64::from(c)),
                    ..Metadata::default()
                },
            }
        }
        Command::Ssseries {
            genus,
            rank,
            deg,
            truncate,
        } => {
            need_genus(genus)?;
            let t = nonnegative("truncate", truncate)?;
            let q = ModuliQuery::new(genus, rank, deg).with_truncation(t);
            OutputDocument {
                payload: Payload::Series(rec.ss_series(&q)?),
                meta: Metadata {
                    genus,
                    rank: Some(rank),
                    degree: Some(deg),
                    ..Metadata::default()
                },
            }
        }
        Command::Betti {
            genus,
            rank,
            deg,
            truncate,
            #[cfg(feature = "unsafe-skip-checks")]
            skip_checks,
        } => {
            need_genus(genus)?;
            let mut q = ModuliQuery::new(genus, rank, deg);
            if let Some(t) = truncate {
                q = q.with_truncation(nonnegative("truncate", t)?);
            }
            #[cfg(feature = "unsafe-skip-checks")]
            let report = if skip_checks {
                rec.betti_poly_unverified(&q)?
            } else {
                rec.betti_poly(&q)?
            };
            #[cfg(not(feature = "unsafe-skip-checks"))]
            let report = rec.betti_poly(&q)?;
            OutputDocument {
                payload: Payload::BettiReport(report),
                meta: Metadata {
                    genus,
                    rank: Some(rank),
                    degree: Some(deg),
                    ..Metadata::default()
                },
            }
        }
    };
    Ok(doc)
}
