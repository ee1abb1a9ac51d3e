//! Exact Poincaré polynomials of symmetric products, divisor varieties,
//! Harder–Narasimhan strata and moduli spaces of stable vector bundles on a
//! smooth projective curve.
//!
//! The computation is organised bottom-up:
//!
//! * [`exactalg`] — dense big-integer polynomials and truncated power series in `t`;
//! * [`genfun`] — closed-form generating functions (symmetric products, the
//!   finite-level partition sum, the stable divisor series);
//! * [`strata`] — Harder–Narasimhan types, Shatz polygons, stratum codimensions
//!   and bounded enumeration;
//! * [`hnrec`] — the stratification recursion producing semistable series and
//!   Betti polynomials of `N(r, n)`, with an optional on-disk memo cache;
//! * [`cli`] — argument parsing, document rendering (text, JSON, LaTeX, CSV).

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod genfun;
pub mod hnrec;
pub mod strata;

pub use error::{Error, Result};
pub use exactalg::{ExactPolynomial, TruncatedSeries};
pub use genfun::{CurveContext, FactoredESeries};
pub use hnrec::{BettiChecks, BettiReport, HnRecursion, MemoStore, ModuliQuery};
pub use strata::{HNType, Piece, ShatzPolygon, Vertex};
