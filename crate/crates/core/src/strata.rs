//! Harder–Narasimhan types, Shatz polygons and stratum codimensions.
//!
//! A type is a list of pieces `(r'_i, d'_i)` with strictly decreasing slopes
//! `d'_i / r'_i`; its polygon has the partial sums as vertices. For genus
//! `g ≥ 1` the codimension of the stratum of a type is
//!
//! ```text
//!   d_P = Σ_{i>j} (r'_i d'_j - r'_j d'_i) + r'_i r'_j (g - 1)
//! ```
//!
//! Every summand is a positive integer: the first part is at least 1 because
//! slopes strictly decrease, the second is nonnegative.
//!
//! # Enumeration bound
//!
//! Group the sum by its smaller index `j`. Writing `(R_j, N_j)` for the rank
//! and degree of the pieces `j, j+1, …, l`, the terms with that `j` add up to
//!
//! ```text
//!   cost_j = R_j d'_j - r'_j N_j + r'_j (R_j - r'_j)(g - 1)
//! ```
//!
//! so `d_P = Σ_j cost_j`, and the suffix starting at `j + 1` is itself a type
//! for `(R_{j+1}, N_{j+1})` whose slopes are capped by `d'_j / r'_j`. For a
//! piece that is not last, `d'_j / r'_j > N_j / R_j` strictly (the average of
//! the suffix lies below its largest slope), and `cost_j ≤ budget` gives
//!
//! ```text
//!   N_j r'_j / R_j  <  d'_j  ≤  (budget - r'_j (R_j - r'_j)(g - 1) + r'_j N_j) / R_j
//! ```
//!
//! With `j = 1` this is `d_P ≥ r d'_1 - r'_1 n`. Each choice is therefore drawn
//! from a finite range, every non-final piece costs at least 1, and the search
//! recursing on `(remaining rank, remaining degree, slope cap, budget)`
//! terminates. For `g = 0` the `(g - 1)` terms are negative, the bound fails,
//! and enumeration is refused.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    pub rank: u32,
    pub degree: i64,
}

impl Piece {
    pub fn new(rank: u32, degree: i64) -> Self {
        Self { rank, degree }
    }

    /// Compares slopes `degree / rank` by cross-multiplication.
    pub fn cmp_slope(&self, other: &Piece) -> Ordering {
        let lhs = i128::from(self.degree) * i128::from(other.rank);
        let rhs = i128::from(other.degree) * i128::from(self.rank);
        lhs.cmp(&rhs)
    }
}

impl From<(u32, i64)> for Piece {
    fn from((rank, degree): (u32, i64)) -> Self {
        Self { rank, degree }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub rank: u32,
    pub degree: i64,
}

impl From<(u32, i64)> for Vertex {
    fn from((rank, degree): (u32, i64)) -> Self {
        Self { rank, degree }
    }
}

/// A Harder–Narasimhan type: pieces of positive rank with strictly
/// decreasing slopes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HNType {
    pieces: Vec<Piece>,
}

impl HNType {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidType {
                index: 0,
                reason: "a type has at least one piece".into(),
            });
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.rank == 0 {
                return Err(Error::InvalidType {
                    index: i,
                    reason: "piece of rank 0".into(),
                });
            }
            if i > 0 && pieces[i - 1].cmp_slope(p) != Ordering::Greater {
                return Err(Error::InvalidType {
                    index: i,
                    reason: "slope does not strictly decrease".into(),
                });
            }
        }
        Ok(Self { pieces })
    }

    pub fn from_pairs(pairs: &[(u32, i64)]) -> Result<Self> {
        Self::new(pairs.iter().copied().map(Piece::from).collect())
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_semistable(&self) -> bool {
        self.pieces.len() == 1
    }

    pub fn total_rank(&self) -> u32 {
        self.pieces.iter().map(|p| p.rank).sum()
    }

    pub fn total_degree(&self) -> i64 {
        self.pieces.iter().map(|p| p.degree).sum()
    }

    /// Codimension of the stratum in genus `g ≥ 1`.
    pub fn codim(&self, genus: u32) -> Result<u64> {
        if genus == 0 {
            return Err(Error::GenusZero);
        }
        Ok(codim_raw(&self.pieces, genus) as u64)
    }
}

pub fn codim(t: &HNType, genus: u32) -> Result<u64> {
    t.codim(genus)
}

fn codim_raw(pieces: &[Piece], genus: u32) -> i128 {
    let gm1 = i128::from(genus) - 1;
    let mut total = 0i128;
    for (j, pj) in pieces.iter().enumerate() {
        for pi in &pieces[j + 1..] {
            let (ri, di) = (i128::from(pi.rank), i128::from(pi.degree));
            let (rj, dj) = (i128::from(pj.rank), i128::from(pj.degree));
            total += ri * dj - rj * di + ri * rj * gm1;
        }
    }
    total
}

impl fmt::Display for HNType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pieces {
            write!(f, "({},{})", p.rank, p.degree)?;
        }
        Ok(())
    }
}

/// Vertices `(0,0) = v_0, …, v_l = (r, n)` of a strictly convex polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShatzPolygon {
    vertices: Vec<Vertex>,
}

impl ShatzPolygon {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        match vertices.first() {
            None => {
                return Err(Error::InvalidType {
                    index: 0,
                    reason: "a polygon has at least two vertices".into(),
                })
            }
            Some(v) if v.rank != 0 || v.degree != 0 => {
                return Err(Error::InvalidType {
                    index: 0,
                    reason: "first vertex must be (0,0)".into(),
                })
            }
            _ => {}
        }
        if vertices.len() < 2 {
            return Err(Error::InvalidType {
                index: 1,
                reason: "a polygon has at least two vertices".into(),
            });
        }
        // strict convexity is exactly the slope condition on the edges
        HNType::new(edges(&vertices)?)?;
        Ok(Self { vertices })
    }

    pub fn from_pairs(pairs: &[(u32, i64)]) -> Result<Self> {
        Self::new(pairs.iter().copied().map(Vertex::from).collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }
}

fn edges(vertices: &[Vertex]) -> Result<Vec<Piece>> {
    vertices
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            if w[1].rank <= w[0].rank {
                return Err(Error::InvalidType {
                    index: i + 1,
                    reason: "ranks must strictly increase along the polygon".into(),
                });
            }
            Ok(Piece::new(w[1].rank - w[0].rank, w[1].degree - w[0].degree))
        })
        .collect()
}

pub fn type_from_vertices(p: &ShatzPolygon) -> HNType {
    HNType {
        pieces: edges(&p.vertices).expect("validated polygon"),
    }
}

pub fn vertices_from_type(t: &HNType) -> ShatzPolygon {
    let mut vertices = Vec::with_capacity(t.len() + 1);
    let mut acc = Vertex { rank: 0, degree: 0 };
    vertices.push(acc);
    for p in t.pieces() {
        acc.rank += p.rank;
        acc.degree += p.degree;
        vertices.push(acc);
    }
    ShatzPolygon { vertices }
}

/// All proper types (at least two pieces) of total `(r, n)` whose stratum has
/// codimension at most `max_codim`, sorted by codimension and then
/// lexicographically by pieces.
pub fn enumerate_types(r: u32, n: i64, genus: u32, max_codim: u64) -> Result<Vec<HNType>> {
    Ok(enumerate_with_codim(r, n, genus, max_codim)?
        .into_iter()
        .map(|(t, _)| t)
        .collect())
}

/// Same as [`enumerate_types`], keeping each codimension alongside its type.
pub fn enumerate_with_codim(
    r: u32,
    n: i64,
    genus: u32,
    max_codim: u64,
) -> Result<Vec<(HNType, u64)>> {
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    if genus == 0 {
        return Err(Error::GenusZero);
    }
    let mut search = Search {
        gm1: i128::from(genus) - 1,
        prefix: Vec::new(),
        out: Vec::new(),
    };
    search.extend(
        i128::from(r),
        i128::from(n),
        None,
        i128::from(max_codim),
        max_codim as i128,
    );
    let mut out = search.out;
    out.sort_by(|(a, ca), (b, cb)| ca.cmp(cb).then_with(|| a.pieces.cmp(&b.pieces)));
    Ok(out)
}

struct Search {
    gm1: i128,
    prefix: Vec<Piece>,
    out: Vec<(HNType, u64)>,
}

impl Search {
    fn extend(&mut self, rank: i128, degree: i128, cap: Option<Piece>, budget: i128, max: i128) {
        // close with the whole remainder as the last piece
        if !self.prefix.is_empty() {
            let last = Piece::new(rank as u32, degree as i64);
            if cap.is_none_or(|c| c.cmp_slope(&last) == Ordering::Greater) {
                self.prefix.push(last);
                let codim = (max - budget) as u64;
                debug_assert_eq!(codim_raw(&self.prefix, (self.gm1 + 1) as u32), max - budget);
                self.out.push((
                    HNType {
                        pieces: self.prefix.clone(),
                    },
                    codim,
                ));
                self.prefix.pop();
            }
        }
        for a in 1..rank {
            let fixed = a * (rank - a) * self.gm1;
            if fixed + 1 > budget {
                continue;
            }
            // a·degree/rank < b  and  rank·b - a·degree + fixed ≤ budget
            let lo = (a * degree).div_euclid(rank) + 1;
            let hi = (budget - fixed + a * degree).div_euclid(rank);
            for b in lo..=hi {
                let piece = Piece::new(a as u32, b as i64);
                if cap.is_some_and(|c| c.cmp_slope(&piece) != Ordering::Greater) {
                    // slopes only grow with b
                    break;
                }
                let cost = rank * b - a * degree + fixed;
                self.prefix.push(piece);
                self.extend(rank - a, degree - b, Some(piece), budget - cost, max);
                self.prefix.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(pairs: &[(u32, i64)]) -> HNType {
        HNType::from_pairs(pairs).unwrap()
    }

    #[test]
    fn polygon_type_conversions() {
        let p = ShatzPolygon::from_pairs(&[(0, 0), (2, 1)]).unwrap();
        assert_eq!(type_from_vertices(&p), t(&[(2, 1)]));
        let p = ShatzPolygon::from_pairs(&[(0, 0), (1, 1), (2, 1)]).unwrap();
        assert_eq!(type_from_vertices(&p), t(&[(1, 1), (1, 0)]));
        let v = vertices_from_type(&t(&[(1, 2), (1, -1)]));
        assert_eq!(
            v,
            ShatzPolygon::from_pairs(&[(0, 0), (1, 2), (2, 1)]).unwrap()
        );
    }

    #[test]
    fn invalid_inputs_name_the_offending_index() {
        let err = HNType::from_pairs(&[(1, 1), (1, 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidType { index: 1, .. }));
        let err = HNType::from_pairs(&[(1, 3), (0, 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidType { index: 1, .. }));
        let err = ShatzPolygon::from_pairs(&[(0, 0), (1, 0), (2, 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidType { index: 1, .. }));
        let err = ShatzPolygon::from_pairs(&[(0, 0), (2, 1), (2, 3)]).unwrap_err();
        assert!(matches!(err, Error::InvalidType { index: 2, .. }));
        let err = ShatzPolygon::from_pairs(&[(1, 0), (2, 1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidType { index: 0, .. }));
    }

    #[test]
    fn codimension_examples() {
        assert_eq!(t(&[(2, 1)]).codim(2).unwrap(), 0);
        assert_eq!(t(&[(1, 1), (1, 0)]).codim(2).unwrap(), 2);
        assert_eq!(t(&[(1, 1), (1, 0), (1, -1)]).codim(2).unwrap(), 7);
        assert!(matches!(t(&[(2, 1)]).codim(0), Err(Error::GenusZero)));
    }

    #[test]
    fn enumeration_examples() {
        assert!(enumerate_types(1, 5, 2, 100).unwrap().is_empty());
        assert_eq!(
            enumerate_with_codim(2, 1, 2, 4).unwrap(),
            vec![(t(&[(1, 1), (1, 0)]), 2), (t(&[(1, 2), (1, -1)]), 4)]
        );
        assert_eq!(
            enumerate_types(2, 0, 2, 3).unwrap(),
            vec![t(&[(1, 1), (1, -1)])]
        );
        assert!(matches!(enumerate_types(2, 1, 0, 4), Err(Error::GenusZero)));
    }

    #[test]
    fn canonical_order_breaks_ties_lexicographically() {
        let types = enumerate_with_codim(3, 1, 2, 10).unwrap();
        for w in types.windows(2) {
            assert!(w[0].1 < w[1].1 || (w[0].1 == w[1].1 && w[0].0.pieces() < w[1].0.pieces()));
        }
    }
}
