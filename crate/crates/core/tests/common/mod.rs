use std::collections::BTreeSet;

use hnbetti::strata::HNType;

fn rank_splits(r: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut v = Vec::new();
    for first in 1..=r {
        for mut rest in rank_splits(r - first) {
            rest.insert(0, first);
            v.push(rest);
        }
    }
    v
}

/// Every sequence of at least two pieces of total `(r, n)` with each degree in
/// `[-B, B]`, `B = max_codim + |n| + r²`, kept when it is a valid type of
/// codimension at most `max_codim`.
pub fn brute_force_types(r: u32, n: i64, g: u32, max_codim: u64) -> BTreeSet<Vec<(u32, i64)>> {
    let bound = max_codim as i64 + n.abs() + i64::from(r * r);
    let width = (2 * bound + 1) as usize;
    let mut out = BTreeSet::new();
    for ranks in rank_splits(r).into_iter().filter(|s| s.len() >= 2) {
        let free = ranks.len() - 1;
        for code in 0..width.pow(free as u32) {
            let mut c = code;
            let mut degrees = Vec::with_capacity(ranks.len());
            for _ in 0..free {
                degrees.push((c % width) as i64 - bound);
                c /= width;
            }
            let last = n - degrees.iter().sum::<i64>();
            if last.abs() > bound {
                continue;
            }
            degrees.push(last);
            let pairs: Vec<(u32, i64)> = ranks.iter().copied().zip(degrees).collect();
            if let Ok(t) = HNType::from_pairs(&pairs) {
                if t.codim(g).unwrap() <= max_codim {
                    out.insert(pairs);
                }
            }
        }
    }
    out
}

pub fn as_set(types: &[HNType]) -> BTreeSet<Vec<(u32, i64)>> {
    types
        .iter()
        .map(|t| t.pieces().iter().map(|p| (p.rank, p.degree)).collect())
        .collect()
}
