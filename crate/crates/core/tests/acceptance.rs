//! Acceptance criteria. Every equality is exact; every runtime budget is
//! enforced. Prints one PASS/FAIL line per criterion and exits nonzero if any
//! criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use hnbetti::exactalg::{is_palindromic, ExactPolynomial, TruncatedSeries};
use hnbetti::genfun::{
    div_finite_poly, div_stable_series, residue_series, CurveContext, FactoredESeries,
};
use hnbetti::hnrec::{dim_moduli, rank2_betti_oracle, rank2_oracle, HnRecursion, ModuliQuery};
use hnbetti::strata::{enumerate_types, enumerate_with_codim};
use num_bigint::BigInt;
use num_integer::binomial;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Outcome {
    let elapsed = start.elapsed();
    ensure(elapsed < budget, || {
        format!("{what} took {elapsed:?}, budget {budget:?}")
    })
}

fn cli(args: &[&str], cache: Option<&std::path::Path>) -> (i32, String) {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hnbetti"));
    c.env_remove("HNBETTI_CACHE_DIR").args(args);
    if let Some(dir) = cache {
        c.arg("--cache-dir").arg(dir);
    }
    let o = c.output().expect("run hnbetti");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8(o.stdout).unwrap(),
    )
}

fn betti_times_one_minus_t2(series: &TruncatedSeries, dim: u64) -> ExactPolynomial {
    let full = series.mul_poly(&ExactPolynomial::binomial(-1, 2));
    full.truncate(2 * dim as u32).to_polynomial()
}

/// 1. Rank-1 closed loop through the CLI.
fn rank_one_closed_loop() -> Outcome {
    for g in [1u32, 2, 3, 5] {
        let start = Instant::now();
        let gs = g.to_string();
        let (code, out) = cli(
            &[
                "betti", "--genus", &gs, "--rank", "1", "--deg", "0", "--format", "json",
            ],
            None,
        );
        within(start, Duration::from_secs(1), &format!("g={g}"))?;
        ensure(code == 0, || format!("g={g}: exit {code}"))?;
        let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let expected: Vec<String> = (0..=2 * g)
            .map(|i| binomial(BigInt::from(2 * g), BigInt::from(i)).to_string())
            .collect();
        let got: Vec<String> = v["coefficients"]
            .as_array()
            .ok_or("no coefficients")?
            .iter()
            .map(|c| c.as_str().unwrap_or_default().to_string())
            .collect();
        ensure(got == expected, || {
            format!("g={g}: {got:?} != {expected:?}")
        })?;
        ensure(v["dimension"] == u64::from(g), || {
            format!("g={g}: dimension {}", v["dimension"])
        })?;
        ensure(dim_moduli(g, 1).unwrap() == u64::from(g), || {
            "dimension formula".into()
        })?;
    }
    Ok(())
}

/// 2. Rank 2 against the closed-form oracle on a disjoint code path.
fn rank_two_oracle() -> Outcome {
    let start = Instant::now();
    let expected = ExactPolynomial::from_i64(&[1, 4, 7, 12, 24, 32, 24, 12, 7, 4, 1]);
    for g in [2u32, 3] {
        let mut seen: Option<ExactPolynomial> = None;
        for n in [1i64, 3, -1] {
            let rec = HnRecursion::new();
            let report = rec
                .betti_poly(&ModuliQuery::new(g, 2, n))
                .map_err(|e| e.to_string())?;
            let p = report.polynomial;
            let dim = report.moduli_dimension;
            ensure(dim == dim_moduli(g, 2).unwrap(), || "dimension".into())?;
            ensure(p.degree() == Some(2 * dim as usize), || {
                format!("g={g} n={n}: degree {:?}", p.degree())
            })?;
            ensure(is_palindromic(&p).unwrap(), || {
                format!("g={g} n={n}: not palindromic")
            })?;
            if g == 2 {
                ensure(p == expected, || format!("g=2 n={n}: {p}"))?;
            }
            let oracle_series =
                rank2_oracle(g, n, report.truncation_used).map_err(|e| e.to_string())?;
            let oracle = betti_times_one_minus_t2(&oracle_series, dim);
            ensure(p == oracle, || {
                format!("g={g} n={n}: recursion {p} vs oracle {oracle}")
            })?;
            ensure(p == rank2_betti_oracle(g, n).unwrap(), || {
                format!("g={g} n={n}: exact-division oracle")
            })?;
            if let Some(prev) = &seen {
                ensure(prev == &p, || {
                    format!("g={g}: n={n} changed the polynomial")
                })?;
            }
            seen = Some(p);
        }
    }
    within(start, Duration::from_secs(5), "rank-2 oracle")
}

/// 3. Stable divisor series two ways.
fn divisor_series_two_ways() -> Outcome {
    let start = Instant::now();
    for g in 1..=3 {
        for r in 1..=4 {
            let ctx = CurveContext::new(g);
            let direct = div_stable_series(ctx, r, 40).map_err(|e| e.to_string())?;
            let residue = residue_series(&FactoredESeries::new(ctx, r).unwrap(), 40);
            ensure(direct == residue, || format!("g={g} r={r}"))?;
        }
    }
    within(start, Duration::from_secs(5), "residue comparison")
}

/// 4. Finite levels agree with the stable series below `r·deg D − n`.
fn stabilization() -> Outcome {
    let start = Instant::now();
    for (g, r, n) in [(2u32, 2u32, 1i64), (2, 3, 1), (3, 2, 1)] {
        let ctx = CurveContext::new(g);
        let mut deviates = false;
        for deg_d in 2..=8u32 {
            let m = (i64::from(r) * i64::from(deg_d) - n) as usize;
            let finite = div_finite_poly(ctx, r, n, deg_d).map_err(|e| e.to_string())?;
            let top = finite.degree().unwrap();
            let stable = div_stable_series(ctx, r, top.max(m) as u32).map_err(|e| e.to_string())?;
            for i in 0..m {
                ensure(&finite.coeff(i) == stable.coeff(i), || {
                    format!("g={g} r={r} n={n} degD={deg_d}: t^{i} differs inside the stable range")
                })?;
            }
            if (m..=top).any(|i| &finite.coeff(i) != stable.coeff(i)) {
                deviates = true;
            }
        }
        ensure(deviates, || {
            format!("g={g} r={r} n={n}: no deviation at or above the bound")
        })?;
    }
    within(start, Duration::from_secs(10), "stabilization")
}

/// 5. Semistable series plus strata reassemble the divisor series.
fn additivity() -> Outcome {
    let start = Instant::now();
    for (g, r, n) in [(2u32, 2u32, 1i64), (2, 3, 1), (2, 3, 2), (3, 2, 1)] {
        let t = 2 * dim_moduli(g, r).unwrap() as u32 + 10;
        let rec = HnRecursion::new();
        let mut total = rec
            .ss_series(&ModuliQuery::new(g, r, n).with_truncation(t))
            .map_err(|e| e.to_string())?;
        for (ty, c) in enumerate_with_codim(r, n, g, u64::from(t / 2)).map_err(|e| e.to_string())? {
            let shift = 2 * c as u32;
            let stratum = rec
                .stratum_series(g, &ty, t - shift)
                .map_err(|e| e.to_string())?;
            let lifted =
                TruncatedSeries::from_polynomial(&stratum.to_polynomial().shift(shift as usize), t);
            total = total.add(&lifted);
        }
        let expected = div_stable_series(CurveContext::new(g), r, t).map_err(|e| e.to_string())?;
        ensure(total == expected, || format!("g={g} r={r} n={n}"))?;
    }
    within(start, Duration::from_secs(30), "additivity")
}

/// 6. Enumeration against an independent bounded brute-force scan.
fn enumeration_completeness() -> Outcome {
    let start = Instant::now();
    for r in 1..=3 {
        for n in -3..=3 {
            for c in 0..=12 {
                let fast = enumerate_types(r, n, 2, c).map_err(|e| e.to_string())?;
                let fast_set = common::as_set(&fast);
                ensure(fast_set.len() == fast.len(), || {
                    format!("r={r} n={n} c={c}: duplicates")
                })?;
                ensure(fast_set == common::brute_force_types(r, n, 2, c), || {
                    format!("r={r} n={n} c={c}: sets differ")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(10), "enumeration")
}

/// 7. Structural checks on every Betti polynomial with r ≤ 4, g ≤ 3.
fn structural_suite() -> Outcome {
    for g in 1..=3u32 {
        for r in 1..=4u32 {
            for n in -(r as i64)..=2 * r as i64 {
                if num_integer::gcd(i64::from(r), n) != 1 {
                    continue;
                }
                let start = Instant::now();
                let rec = HnRecursion::new();
                let q = ModuliQuery::new(g, r, n);
                let report = rec
                    .betti_poly(&q)
                    .map_err(|e| format!("g={g} r={r} n={n}: {e}"))?;
                within(
                    start,
                    Duration::from_secs(60),
                    &format!("g={g} r={r} n={n}"),
                )?;
                let dim = report.moduli_dimension as usize;
                let p = &report.polynomial;
                let one = BigInt::from(1);
                ensure(p.is_nonnegative(), || {
                    format!("g={g} r={r} n={n}: negative coefficient")
                })?;
                ensure(p.coeff(0) == one && p.coeff(2 * dim) == one, || {
                    format!("g={g} r={r} n={n}: ends")
                })?;
                ensure(is_palindromic(p).unwrap(), || {
                    format!("g={g} r={r} n={n}: palindromy")
                })?;
                // recompute the tail independently of the report
                let ss = rec
                    .ss_series(&q.with_truncation(report.truncation_used))
                    .unwrap();
                let full = ss.mul_poly(&ExactPolynomial::binomial(-1, 2));
                ensure(full.truncation_order() as usize == 2 * dim + 10, || {
                    "slack is not 10".into()
                })?;
                ensure(
                    full.coefficients()[2 * dim + 1..]
                        .iter()
                        .all(|c| c == &BigInt::from(0)),
                    || format!("g={g} r={r} n={n}: nonzero tail"),
                )?;
                ensure(report.checks.all_pass(), || {
                    format!("g={g} r={r} n={n}: report flags")
                })?;
            }
        }
    }
    Ok(())
}

/// 8. Cold-cache and warm-cache runs emit identical bytes.
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let args = [
        "betti", "--genus", "2", "--rank", "3", "--deg", "1", "--format", "json",
    ];
    let (c1, cold) = cli(&args, Some(dir.path()));
    let cached = dir.path().join("ss-g2-r3-n1-T30.json");
    ensure(cached.is_file(), || "cold run left no cache entry".into())?;
    let (c2, warm) = cli(&args, Some(dir.path()));
    ensure(c1 == 0 && c2 == 0, || format!("exit codes {c1}, {c2}"))?;
    ensure(cold == warm, || "cold and warm outputs differ".into())?;
    ensure(!cold.is_empty(), || "empty output".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 rank-1 closed loop", rank_one_closed_loop),
        ("2 rank-2 oracle", rank_two_oracle),
        ("3 divisor series two ways", divisor_series_two_ways),
        ("4 stabilization range", stabilization),
        ("5 additivity over strata", additivity),
        ("6 enumeration completeness", enumeration_completeness),
        ("7 structural suite r<=4 g<=3", structural_suite),
        ("8 cold/warm determinism", determinism),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!(
                "PASS  criterion {name}  ({:.3}s)",
                start.elapsed().as_secs_f64()
            ),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
