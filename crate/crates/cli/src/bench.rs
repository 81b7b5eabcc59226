//! `bench`: wall-clock medians for each solution route as the term count
//! grows. The naive closed form does quadruple/triple loops over terms, the
//! symmetric rewriting works off Gram matrices, and the oracle is flat 4x4
//! elimination — the point of the table is to show those shapes.

use std::time::Instant;

use quatlin_core::solver::{solve_general_with, solve_oracle, SumStrategy, DEGENERACY_TOL};

use crate::gen::random_instance;
use crate::{BenchArgs, CliError};

use quatlin_core::rng::SplitMix64;

/// Internal seed; timings should not depend on who runs them.
const BENCH_SEED: u64 = 7;

#[derive(Clone)]
pub struct BenchRow {
    pub n: usize,
    pub method: &'static str,
    pub median_ns: u128,
    pub residual_max: f64,
}

fn time_route<F: FnMut() -> f64>(reps: usize, mut solve: F) -> (u128, f64) {
    let mut times = Vec::with_capacity(reps);
    let mut worst = 0.0f64;
    for _ in 0..reps {
        let start = Instant::now();
        let residual = solve();
        times.push(start.elapsed().as_nanos());
        worst = worst.max(residual);
    }
    times.sort_unstable();
    (times[times.len() / 2], worst)
}

/// One well-conditioned random instance per term count, each route timed
/// `reps` times (median reported, worst residual kept as a sanity column).
pub fn run_bench(n_max: usize, reps: usize) -> Vec<BenchRow> {
    let reps = reps.max(1);
    let mut rng = SplitMix64::new(BENCH_SEED);
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let eq = loop {
            let (eq, _) = random_instance(&mut rng, n, 0);
            if solve_general_with(&eq, DEGENERACY_TOL, SumStrategy::Naive).is_ok() {
                break eq;
            }
        };
        for (method, strategy) in [
            ("closed_naive", SumStrategy::Naive),
            ("closed_sym", SumStrategy::Symmetric),
        ] {
            let (median_ns, residual_max) = time_route(reps, || {
                solve_general_with(&eq, DEGENERACY_TOL, strategy)
                    .expect("instance pre-screened as non-degenerate")
                    .residual
            });
            rows.push(BenchRow {
                n,
                method,
                median_ns,
                residual_max,
            });
        }
        let (median_ns, residual_max) = time_route(reps, || {
            solve_oracle(&eq)
                .expect("instance pre-screened as non-degenerate")
                .residual
        });
        rows.push(BenchRow {
            n,
            method: "oracle",
            median_ns,
            residual_max,
        });
    }
    rows
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,method,median_ns,residual_max\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{:e}\n",
            r.n, r.method, r.median_ns, r.residual_max
        ));
    }
    out
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let csv = to_csv(&run_bench(args.n_max, args.reps));
    match &args.csv {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
