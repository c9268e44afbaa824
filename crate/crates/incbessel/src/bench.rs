//! Wall-clock comparison of the recurrence trajectory against the sum-based
//! baseline, with empirical scaling exponents from a log-log fit.

use std::time::Instant;

use crate::engine;
use crate::legacy;
use crate::params::Parameters;

/// Measured cost of one trajectory length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchPoint {
    pub n: u32,
    pub seconds: f64,
}

/// Timings for both methods plus fitted exponents of `t ∝ n^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub recursive: Vec<BenchPoint>,
    pub legacy: Vec<BenchPoint>,
    pub recursive_exponent: f64,
    pub legacy_exponent: f64,
}

/// Best-of-`reps` wall time of `work`, in seconds. The minimum is the usual
/// robust statistic for short deterministic kernels.
pub fn time_best<F: FnMut()>(mut work: F, reps: u32) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        work();
        best = best.min(start.elapsed().as_secs_f64());
    }
    best
}

/// Picks a repeat count so a point costs roughly `budget` seconds total.
fn reps_for(single_run: f64, budget: f64) -> u32 {
    ((budget / single_run.max(1e-9)) as u32).clamp(3, 20_000)
}

/// Least-squares slope of `ln t` against `ln n`.
pub fn fit_exponent(points: &[BenchPoint]) -> f64 {
    let m = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for p in points {
        let lx = (p.n as f64).ln();
        let ly = p.seconds.max(1e-12).ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

/// Times `evaluate_sequence` at each recursive order and `legacy_trajectory`
/// at each legacy order (the latter capped at 32 by the caller contract).
pub fn run(params: &Parameters, recursive_orders: &[u32], legacy_orders: &[u32]) -> BenchReport {
    let recursive: Vec<BenchPoint> = recursive_orders
        .iter()
        .map(|&n| {
            let once = time_best(|| drop(engine::evaluate_sequence(params, n)), 1);
            let reps = reps_for(once, 0.05);
            BenchPoint {
                n,
                seconds: time_best(|| drop(engine::evaluate_sequence(params, n)), reps),
            }
        })
        .collect();

    let legacy: Vec<BenchPoint> = legacy_orders
        .iter()
        .map(|&n| {
            let once = time_best(|| drop(legacy::legacy_trajectory(n as usize, params)), 1);
            let reps = reps_for(once, 0.05);
            BenchPoint {
                n,
                seconds: time_best(|| drop(legacy::legacy_trajectory(n as usize, params)), reps),
            }
        })
        .collect();

    BenchReport {
        recursive_exponent: fit_exponent(&recursive),
        legacy_exponent: fit_exponent(&legacy),
        recursive,
        legacy,
    }
}
