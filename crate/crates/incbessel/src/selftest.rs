//! Cross-validation harness behind the CLI `self-test` command: replays the
//! oracle-equivalence, identity, and invariant suites from every module and
//! reports the worst observed deviation of each.

use crate::dd::DoubleDouble;
use crate::engine::{self, RecurrenceWindow};
use crate::expint;
use crate::legacy;
use crate::oracle;
use crate::params::Parameters;
use crate::quadrature::{self, QuadratureConfig};
use crate::scalar::Scalar;

/// Outcome of one named suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Test grid shared by the cross-validation suites.
pub const GRID_X: [f64; 3] = [1.0, 4.0, 10.0];
pub const GRID_Y: [f64; 3] = [0.0, 2.0, 5.0];
pub const GRID_NU: [f64; 3] = [0.0, 1.0, 3.0];

fn grid() -> impl Iterator<Item = Parameters> {
    GRID_X.iter().flat_map(|&x| {
        GRID_Y.iter().flat_map(move |&y| {
            GRID_NU
                .iter()
                .map(move |&nu| Parameters::new(x, y, nu).unwrap())
        })
    })
}

fn check(name: &'static str, max_dev: f64, tolerance: f64) -> Check {
    Check {
        name,
        passed: max_dev <= tolerance,
        detail: format!("max deviation {max_dev:.3e} (tolerance {tolerance:.0e})"),
    }
}

/// Residual of the four-term recurrence on a value sequence, relative to the
/// largest participating term. `start` is 0 for the denominator and 1 for
/// the numerator (whose order-1 value is seeded, not recurrence-generated).
pub fn recurrence_residual(values: &[f64], params: &Parameters, start: u32) -> f64 {
    let (x, y, nu) = (params.x(), params.y(), params.nu());
    let q = |i: i64| -> f64 {
        if i < 0 {
            0.0
        } else {
            values[i as usize]
        }
    };
    let mut worst = 0.0f64;
    for n in start as i64..values.len() as i64 - 1 {
        let nf = n as f64;
        let lhs = (nf + 1.0) * q(n + 1);
        let t1 = (x + nu + 1.0 + 2.0 * nf - y) * q(n);
        let t2 = (2.0 * y - nu - nf) * q(n - 1);
        let t3 = -y * q(n - 2);
        let scale = lhs
            .abs()
            .max(t1.abs())
            .max(t2.abs())
            .max(t3.abs())
            .max(1e-280);
        worst = worst.max((lhs - (t1 + t2 + t3)).abs() / scale);
    }
    worst
}

/// The operator-replay trajectories satisfy the four-term recurrence.
fn witness_check() -> Check {
    let mut worst = 0.0f64;
    for p in grid() {
        let tr = oracle::oracle_trajectory(&p, 20).unwrap();
        let dens: Vec<f64> = tr.iter().map(|t| t.denominator).collect();
        let nums: Vec<f64> = tr.iter().map(|t| t.numerator).collect();
        worst = worst.max(recurrence_residual(&dens, &p, 0));
        worst = worst.max(recurrence_residual(&nums, &p, 1));
    }
    check("four-term recurrence witness (operator replay)", worst, 1e-13)
}

/// Engine sequence values equal the operator replay values.
fn oracle_equivalence_check() -> Check {
    let mut worst = 0.0f64;
    for p in grid() {
        let tr = oracle::oracle_trajectory(&p, 20).unwrap();
        let den = engine::run_sequence(RecurrenceWindow::denominator_start(&p), &p, 20);
        let num = engine::run_sequence(RecurrenceWindow::numerator_start(), &p, 20);
        for n in 0..=20usize {
            assert_eq!(den[n].scale_exp, 0);
            let dev_d = (den[n].value - tr[n].denominator).abs()
                / tr[n].denominator.abs().max(den[n].value.abs()).max(1e-250);
            let dev_n = (num[n].value - tr[n].numerator).abs()
                / tr[n].numerator.abs().max(num[n].value.abs()).max(1e-250);
            worst = worst.max(dev_d).max(dev_n);
        }
    }
    check("engine sequences vs operator replay", worst, 1e-12)
}

/// Engine approximants equal the sum-based reference at small order. The
/// looser tolerance reflects the cancellation inside the triple sums.
fn legacy_agreement_check() -> Check {
    let mut worst = 0.0f64;
    for p in grid() {
        let tr = engine::evaluate_sequence(&p, 8);
        for n in 1..=8usize {
            let point = tr.points[n];
            match legacy::legacy_g(n, &p) {
                Some(g) if !point.skipped => {
                    worst = worst.max((g - point.value).abs() / point.value.abs().max(1e-250));
                }
                _ => {}
            }
        }
    }
    check("engine vs sum-based reference", worst, 1e-8)
}

/// At `y = 0` the evaluation reduces to the exponential integral.
fn expint_reduction_check() -> Check {
    let mut worst = 0.0f64;
    let qc = QuadratureConfig::default();
    for &x in &GRID_X {
        for &nu in &[0.0, 3.0] {
            let p = Parameters::new(x, 0.0, nu).unwrap();
            let r = engine::evaluate(&p, &engine::EngineConfig::default());
            let en = expint::expint_en(nu as u32 + 1, x);
            let quad = quadrature::tail_integral(&p, &qc).value;
            worst = worst.max((r.value - en).abs() / en.abs());
            worst = worst.max((r.value - quad).abs() / quad.abs());
        }
    }
    check("exponential-integral reduction at y = 0", worst, 1e-12)
}

/// `K_ν(x,y) + K_{−ν}(y,x)` equals the directly integrated full-line
/// integral (the substitution `t → 1/t` maps the missing `[0,1]` piece onto
/// the swapped-argument tail).
fn identity_check() -> Check {
    let mut worst = 0.0f64;
    let qc = QuadratureConfig::default();
    let cfg = engine::EngineConfig::default();
    for &(x, y, nu) in &[(4.0, 2.0, 3.0), (10.0, 5.0, 0.0), (3.0, 3.0, 0.0)] {
        let p = Parameters::new(x, y, nu).unwrap();
        let q = Parameters::new(y, x, -nu).unwrap();
        let sum = engine::evaluate(&p, &cfg).value + engine::evaluate(&q, &cfg).value;
        let full = quadrature::full_integral(&p, &qc).value;
        worst = worst.max((sum - full).abs() / full.abs());
    }
    check("complete-integral identity", worst, 1e-10)
}

/// The two quadrature variable transformations agree.
fn transformation_independence_check() -> Check {
    let mut worst = 0.0f64;
    let qc = QuadratureConfig::default();
    for p in grid() {
        let a = quadrature::tail_integral(&p, &qc);
        let b = quadrature::tail_integral_exp_map(&p, &qc);
        worst = worst.max((a.value - b.value).abs() / a.value.abs().max(1e-300));
    }
    check("quadrature transformation independence", worst, 1e-13)
}

/// Scaling both starting windows by a common power of two leaves every
/// approximant bit-for-bit unchanged.
fn ratio_invariance_check() -> Check {
    let mut worst = 0.0f64;
    for p in [
        Parameters::new(4.0, 2.0, 3.0).unwrap(),
        Parameters::new(10.0, 5.0, 0.0).unwrap(),
        Parameters::new(1.0, 0.0, 1.0).unwrap(),
    ] {
        let plain = engine::evaluate_sequence(&p, 15);
        for e in [-40i32, -8, 13, 37] {
            let c = (2.0f64).powi(e);
            let scaled = engine::trajectory_from_windows(
                RecurrenceWindow::numerator_start().scaled_by(c),
                RecurrenceWindow::denominator_start(&p).scaled_by(c),
                &p,
                15,
            );
            for (a, b) in plain.points.iter().zip(&scaled.points) {
                if !a.skipped && !b.skipped {
                    worst = worst.max((a.value - b.value).abs() / a.value.abs().max(1e-300));
                }
            }
        }
    }
    check("ratio invariance under common window scaling", worst, 1e-15)
}

/// Extended-precision backend reproduces the binary64 results and satisfies
/// the recurrence identity at double-double resolution.
fn extended_precision_check() -> Check {
    let p = Parameters::new(4.0, 2.0, 3.0).unwrap();
    let cfg = engine::EngineConfig::default();
    let a = engine::evaluate(&p, &cfg);
    let b = engine::evaluate_extended(&p, &cfg);
    let value_dev = (a.value - b.value).abs() / b.value.abs();

    // Recurrence residual with the whole computation in double-double; it
    // must land far below binary64 roundoff.
    let mut win: RecurrenceWindow<DoubleDouble> = RecurrenceWindow::denominator_start(&p);
    let mut values = vec![DoubleDouble::ONE, win.values().0];
    for n in 1..=12u32 {
        let next = engine::recurrence_step(n, &win, &p).unwrap();
        win.shift_in(next);
        values.push(next);
    }
    let (x, y, nu) = (
        DoubleDouble::from(p.x()),
        DoubleDouble::from(p.y()),
        DoubleDouble::from(p.nu()),
    );
    let two = DoubleDouble::from(2.0);
    let mut residual = 0.0f64;
    for n in 1..12usize {
        let nf = DoubleDouble::from(n as f64);
        let lhs = (nf + DoubleDouble::ONE) * values[n + 1];
        let coeff_a = x + nu + DoubleDouble::ONE + two * nf - y;
        let coeff_b = two * y - nu - nf;
        let tail = if n >= 2 { values[n - 2] } else { DoubleDouble::ZERO };
        let rhs = coeff_a * values[n] + coeff_b * values[n - 1] - y * tail;
        let dev = (lhs - rhs).abs().to_f64() / lhs.abs().to_f64().max(1e-250);
        residual = residual.max(dev);
    }

    Check {
        name: "extended-precision backend consistency",
        passed: value_dev <= 1e-13 && residual <= 1e-28,
        detail: format!(
            "value deviation {value_dev:.3e} (tolerance 1e-13), \
             double-double recurrence residual {residual:.3e} (tolerance 1e-28)"
        ),
    }
}

/// Runs every suite; the CLI prints one line per entry and fails on any
/// `passed == false`.
pub fn run_selftest() -> Vec<Check> {
    vec![
        witness_check(),
        oracle_equivalence_check(),
        legacy_agreement_check(),
        expint_reduction_check(),
        identity_check(),
        transformation_independence_check(),
        ratio_invariance_check(),
        extended_precision_check(),
    ]
}
