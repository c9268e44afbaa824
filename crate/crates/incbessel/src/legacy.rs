//! The original sum-based algorithm: triangular differentiation-coefficient
//! tables feeding nested binomial sums. Kept as an independent cross-check
//! of the recurrence engine at small order — it is the complexity baseline
//! (`O(n³)` per order, `O(n⁴)` per trajectory), not a performance path.
//!
//! As printed, the sums carry `y^{−r}` and `y^{−s}` factors against `(xy)`
//! prefactor powers. This implementation folds the prefactor powers into the
//! sums analytically, so every term carries a nonnegative power of `y` and
//! the `y = 0` reduction needs no special casing:
//!
//! ```text
//! 𝒟_n = x^{ν+1} e^{x+y} (−x)^n Σ_r C(n,r) (−1)^r y^{n−r} Σ_i A_r^i x^i
//! Ñ_n = e^{−x−y} x^{−ν} Σ_{r≥1} C(n,r) 𝒟_{n−r} x^r
//!                         Σ_s C(r−1,s) y^{r−1−s} Σ_i B_s^i (−x)^i
//! ```
//!
//! with `A` built from the parameter tuple `(−2, −ν−1, 0, 0)` and `B` from
//! `(−2, ν−1, 0, 0)`.
//!
//! Raw sequences here are not normalized like the engine's: empirically
//! `𝒟_n = n!·xⁿ·x^{ν+1}·D_n` and `Ñ_n = n!·x^{n+1}·Ñ_n(engine)`, which the
//! unit tests pin down. All cross-checks against the engine therefore happen
//! at the level of the approximants `G̃_n = x^ν Ñ_n/𝒟_n`, where every
//! normalization cancels.

use crate::params::Parameters;

/// The 4-tuple `(μ, ν, m, n)` parameterizing a triangular coefficient
/// family. The `ν`/`n` here are formula-level parameters, distinct from the
/// Bessel order and the approximant order; use the two constructors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientParams {
    pub mu: i32,
    pub nu: f64,
    pub m: i32,
    pub n: i32,
}

impl CoefficientParams {
    /// Instantiation used by the denominator sums: `(−2, −ν−1, 0, 0)`.
    pub fn denominator(bessel_nu: f64) -> Self {
        Self {
            mu: -2,
            nu: -bessel_nu - 1.0,
            m: 0,
            n: 0,
        }
    }

    /// Instantiation used by the numerator sums: `(−2, ν−1, 0, 0)`.
    pub fn numerator(bessel_nu: f64) -> Self {
        Self {
            mu: -2,
            nu: bessel_nu - 1.0,
            m: 0,
            n: 0,
        }
    }
}

/// Triangular table of coefficients `A_k^i`, `0 ≤ i ≤ k ≤ kmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    kmax: usize,
    entries: Vec<f64>,
}

impl CoefficientTable {
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn get(&self, k: usize, i: usize) -> f64 {
        debug_assert!(i <= k && k <= self.kmax);
        self.entries[k * (k + 1) / 2 + i]
    }

    fn row(&self, k: usize) -> &[f64] {
        &self.entries[k * (k + 1) / 2..(k + 1) * (k + 2) / 2]
    }
}

/// Builds the triangular table row by row:
/// `A_k^k = 1`, `A_k^0 = (n−ν−(k−1)(μ+1))·A_{k−1}^0`, and in the interior
/// `A_k^i = (n−ν+i(m+1)−(k−1)(μ+1))·A_{k−1}^i + A_{k−1}^{i−1}`.
pub fn build_coefficients(kmax: usize, cp: &CoefficientParams) -> CoefficientTable {
    let mut entries = Vec::with_capacity((kmax + 1) * (kmax + 2) / 2);
    let base = cp.n as f64 - cp.nu;
    let mu1 = (cp.mu + 1) as f64;
    let m1 = (cp.m + 1) as f64;

    for k in 0..=kmax {
        let prev_start = entries.len().saturating_sub(k);
        for i in 0..=k {
            let value = if i == k {
                1.0
            } else {
                let carry = base + i as f64 * m1 - (k - 1) as f64 * mu1;
                let above = entries[prev_start + i];
                if i == 0 {
                    carry * above
                } else {
                    carry * above + entries[prev_start + i - 1]
                }
            };
            entries.push(value);
        }
    }
    CoefficientTable { kmax, entries }
}

/// Neumaier-compensated accumulator; the nested sums alternate in sign and
/// shed digits to cancellation, and this module is a correctness oracle.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Binomial rows C(k, ·) for k = 0..=n, built by Pascal's rule (exact in
/// binary64 through the n ≤ 32 range this module is used at).
fn binomial_rows(n: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    rows.push(vec![1.0]);
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![1.0; k + 1];
        for i in 1..k {
            row[i] = prev[i - 1] + prev[i];
        }
        rows.push(row);
    }
    rows
}

/// Horner evaluation of `Σ_i row[i]·z^i`.
fn horner(row: &[f64], z: f64) -> f64 {
    let mut acc = 0.0;
    for &c in row.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Shared per-trajectory state so a full trajectory costs what the printed
/// per-order algorithm costs and nothing less.
struct SumState {
    table_d: CoefficientTable,
    table_n: CoefficientTable,
    binom: Vec<Vec<f64>>,
    ops: u64,
}

impl SumState {
    fn new(n: usize, params: &Parameters) -> Self {
        let table_d = build_coefficients(n, &CoefficientParams::denominator(params.nu()));
        let table_n = build_coefficients(n, &CoefficientParams::numerator(params.nu()));
        let binom = binomial_rows(n);
        // Table construction: ~3 ops per triangular entry, twice.
        let ops = 3 * (n as u64 + 1) * (n as u64 + 2);
        Self {
            table_d,
            table_n,
            binom,
            ops,
        }
    }

    /// `𝒟_n` as printed (with the prefactor powers of `y` folded in).
    fn denominator(&mut self, n: usize, params: &Parameters) -> f64 {
        let (x, y, nu) = (params.x(), params.y(), params.nu());
        let mut sum = Compensated::default();
        for r in 0..=n {
            let inner = horner(self.table_d.row(r), x);
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            sum.add(self.binom[n][r] * sign * y.powi((n - r) as i32) * inner);
            self.ops += 2 * (r as u64 + 1) + 5;
        }
        x.powf(nu + 1.0) * (x + y).exp() * (-x).powi(n as i32) * sum.value()
    }

    /// `Ñ_n` as printed; needs `𝒟_0..𝒟_{n−1}`, which the caller supplies.
    fn numerator(&mut self, n: usize, params: &Parameters, d: &[f64]) -> f64 {
        let (x, y, nu) = (params.x(), params.y(), params.nu());
        let mut outer = Compensated::default();
        for r in 1..=n {
            let mut middle = Compensated::default();
            for s in 0..r {
                let inner = horner(self.table_n.row(s), -x);
                middle.add(self.binom[r - 1][s] * y.powi((r - 1 - s) as i32) * inner);
                self.ops += 2 * (s as u64 + 1) + 4;
            }
            outer.add(self.binom[n][r] * d[n - r] * x.powi(r as i32) * middle.value());
            self.ops += 4;
        }
        (-(x + y)).exp() * x.powf(-nu) * outer.value()
    }
}

/// `𝒟_n(x,y,ν)`, the raw denominator of the sum-based algorithm. `O(n²)`
/// beyond the table build. Carries the `e^{x+y}` start factor as printed,
/// so it overflows binary64 once `x + y ≳ 709`.
pub fn legacy_denominator(n: usize, params: &Parameters) -> f64 {
    let mut state = SumState::new(n, params);
    state.denominator(n, params)
}

/// `Ñ_n(x,y,ν)`, the raw numerator of the sum-based algorithm. `O(n³)`.
pub fn legacy_numerator(n: usize, params: &Parameters) -> f64 {
    let mut state = SumState::new(n, params);
    let d: Vec<f64> = (0..n).map(|k| state.denominator(k, params)).collect();
    state.numerator(n, params, &d)
}

/// Order-`n` approximant `G̃_n = x^ν·Ñ_n/𝒟_n` from the sum-based algorithm;
/// `None` when the denominator vanishes (degenerate order).
pub fn legacy_g(n: usize, params: &Parameters) -> Option<f64> {
    let mut state = SumState::new(n, params);
    let d: Vec<f64> = (0..=n).map(|k| state.denominator(k, params)).collect();
    let den = d[n];
    if den == 0.0 {
        return None;
    }
    let num = state.numerator(n, params, &d);
    Some(params.x().powf(params.nu()) * num / den)
}

/// A full trajectory of sum-based approximants with its operation count.
#[derive(Debug, Clone, PartialEq)]
pub struct LegacyTrajectory {
    /// `G̃_0..G̃_{n_max}`; `None` marks degenerate orders.
    pub approximants: Vec<Option<f64>>,
    /// Arithmetic operations spent, counted inside the summation loops.
    pub ops: u64,
}

/// Runs the printed algorithm for every order up to `n_max`. The
/// coefficient tables and the denominators are order-independent and shared
/// across the trajectory; the numerator triple sum is not, so the total cost
/// is still `Σ_k O(k³) = O(n⁴)` — the quartic bottleneck this module exists
/// to demonstrate.
pub fn legacy_trajectory(n_max: usize, params: &Parameters) -> LegacyTrajectory {
    let mut state = SumState::new(n_max, params);
    let d: Vec<f64> = (0..=n_max).map(|k| state.denominator(k, params)).collect();
    let mut approximants = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if d[n] == 0.0 {
            approximants.push(None);
        } else {
            let num = state.numerator(n, params, &d);
            approximants.push(Some(params.x().powf(params.nu()) * num / d[n]));
        }
    }
    LegacyTrajectory {
        approximants,
        ops: state.ops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;

    fn params(x: f64, y: f64, nu: f64) -> Parameters {
        Parameters::new(x, y, nu).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn diagonal_entries_are_one() {
        for cp in [
            CoefficientParams::denominator(3.0),
            CoefficientParams::numerator(3.0),
            CoefficientParams::denominator(-1.5),
        ] {
            let t = build_coefficients(9, &cp);
            for k in 0..=9 {
                assert_eq!(t.get(k, k), 1.0);
            }
        }
    }

    #[test]
    fn first_column_and_interior_recursions() {
        // Denominator family at Bessel ν = 3, i.e. formula ν = −4:
        // A_1^0 = 0−(−4)−0 = 4 and A_2^1 = (0+4+1+1)·1 + 4 = 10.
        let t = build_coefficients(4, &CoefficientParams::denominator(3.0));
        assert_eq!(t.get(1, 0), 4.0);
        assert_eq!(t.get(2, 1), 10.0);
        assert_eq!(t.get(2, 0), 20.0);
    }

    #[test]
    fn integer_order_tables_are_integral() {
        for bessel_nu in [0.0, 1.0, 3.0] {
            let t = build_coefficients(12, &CoefficientParams::denominator(bessel_nu));
            for k in 0..=12 {
                for i in 0..=k {
                    let v = t.get(k, i);
                    assert!(v.is_finite());
                    assert_eq!(v.fract(), 0.0, "A_{k}^{i} = {v} not integral");
                }
            }
        }
    }

    #[test]
    fn denominator_base_cases() {
        let p = params(4.0, 2.0, 3.0);
        let e6 = 6.0f64.exp();
        // 𝒟_0 = x^{ν+1} e^{x+y}, 𝒟_1 = x^{ν+2} e^{x+y} (x+ν+1−y),
        // 𝒟_2 expands by hand to 196608·e⁶ at these arguments.
        assert!(rel(legacy_denominator(0, &p), 256.0 * e6) < 1e-15);
        assert!(rel(legacy_denominator(1, &p), 1024.0 * 6.0 * e6) < 1e-15);
        assert!(rel(legacy_denominator(2, &p), 196_608.0 * e6) < 1e-14);
    }

    #[test]
    fn numerator_base_cases() {
        let p = params(4.0, 2.0, 3.0);
        assert_eq!(legacy_numerator(0, &p), 0.0);
        // Hand algebra: Ñ_1 = x², Ñ_2 = 512 at (4,2,3).
        assert!(rel(legacy_numerator(1, &p), 16.0) < 1e-14);
        assert!(rel(legacy_numerator(2, &p), 512.0) < 1e-13);
    }

    #[test]
    fn raw_sequence_proportionality_to_engine() {
        // Empirical normalization relation between the two algorithms:
        // 𝒟_n = n!·xⁿ·x^{ν+1}·(e^{x+y}·D̂_n) and Ñ_n = n!·x^{n+1}·Ñ_n(engine).
        let p = params(4.0, 2.0, 3.0);
        let den = engine::run_sequence(engine::RecurrenceWindow::denominator_start(&p), &p, 6);
        let num = engine::run_sequence(engine::RecurrenceWindow::numerator_start(), &p, 6);
        let exy = (p.x() + p.y()).exp();
        let mut factorial = 1.0;
        for n in 0..=6usize {
            if n > 0 {
                factorial *= n as f64;
            }
            let scale_d = factorial * p.x().powi(n as i32) * p.x().powi(4);
            let want_d = scale_d * exy * den[n].value;
            if want_d != 0.0 {
                assert!(rel(legacy_denominator(n, &p), want_d) < 1e-12, "order {n}");
            }
            let scale_n = factorial * p.x().powi(n as i32 + 1);
            let want_n = scale_n * num[n].value;
            if want_n != 0.0 {
                assert!(rel(legacy_numerator(n, &p), want_n) < 1e-12, "order {n}");
            }
        }
    }

    #[test]
    fn approximants_match_engine() {
        let p = params(4.0, 2.0, 3.0);
        assert_eq!(legacy_g(0, &p), Some(0.0));
        let g1 = legacy_g(1, &p).unwrap();
        assert!(rel(g1, 4.131253627777264e-4) < 1e-14);
        let tr = engine::evaluate_sequence(&p, 6);
        for n in 1..=6usize {
            let legacy = legacy_g(n, &p).unwrap();
            assert!(
                rel(legacy, tr.points[n].value) < 1e-10,
                "order {n}: {legacy} vs {}",
                tr.points[n].value
            );
        }
    }

    #[test]
    fn y_zero_limit_is_finite_and_consistent() {
        // Only the r = n (and s = r−1) terms survive at y = 0; the folded
        // powers make that automatic.
        let p = params(4.0, 0.0, 3.0);
        let d1 = legacy_denominator(1, &p);
        assert!(rel(d1, 1024.0 * 8.0 * 4.0f64.exp()) < 1e-14);
        let tr = engine::evaluate_sequence(&p, 5);
        for n in 1..=5usize {
            let legacy = legacy_g(n, &p).unwrap();
            assert!(rel(legacy, tr.points[n].value) < 1e-10, "order {n}");
        }
    }

    #[test]
    fn degenerate_denominator_is_signalled() {
        // x+ν+1−y = 0 at (1,2,0) zeroes 𝒟_1.
        let p = params(1.0, 2.0, 0.0);
        assert_eq!(legacy_g(1, &p), None);
        assert!(legacy_g(2, &p).is_some());
    }

    #[test]
    fn trajectory_cost_grows_superlinearly() {
        let p = params(10.0, 5.0, 0.0);
        let t8 = legacy_trajectory(8, &p);
        let t16 = legacy_trajectory(16, &p);
        assert!(
            t16.ops >= 8 * t8.ops,
            "ops grew only {}x",
            t16.ops as f64 / t8.ops as f64
        );
    }
}
