//! Linear-cost evaluation of `K_ν(x,y)` through the four-term recurrence
//!
//! ```text
//! (n+1) Q̂_{n+1} = (x+ν+1+2n−y) Q̂_n + (2y−ν−n) Q̂_{n−1} − y Q̂_{n−2}
//! ```
//!
//! run simultaneously on two sequences that differ only in their starting
//! windows: the numerator (`Ñ₀ = 0`, `Ñ₁ = 1`) and the denominator. The
//! order-`n` approximant is the ratio of the two sequences.
//!
//! The textbook denominator starts at `e^{x+y}`, which overflows binary64
//! near `x + y ≈ 709`. The recurrence is linear, so this engine runs the
//! denominator scaled by `e^{−x−y}` (`D̂₀ = 1`, `D̂₁ = x+ν+1−y`) and
//! reattaches the factor once per ratio:
//!
//! ```text
//! G̃_n = e^{−(x+y)} · Ñ_n / D̂_n .
//! ```
//!
//! `e^{−(x+y)}` underflows to zero only when `K_ν(x,y)` itself does. On top
//! of that, whenever either sequence outgrows `2^830` the engine rescales
//! both three-term windows by a common power of two; ratios are unchanged
//! and the recurrence stays in range at any order.

use thiserror::Error;

use crate::params::Parameters;
use crate::scalar::Scalar;

/// Which of the two sequences a window belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    Numerator,
    Denominator,
}

/// Sliding window of the last three scaled sequence values `Q̂_n, Q̂_{n−1},
/// Q̂_{n−2}` together with the order counter.
///
/// Values at orders below zero are exactly zero, so the standard starting
/// windows at `n = 1` are `(1, 0, 0)` for the numerator and
/// `(x+ν+1−y, 1, 0)` for the scaled denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceWindow<T = f64> {
    kind: SequenceKind,
    n: u32,
    q_n: T,
    q_nm1: T,
    q_nm2: T,
}

/// A recurrence step produced a non-finite value; the caller should stop at
/// the previous order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("recurrence overflowed while producing order {order}")]
pub struct StepOverflow {
    pub order: u32,
}

/// The denominator magnitude fell below the configured floor; the order
/// carries no usable approximant and is skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("denominator magnitude below floor; order skipped")]
pub struct DegenerateDenominator;

impl<T: Scalar> RecurrenceWindow<T> {
    /// Standard numerator start `(Ñ₁, Ñ₀, Ñ₋₁) = (1, 0, 0)`.
    pub fn numerator_start() -> Self {
        Self {
            kind: SequenceKind::Numerator,
            n: 1,
            q_n: T::one(),
            q_nm1: T::zero(),
            q_nm2: T::zero(),
        }
    }

    /// Standard scaled denominator start `(D̂₁, D̂₀, D̂₋₁) = (x+ν+1−y, 1, 0)`.
    pub fn denominator_start(params: &Parameters) -> Self {
        let d1 = T::from_f64(params.x()) + T::from_f64(params.nu()) + T::one()
            - T::from_f64(params.y());
        Self {
            kind: SequenceKind::Denominator,
            n: 1,
            q_n: d1,
            q_nm1: T::one(),
            q_nm2: T::zero(),
        }
    }

    /// Arbitrary window, mainly for tests and window-scaling experiments.
    pub fn from_values(kind: SequenceKind, n: u32, q_n: T, q_nm1: T, q_nm2: T) -> Self {
        Self {
            kind,
            n,
            q_n,
            q_nm1,
            q_nm2,
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// `(Q̂_n, Q̂_{n−1}, Q̂_{n−2})`.
    pub fn values(&self) -> (T, T, T) {
        (self.q_n, self.q_nm1, self.q_nm2)
    }

    /// Multiplies all three entries by `c`. By linearity this scales every
    /// later sequence value by the same constant.
    pub fn scaled_by(mut self, c: T) -> Self {
        self.q_n = self.q_n * c;
        self.q_nm1 = self.q_nm1 * c;
        self.q_nm2 = self.q_nm2 * c;
        self
    }

    /// Pushes `Q̂_{n+1}` into the window and bumps the order.
    pub fn shift_in(&mut self, q_np1: T) {
        self.q_nm2 = self.q_nm1;
        self.q_nm1 = self.q_n;
        self.q_n = q_np1;
        self.n += 1;
    }

    fn ldexp_in_place(&mut self, e: i32) {
        self.q_n = self.q_n.ldexp(e);
        self.q_nm1 = self.q_nm1.ldexp(e);
        self.q_nm2 = self.q_nm2.ldexp(e);
    }

    fn max_abs(&self) -> f64 {
        let a = self.q_n.abs().to_f64();
        let b = self.q_nm1.abs().to_f64();
        let c = self.q_nm2.abs().to_f64();
        a.max(b).max(c)
    }
}

/// Computes `Q̂_{n+1}` from the window at order `n`. The coefficient formula
/// is identical for both sequence kinds; only the starting windows differ.
pub fn recurrence_step<T: Scalar>(
    n: u32,
    window: &RecurrenceWindow<T>,
    params: &Parameters,
) -> Result<T, StepOverflow> {
    debug_assert_eq!(n, window.n, "window is positioned at a different order");
    let x = T::from_f64(params.x());
    let y = T::from_f64(params.y());
    let nu = T::from_f64(params.nu());
    let nf = T::from_f64(n as f64);
    let two = T::from_f64(2.0);

    let a = x + nu + T::one() + two * nf - y;
    let b = two * y - nu - nf;
    let next =
        (a * window.q_n + b * window.q_nm1 - y * window.q_nm2) / T::from_f64((n + 1) as f64);
    if next.is_finite() {
        Ok(next)
    } else {
        Err(StepOverflow { order: n + 1 })
    }
}

/// Forms `G̃_n = e^{−(x+y)} · Ñ_n / D̂_n` from the scaled sequence values.
///
/// The exponential factor is applied here, once per ratio; it is never
/// stored in the sequences. Fails with [`DegenerateDenominator`] when
/// `|D̂_n| ≤ denom_floor`.
pub fn approximant<T: Scalar>(
    ntilde_n: T,
    dhat_n: T,
    params: &Parameters,
    denom_floor: f64,
) -> Result<T, DegenerateDenominator> {
    if dhat_n.abs().to_f64() <= denom_floor {
        return Err(DegenerateDenominator);
    }
    let scale = (-(T::from_f64(params.x()) + T::from_f64(params.y()))).exp();
    Ok(scale * ntilde_n / dhat_n)
}

/// Convergence and range controls for [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    /// Hard cap on the recurrence order (default 200).
    pub max_order: u32,
    /// Successive-approximant relative agreement target (default 1e-14).
    pub rel_tolerance: f64,
    /// Number of consecutive non-skipped orders that must agree (default 2).
    pub agreement_count: u32,
    /// `|D̂_n|` at or below this marks the order as skipped (default 1e-300).
    pub denom_floor: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            max_order: 200,
            rel_tolerance: 1e-14,
            agreement_count: 2,
            denom_floor: 1e-300,
        }
    }
}

impl EngineConfig {
    fn validate(&self) {
        assert!(self.max_order >= 2, "max_order must be at least 2");
        assert!(
            self.rel_tolerance > 0.0 && self.rel_tolerance < 1.0,
            "rel_tolerance must lie in (0, 1)"
        );
        assert!(self.agreement_count >= 1, "agreement_count must be >= 1");
        assert!(self.denom_floor >= 0.0, "denom_floor must be >= 0");
    }
}

/// How an evaluation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationStatus {
    /// Successive approximants agreed to the requested tolerance.
    Converged,
    /// The order cap was hit first; the best approximant seen is returned.
    MaxOrderReached,
    /// Every order up to the cap had a vanishing denominator.
    DegenerateDenominator,
}

/// Result of a single evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationResult {
    /// Approximation to `K_ν(x,y)`.
    pub value: f64,
    /// Order at termination.
    pub order: u32,
    /// Last observed successive relative change at that order.
    pub est_rel_error: f64,
    pub status: TerminationStatus,
}

impl EvaluationResult {
    pub fn converged(&self) -> bool {
        self.status == TerminationStatus::Converged
    }
}

/// One order of a joint trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub order: u32,
    /// `G̃_n`; NaN when the order is skipped.
    pub value: f64,
    /// `|D̂_n|` in the window scaling current at that order.
    pub denom_magnitude: f64,
    /// True when the denominator fell at or below the floor.
    pub skipped: bool,
}

/// Full approximant trajectory with its arithmetic cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    /// Arithmetic operations spent, counted inside the recurrence loop.
    /// Linear in the trajectory length by construction of the algorithm.
    pub flops: u64,
}

/// One value of a single scaled sequence. The true value is
/// `value · 2^scale_exp`; the exponent is nonzero only after the window has
/// been renormalized to dodge overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceTerm {
    pub order: u32,
    pub value: f64,
    pub scale_exp: i32,
}

/// Window magnitude that triggers a joint power-of-two rescale (≈ 2^830).
const RENORM_THRESHOLD: f64 = 1e250;
/// The rescale shift. Large enough that renormalizations are rare, small
/// enough that the surviving magnitudes stay far above the denominator floor.
const RENORM_SHIFT: i32 = -512;

/// Joint stepping of both sequences with shared renormalization.
struct JointRecurrence<'a, T> {
    params: &'a Parameters,
    nwin: RecurrenceWindow<T>,
    dwin: RecurrenceWindow<T>,
    flops: u64,
}

impl<'a, T: Scalar> JointRecurrence<'a, T> {
    fn new(params: &'a Parameters) -> Self {
        Self::from_windows(
            RecurrenceWindow::numerator_start(),
            RecurrenceWindow::denominator_start(params),
            params,
        )
    }

    fn from_windows(
        nwin: RecurrenceWindow<T>,
        dwin: RecurrenceWindow<T>,
        params: &'a Parameters,
    ) -> Self {
        assert_eq!(nwin.kind(), SequenceKind::Numerator);
        assert_eq!(dwin.kind(), SequenceKind::Denominator);
        assert_eq!(nwin.order(), 1, "joint trajectories start from order-1 windows");
        assert_eq!(dwin.order(), 1, "joint trajectories start from order-1 windows");
        Self {
            params,
            nwin,
            dwin,
            flops: 0,
        }
    }

    /// `(Ñ_m, D̂_m)` at the top order `m` of the windows.
    fn current(&self) -> (T, T) {
        (self.nwin.q_n, self.dwin.q_n)
    }

    /// `(Ñ_{m−1}, D̂_{m−1})`, used to emit order 0 from the starting windows.
    fn previous(&self) -> (T, T) {
        (self.nwin.q_nm1, self.dwin.q_nm1)
    }

    fn advance(&mut self) -> Result<(), StepOverflow> {
        let n = self.nwin.order();
        let next_n = recurrence_step(n, &self.nwin, self.params)?;
        let next_d = recurrence_step(n, &self.dwin, self.params)?;
        self.nwin.shift_in(next_n);
        self.dwin.shift_in(next_d);
        // 8 ops for the shared coefficients, 6 per sequence.
        self.flops += 20;
        if self.nwin.max_abs().max(self.dwin.max_abs()) > RENORM_THRESHOLD {
            self.nwin.ldexp_in_place(RENORM_SHIFT);
            self.dwin.ldexp_in_place(RENORM_SHIFT);
            self.flops += 6;
        }
        Ok(())
    }
}

/// Evaluates `K_ν(x,y)` in binary64 with the default scalar backend.
pub fn evaluate(params: &Parameters, config: &EngineConfig) -> EvaluationResult {
    evaluate_in::<f64>(params, config)
}

/// Evaluates with compensated double-double arithmetic. Convergence and the
/// error estimate are assessed at double-double resolution, so tolerances
/// well below 1e-15 are meaningful here.
pub fn evaluate_extended(params: &Parameters, config: &EngineConfig) -> EvaluationResult {
    evaluate_in::<crate::dd::DoubleDouble>(params, config)
}

/// Evaluation over any scalar backend.
pub fn evaluate_in<T: Scalar>(params: &Parameters, config: &EngineConfig) -> EvaluationResult {
    config.validate();
    let tol = T::from_f64(config.rel_tolerance);
    let mut rec = JointRecurrence::<T>::new(params);

    let mut prev: Option<T> = None;
    let mut agree: u32 = 0;
    let mut best: Option<(f64, u32, f64)> = None;
    let mut first_valid: Option<(f64, u32)> = None;

    let mut m = 0u32;
    loop {
        let (nt, dh) = if m == 0 { rec.previous() } else { rec.current() };

        if let Ok(g) = approximant(nt, dh, params, config.denom_floor) {
            if g.is_finite() {
                if first_valid.is_none() {
                    first_valid = Some((g.to_f64(), m));
                }
                if let Some(p) = prev {
                    let diff = (g - p).abs();
                    let change = if diff.to_f64() == 0.0 {
                        0.0
                    } else {
                        diff.to_f64() / g.abs().to_f64()
                    };
                    if best.map_or(true, |(_, _, c)| change < c) {
                        best = Some((g.to_f64(), m, change));
                    }
                    if diff <= tol * g.abs() {
                        agree += 1;
                    } else {
                        agree = 0;
                    }
                    if agree >= config.agreement_count {
                        return EvaluationResult {
                            value: g.to_f64(),
                            order: m,
                            est_rel_error: change,
                            status: TerminationStatus::Converged,
                        };
                    }
                }
                prev = Some(g);
            }
        }

        if m == config.max_order {
            break;
        }
        // The starting windows already hold the order-1 values, so the first
        // advance happens between orders 1 and 2.
        if m >= 1 && rec.advance().is_err() {
            break;
        }
        m += 1;
    }

    match best.or(first_valid.map(|(v, o)| (v, o, f64::INFINITY))) {
        Some((value, order, change)) => EvaluationResult {
            value,
            order,
            est_rel_error: change,
            status: TerminationStatus::MaxOrderReached,
        },
        None => EvaluationResult {
            value: f64::NAN,
            order: m,
            est_rel_error: f64::INFINITY,
            status: TerminationStatus::DegenerateDenominator,
        },
    }
}

/// Produces the full approximant trajectory for orders `0..=n_max` from the
/// standard starting windows. Total cost is linear in `n_max`.
pub fn evaluate_sequence(params: &Parameters, n_max: u32) -> Trajectory {
    trajectory_from_windows(
        RecurrenceWindow::<f64>::numerator_start(),
        RecurrenceWindow::<f64>::denominator_start(params),
        params,
        n_max,
    )
}

/// Trajectory from caller-supplied order-1 windows. Scaling both windows by
/// a common constant leaves every emitted ratio unchanged, which is also
/// asserted by the property tests.
pub fn trajectory_from_windows<T: Scalar>(
    numerator: RecurrenceWindow<T>,
    denominator: RecurrenceWindow<T>,
    params: &Parameters,
    n_max: u32,
) -> Trajectory {
    let floor = EngineConfig::default().denom_floor;
    let mut rec = JointRecurrence::from_windows(numerator, denominator, params);
    let mut points = Vec::with_capacity(n_max as usize + 1);

    let mut m = 0u32;
    loop {
        let (nt, dh) = if m == 0 { rec.previous() } else { rec.current() };
        let denom_magnitude = dh.abs().to_f64();
        match approximant(nt, dh, params, floor) {
            Ok(g) => {
                rec.flops += 2;
                points.push(TrajectoryPoint {
                    order: m,
                    value: g.to_f64(),
                    denom_magnitude,
                    skipped: false,
                });
            }
            Err(DegenerateDenominator) => points.push(TrajectoryPoint {
                order: m,
                value: f64::NAN,
                denom_magnitude,
                skipped: true,
            }),
        }
        if m == n_max {
            break;
        }
        // First advance happens between orders 1 and 2; see evaluate_in.
        if m >= 1 && rec.advance().is_err() {
            break;
        }
        m += 1;
    }
    Trajectory {
        points,
        flops: rec.flops,
    }
}

/// Runs a single scaled sequence from its order-1 window, reporting raw
/// values for orders `0..=n_max` together with the power-of-two exponent
/// taken out by renormalization (`true value = value · 2^scale_exp`).
pub fn run_sequence(
    start: RecurrenceWindow<f64>,
    params: &Parameters,
    n_max: u32,
) -> Vec<SequenceTerm> {
    assert_eq!(start.order(), 1, "sequences run from order-1 windows");
    let mut window = start;
    let mut scale_exp = 0i32;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(SequenceTerm {
        order: 0,
        value: window.q_nm1,
        scale_exp,
    });
    let mut m = 1u32;
    loop {
        out.push(SequenceTerm {
            order: m,
            value: window.q_n,
            scale_exp,
        });
        if m == n_max {
            break;
        }
        match recurrence_step(m, &window, params) {
            Ok(next) => window.shift_in(next),
            Err(_) => break,
        }
        if window.max_abs() > RENORM_THRESHOLD {
            window.ldexp_in_place(RENORM_SHIFT);
            scale_exp -= RENORM_SHIFT;
        }
        m += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(x: f64, y: f64, nu: f64) -> Parameters {
        Parameters::new(x, y, nu).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Reference values computed to 25 digits with arbitrary-precision
    // quadrature of the defining integral.
    const K3_4_2: f64 = 4.170423397336784428949363e-4;
    const K3_4_4: f64 = 7.505279837980130231248369e-5;
    const K0_10_5: f64 = 4.445980429461303698537687e-8;
    const K0_1_2: f64 = 6.176699783935735824646206e-2;
    const E4_4: f64 = 2.423398368658084910676875e-3;

    #[test]
    fn step_from_denominator_base_window() {
        // Order 0 with window (D̂₀, D̂₋₁, D̂₋₂) = (1, 0, 0): the lower-order
        // terms vanish and the step returns x+ν+1−y.
        let p = params(4.0, 0.0, 3.0);
        let w = RecurrenceWindow::from_values(SequenceKind::Denominator, 0, 1.0, 0.0, 0.0);
        assert_eq!(recurrence_step(0, &w, &p).unwrap(), 8.0);
    }

    #[test]
    fn step_from_numerator_start_is_generic() {
        for &(x, y, nu) in &[(4.0, 2.0, 3.0), (1.0, 0.0, 0.0), (10.0, 5.0, -1.5)] {
            let p = params(x, y, nu);
            let w: RecurrenceWindow = RecurrenceWindow::numerator_start();
            let got = recurrence_step(1, &w, &p).unwrap();
            assert_eq!(got, (x + nu + 3.0 - y) / 2.0);
        }
    }

    #[test]
    fn third_denominator_value_matches_operator_replay() {
        // q₃(1)/3! = 464/6 from the exact polynomial replay at (4,2,3).
        let p = params(4.0, 2.0, 3.0);
        let mut w: RecurrenceWindow = RecurrenceWindow::denominator_start(&p);
        for n in 1..=2 {
            let next = recurrence_step(n, &w, &p).unwrap();
            w.shift_in(next);
        }
        assert_eq!(w.values().0, 232.0 / 3.0);
        let oracle = crate::oracle::oracle_trajectory(&p, 3).unwrap();
        assert!(rel(w.values().0, oracle[3].denominator) < 1e-15);
    }

    #[test]
    fn approximant_order_zero_is_zero() {
        let p = params(4.0, 2.0, 3.0);
        assert_eq!(approximant(0.0, 1.0, &p, 1e-300).unwrap(), 0.0);
        assert_eq!(approximant(0.0, 123.4, &p, 1e-300).unwrap(), 0.0);
    }

    #[test]
    fn approximant_first_order_value() {
        // G̃₁ = e^{−(x+y)}/(x+ν+1−y) = e^{−6}/6 at (4,2,3).
        let p = params(4.0, 2.0, 3.0);
        let g1 = approximant(1.0, 6.0, &p, 1e-300).unwrap();
        assert!(rel(g1, 4.131253627777264e-4) < 1e-15);
    }

    #[test]
    fn approximant_degenerate_denominator() {
        // x+ν+1−y = 0 at (1,2,0) makes D̂₁ exactly zero.
        let p = params(1.0, 2.0, 0.0);
        let d1 = p.x() + p.nu() + 1.0 - p.y();
        assert_eq!(d1, 0.0);
        assert_eq!(
            approximant(1.0, d1, &p, 1e-300),
            Err(DegenerateDenominator)
        );
    }

    #[test]
    fn evaluate_reduces_to_exponential_integral_at_y_zero() {
        let r = evaluate(&params(4.0, 0.0, 3.0), &EngineConfig::default());
        assert!(r.converged());
        assert!(rel(r.value, E4_4) < 1e-12, "rel err {}", rel(r.value, E4_4));
    }

    #[test]
    fn evaluate_matches_quadrature_references() {
        for (p, want) in [
            (params(10.0, 5.0, 0.0), K0_10_5),
            (params(4.0, 4.0, 3.0), K3_4_4),
            (params(4.0, 2.0, 3.0), K3_4_2),
        ] {
            let r = evaluate(&p, &EngineConfig::default());
            assert!(r.converged(), "{p} did not converge: {r:?}");
            assert!(r.order <= 200);
            assert!(rel(r.value, want) < 1e-12, "{p}: rel err {}", rel(r.value, want));
            assert!(r.est_rel_error <= 1e-14);
        }
    }

    #[test]
    fn evaluate_skips_degenerate_order_and_converges() {
        let r = evaluate(&params(1.0, 2.0, 0.0), &EngineConfig::default());
        assert!(r.converged());
        assert!(rel(r.value, K0_1_2) < 1e-12);
    }

    #[test]
    fn evaluate_underflows_cleanly_at_huge_arguments() {
        // x + y = 1000: e^{-(x+y)} underflows, and so does K itself.
        let r = evaluate(&params(600.0, 400.0, 0.0), &EngineConfig::default());
        assert!(r.converged());
        assert_eq!(r.value, 0.0);
        assert!(r.value.is_finite());
    }

    #[test]
    fn evaluate_reports_max_order_with_best_value() {
        let cfg = EngineConfig {
            max_order: 3,
            ..EngineConfig::default()
        };
        let r = evaluate(&params(10.0, 5.0, 0.0), &cfg);
        assert_eq!(r.status, TerminationStatus::MaxOrderReached);
        assert!(r.order <= 3);
        assert!(r.value.is_finite());
    }

    #[test]
    fn extended_and_double_agree() {
        let p = params(4.0, 2.0, 3.0);
        let cfg = EngineConfig::default();
        let a = evaluate(&p, &cfg);
        let b = evaluate_extended(&p, &cfg);
        assert!(a.converged() && b.converged());
        assert!(rel(a.value, b.value) < 1e-13);
    }

    #[test]
    fn extended_mode_reaches_tighter_tolerances() {
        let cfg = EngineConfig {
            rel_tolerance: 1e-25,
            ..EngineConfig::default()
        };
        let r = evaluate_extended(&params(4.0, 2.0, 3.0), &cfg);
        assert!(r.converged());
        assert!(r.est_rel_error <= 1e-25);
        assert!(rel(r.value, K3_4_2) < 1e-13);
    }

    #[test]
    fn sequence_order_zero_entry() {
        let tr = evaluate_sequence(&params(7.3, 1.1, -0.5), 0);
        assert_eq!(tr.points.len(), 1);
        let p0 = tr.points[0];
        assert_eq!((p0.order, p0.value, p0.denom_magnitude), (0, 0.0, 1.0));
        assert!(!p0.skipped);
    }

    #[test]
    fn sequence_first_order_value() {
        let tr = evaluate_sequence(&params(4.0, 2.0, 3.0), 1);
        assert_eq!(tr.points.len(), 2);
        assert!(rel(tr.points[1].value, 4.131253627777264e-4) < 1e-15);
    }

    #[test]
    fn sequence_flags_skipped_orders() {
        let tr = evaluate_sequence(&params(1.0, 2.0, 0.0), 4);
        assert!(tr.points[1].skipped);
        assert!(tr.points[1].value.is_nan());
        assert!(!tr.points[2].skipped);
    }

    #[test]
    fn sequence_cost_is_linear() {
        let p = params(4.0, 2.0, 3.0);
        for n_max in [10u32, 100, 1000] {
            let tr = evaluate_sequence(&p, n_max);
            assert!(
                tr.flops <= 64 * (n_max as u64 + 1),
                "flops {} at n_max {}",
                tr.flops,
                n_max
            );
        }
        let f1 = evaluate_sequence(&p, 1000).flops;
        let f2 = evaluate_sequence(&p, 2000).flops;
        assert!(f2 < 2 * f1 + 64);
    }

    #[test]
    fn long_trajectories_renormalize_and_stay_finite() {
        let tr = evaluate_sequence(&params(10.0, 5.0, 0.0), 2000);
        assert_eq!(tr.points.len(), 2001);
        let last = tr.points.last().unwrap();
        assert!(!last.skipped);
        assert!(last.value.is_finite());
        assert!(last.denom_magnitude < RENORM_THRESHOLD * 2.0);
        assert!(rel(last.value, K0_10_5) < 1e-12);
    }

    #[test]
    fn raw_sequence_matches_scaled_initializations() {
        let p = params(4.0, 2.0, 3.0);
        let den = run_sequence(RecurrenceWindow::denominator_start(&p), &p, 3);
        assert_eq!(den[0].value, 1.0);
        assert_eq!(den[1].value, 6.0);
        assert_eq!(den[2].value, 24.0);
        assert_eq!(den[3].value, 232.0 / 3.0);
        let num = run_sequence(RecurrenceWindow::numerator_start(), &p, 3);
        assert_eq!(num[0].value, 0.0);
        assert_eq!(num[1].value, 1.0);
        assert_eq!(num[2].value, 4.0);
        assert_eq!(num[3].value, 13.0);
        assert!(den.iter().chain(&num).all(|t| t.scale_exp == 0));
    }

    #[test]
    fn y_zero_drops_the_last_recurrence_term() {
        // With y = 0 the Q̂_{n−2} coefficient vanishes identically, so
        // corrupting q_nm2 must not change the step.
        let p = params(4.0, 0.0, 3.0);
        let clean = RecurrenceWindow::from_values(SequenceKind::Denominator, 5, 2.0, 3.0, 4.0);
        let dirty = RecurrenceWindow::from_values(SequenceKind::Denominator, 5, 2.0, 3.0, 1e9);
        assert_eq!(
            recurrence_step(5, &clean, &p).unwrap(),
            recurrence_step(5, &dirty, &p).unwrap()
        );
    }
}
