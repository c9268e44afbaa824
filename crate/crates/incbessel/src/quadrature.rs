//! Ground-truth evaluation of the defining integrals by adaptive
//! Gauss–Kronrod quadrature, independent of all recurrence machinery.
//!
//! The semi-infinite range is mapped to a finite interval before
//! integration. Two distinct maps are provided so they can be played against
//! each other as a consistency check:
//!
//! * rational: `t = 1/(1−u)`, `u ∈ [0, 1)` (the default), and
//! * exponential: `t = 1 + e^s`.
//!
//! Truncation is certifiable rather than heuristic: the integration window
//! is grown until an explicit bound on the discarded tail drops below the
//! relative target times a crude lower bound on the integral itself.

use crate::params::Parameters;

/// Accuracy controls for the quadrature oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Requested relative accuracy (default 1e-15).
    pub rel_target: f64,
    /// Maximum bisection depth of the adaptive scheme (default 20).
    pub max_refinements: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_target: 1e-15,
            max_refinements: 20,
        }
    }
}

impl QuadratureConfig {
    fn validate(&self) {
        assert!(
            self.rel_target > 0.0 && self.rel_target < 1.0,
            "rel_target must lie in (0, 1)"
        );
    }
}

/// A quadrature value with its achieved-error metadata. When the refinement
/// budget runs out before the target, `converged` is false and the best
/// value is still returned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub est_rel_error: f64,
    pub converged: bool,
}

// 15-point Kronrod extension of 7-point Gauss (QUADPACK abscissae/weights).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// Error estimates carry a floor of `50·eps·∫|f|`, so estimates below
/// ~100·eps of the panel mass cannot be improved by further splitting.
const ESTIMATE_FLOOR_REL: f64 = 100.0 * f64::EPSILON;

/// One Gauss–Kronrod 7-15 panel: returns the Kronrod value, a QUADPACK
/// style error estimate, and the panel's `∫|f|`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];

    for j in 0..7 {
        let absc = half * XGK[j];
        let f1 = f(center - absc);
        let f2 = f(center + absc);
        fv1[j] = f1;
        fv2[j] = f2;
        let fsum = f1 + f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
        resk += WGK[j] * fsum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }

    let result = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * 1.0f64.min((200.0 * err / resasc).powf(1.5));
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err, resabs)
}

/// Depth-limited bisection; splits a panel only while its error estimate
/// exceeds both its share of the absolute tolerance and the estimator's own
/// roundoff floor (a floored panel cannot report any better).
fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64, depth: u32) -> (f64, f64) {
    let (v, e, resabs) = gk15(f, a, b);
    if e <= abs_tol || e <= ESTIMATE_FLOOR_REL * resabs || depth == 0 {
        return (v, e);
    }
    let mid = 0.5 * (a + b);
    if mid <= a || mid >= b {
        return (v, e);
    }
    let (vl, el) = adapt(f, a, mid, 0.5 * abs_tol, depth - 1);
    let (vr, er) = adapt(f, mid, b, 0.5 * abs_tol, depth - 1);
    (vl + vr, el + er)
}

/// Adaptive integration of `f` over `[a, b]` to a relative target.
///
/// Requests below the estimator resolution (~2e-14) are judged against that
/// resolution instead: binary64 error estimates cannot certify more even
/// when the value itself is more accurate.
fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, qc: &QuadratureConfig) -> Estimate {
    let eff_rel = qc.rel_target.max(ESTIMATE_FLOOR_REL);
    let (rough, _, _) = gk15(f, a, b);
    let scale = rough.abs().max(f64::MIN_POSITIVE);
    let abs_tol = 0.5 * eff_rel * scale;
    let (value, err) = adapt(f, a, b, abs_tol, qc.max_refinements);
    let est_rel_error = err / value.abs().max(f64::MIN_POSITIVE);
    Estimate {
        value,
        est_rel_error,
        converged: est_rel_error <= eff_rel,
    }
}

/// Log of the tail integrand: `ln f(t) = −xt − y/t − (ν+1) ln t`.
/// Working in logs avoids spurious `0 · ∞` at extreme `t`.
fn log_integrand(params: &Parameters, t: f64) -> f64 {
    -params.x() * t - params.y() / t - (params.nu() + 1.0) * t.ln()
}

/// Crude but rigorous lower bound on `K_ν(x,y)` relative to the integrand at
/// `t = 1`: on `[1, 1+h]` with `h = 1/s`, `s = x + |ν+1|`, the integrand
/// loses at most a factor `e`, so `K ≥ f(1)·(1−1/e)/s`.
fn log_lower_bound_vs_f1(params: &Parameters) -> f64 {
    let s = params.x() + (params.nu() + 1.0).abs();
    (0.632 / s).ln()
}

/// Picks the truncation point `T` such that the discarded tail
/// `∫_T^∞ f ≤ 2 f(T)/x` (valid once `T ≥ 1 + 2·max(0, −ν−1)/x`) is below
/// `rel_target` times the lower bound on the integral, with three orders of
/// margin.
fn truncation_point(params: &Parameters, rel_target: f64) -> f64 {
    let x = params.x();
    let a = (-params.nu() - 1.0).max(0.0);
    let log_f1 = log_integrand(params, 1.0);
    let log_budget = log_f1 + log_lower_bound_vs_f1(params) + rel_target.ln() - 7.0;

    let mut t = 1.0 + (1.0 + 2.0 * a) / x;
    while (2.0 / x).ln() + log_integrand(params, t) > log_budget && t < 1e18 {
        t = 1.0 + 2.0 * (t - 1.0);
    }
    t
}

/// `K_ν(x,y) = ∫₁^∞ e^{−xt−y/t} t^{−ν−1} dt` via the rational map
/// `t = 1/(1−u)` with adaptive refinement against the mapped boundary.
pub fn tail_integral(params: &Parameters, qc: &QuadratureConfig) -> Estimate {
    qc.validate();
    let t_max = truncation_point(params, qc.rel_target);
    let u_max = 1.0 - 1.0 / t_max;
    // f(t)·dt/du = e^{−xt−y/t}·t^{1−ν}
    let g = |u: f64| {
        let t = 1.0 / (1.0 - u);
        (log_integrand(params, t) + 2.0 * t.ln()).exp()
    };
    integrate(&g, 0.0, u_max, qc)
}

/// Same integral through the exponential map `t = 1 + e^s`; exists so the
/// two transformations can be cross-checked against each other.
pub fn tail_integral_exp_map(params: &Parameters, qc: &QuadratureConfig) -> Estimate {
    qc.validate();
    let t_max = truncation_point(params, qc.rel_target);
    let s_max = (t_max - 1.0).ln();
    // Contribution below s_min is at most f(1)·e^{s_min}; compare against
    // the same lower bound used for the upper truncation.
    let s_min = (qc.rel_target.ln() + log_lower_bound_vs_f1(params) - 7.0).max(-700.0);
    let g = |s: f64| {
        let es = s.exp();
        let t = 1.0 + es;
        (log_integrand(params, t) + s).exp()
    };
    integrate(&g, s_min, s_max, qc)
}

/// Full-line integral `∫₀^∞ e^{−xt−y/t} t^{−ν−1} dt` through the log map
/// `t = e^w`. Requires `y > 0` for convergence at the origin. Used by the
/// complete-integral identity check; computed directly, without splitting at
/// `t = 1`, so it stays independent of [`tail_integral`].
pub fn full_integral(params: &Parameters, qc: &QuadratureConfig) -> Estimate {
    qc.validate();
    let (x, y, nu) = (params.x(), params.y(), params.nu());
    assert!(y > 0.0, "the full-line integral needs y > 0");

    // ln g(w) = −x e^w − y e^{−w} − ν w after absorbing the Jacobian.
    let log_g = |w: f64| {
        // Guard the exponentials themselves: for |w| ≈ 700 the linear νw
        // term is irrelevant next to e^{|w|}.
        let ew = w.exp();
        let emw = (-w).exp();
        -x * ew - y * emw - nu * w
    };
    // Peak proxy at the saddle of x e^w + y e^{−w}.
    let w0 = 0.5 * (y / x).ln();
    let width = 1.0 / (x * w0.exp() + y * (-w0).exp() + nu.abs() + 1.0);
    let log_i_lower = log_g(w0) + width.min(1.0).ln() - 1.0;
    let log_budget = log_i_lower + qc.rel_target.ln() - 7.0;

    // Grow the window until the certified one-sided tail bounds
    // 2 g(w)/(x e^w) and 2 g(w)/(y e^{−w}) fall below the budget.
    let mut w_max = w0.max(0.0) + 1.0;
    while {
        let xe = x * w_max.exp();
        xe < 2.0 * (y + nu.abs() + 1.0) || log_g(w_max) + (2.0 / xe).ln() > log_budget
    } && w_max < 700.0
    {
        w_max += w_max.abs().max(1.0);
    }
    let mut w_min = w0.min(0.0) - 1.0;
    while {
        let ye = y * (-w_min).exp();
        ye < 2.0 * (x + nu.abs() + 1.0) || log_g(w_min) + (2.0 / ye).ln() > log_budget
    } && w_min > -700.0
    {
        w_min -= w_min.abs().max(1.0);
    }

    let g = |w: f64| log_g(w).exp();
    integrate(&g, w_min, w_max, qc)
}
