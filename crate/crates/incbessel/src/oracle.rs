//! Exact operator replay of the generic recursive construction behind the
//! approximant sequences, used as a brute-force oracle for the four-term
//! recurrence at small order.
//!
//! Both sequences arise by applying `t² d/dt` repeatedly. Writing the
//! denominator as `𝒟ₙ(t) = qₙ(t) · t^{ν+1} e^{xt+y/t}`, the operator acts on
//! the stripped factor `q` as
//!
//! ```text
//! q ↦ t² q′ + (x t² + (ν+1) t − y) q,            q₀ = 1,
//! ```
//!
//! so `qₙ` stays a Laurent polynomial in `t` and no exponential ever enters
//! the arithmetic. The numerator polynomials `Ñₙ` obey
//!
//! ```text
//! Ñ ↦ t² Ñ′ + t² qₙ,                             Ñ₀ = 0,
//! ```
//!
//! and are genuine Laurent polynomials too (the exponential parts of the two
//! solutions cancel in the combination that defines `Ñ`). Evaluating at
//! `t = 1` and dividing by `n!` reproduces the engine's scaled sequences —
//! the `t^{ν+1}` factor equals one at the evaluation point, so the `q`
//! normalization matches the engine's `e^{−x−y}` scaling exactly.

use thiserror::Error;

use crate::params::Parameters;

/// Finite list of coefficients over consecutive integer powers of `t`,
/// the lowest possibly negative.
///
/// Canonical form: first and last coefficients nonzero; the zero polynomial
/// stores an empty coefficient list and `min_power = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    min_power: i32,
    coeffs: Vec<f64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self {
            min_power: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    /// Single term `c·t^p`.
    pub fn term(c: f64, p: i32) -> Self {
        Self::from_coeffs(p, vec![c])
    }

    /// Builds from coefficients for powers `min_power, min_power+1, …`,
    /// trimming to canonical form.
    pub fn from_coeffs(min_power: i32, coeffs: Vec<f64>) -> Self {
        let mut p = Self { min_power, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|&&c| c == 0.0).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.min_power += leading_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.min_power = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_power(&self) -> i32 {
        self.min_power
    }

    pub fn max_power(&self) -> i32 {
        self.min_power + self.coeffs.len() as i32 - 1
    }

    /// `max_power − min_power`; zero for constants and the zero polynomial.
    pub fn span(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.coeffs.len() as i32 - 1
        }
    }

    pub fn coefficient(&self, power: i32) -> f64 {
        let idx = power - self.min_power;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            0.0
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// `d/dt`; the constant term drops out.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.min_power + i as i32) as f64 * c)
            .collect();
        Self::from_coeffs(self.min_power - 1, coeffs)
    }

    /// Multiplies by `t^k` (shift of all powers).
    pub fn shifted(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            min_power: self.min_power + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_power.min(other.min_power);
        let hi = self.max_power().max(other.max_power());
        let mut coeffs = vec![0.0; (hi - lo + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_power - lo) as usize + i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[(other.min_power - lo) as usize + i] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.min_power + other.min_power, coeffs)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * t.powi(self.min_power + i as i32))
            .sum()
    }

    /// Value at `t = 1`, i.e. the plain coefficient sum (compensated).
    pub fn eval_at_one(&self) -> f64 {
        // Neumaier summation; the coefficients alternate in sign and grow
        // with the order, so the naive sum loses digits first.
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for &c in &self.coeffs {
            let t = sum + c;
            if sum.abs() >= c.abs() {
                comp += (sum - t) + c;
            } else {
                comp += (c - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// One step of the stripped-denominator operator:
/// `q ↦ t² q′ + (x t² + (ν+1) t − y) q`.
pub fn operator_apply_denominator(q: &LaurentPolynomial, params: &Parameters) -> LaurentPolynomial {
    let multiplier = LaurentPolynomial::from_coeffs(
        0,
        vec![-params.y(), params.nu() + 1.0, params.x()],
    );
    q.derivative().shifted(2).add(&multiplier.mul(q))
}

/// One step of the numerator operator: `Ñ ↦ t² Ñ′ + t² q`, where `q` is the
/// stripped denominator polynomial of the same order.
///
/// The result is an exact Laurent polynomial: no exponential factor appears,
/// because the inhomogeneous term `t² f(t) 𝒟ₙ(t)` collapses to `t² qₙ(t)`.
pub fn operator_apply_numerator(
    ntilde: &LaurentPolynomial,
    q_same_order: &LaurentPolynomial,
) -> LaurentPolynomial {
    ntilde
        .derivative()
        .shifted(2)
        .add(&q_same_order.shifted(2))
}

/// One order of the replayed trajectory: `𝒬ₙ(1)/n!` for both sequences.
///
/// `denominator` carries the stripped normalization (the `e^{x+y}` start
/// factor is absent), so it lines up with the engine's scaled sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleTerm {
    pub order: u32,
    pub numerator: f64,
    pub denominator: f64,
}

/// Polynomial coefficients overflowed binary64 before reaching the
/// requested order.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("oracle coefficients overflow past order {largest_valid}")]
pub struct OracleOverflow {
    pub largest_valid: u32,
}

/// Replays the operator exactly up to `n_max`, returning `𝒬ₙ(1)/n!` for
/// both sequences.
///
/// Intended for small orders (`n_max ≲ 30`): the polynomial spans grow
/// linearly but the coefficients grow factorially.
pub fn oracle_trajectory(
    params: &Parameters,
    n_max: u32,
) -> Result<Vec<OracleTerm>, OracleOverflow> {
    let mut q = LaurentPolynomial::constant(1.0);
    let mut ntilde = LaurentPolynomial::zero();
    let mut factorial = 1.0f64;

    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(OracleTerm {
        order: 0,
        numerator: 0.0,
        denominator: 1.0,
    });

    for n in 1..=n_max {
        let next_ntilde = operator_apply_numerator(&ntilde, &q);
        let next_q = operator_apply_denominator(&q, params);
        if !next_q.max_abs_coeff().is_finite() || !next_ntilde.max_abs_coeff().is_finite() {
            return Err(OracleOverflow {
                largest_valid: n - 1,
            });
        }
        ntilde = next_ntilde;
        q = next_q;
        factorial *= n as f64;
        out.push(OracleTerm {
            order: n,
            numerator: ntilde.eval_at_one() / factorial,
            denominator: q.eval_at_one() / factorial,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(x: f64, y: f64, nu: f64) -> Parameters {
        Parameters::new(x, y, nu).unwrap()
    }

    #[test]
    fn first_denominator_polynomial() {
        // q1 = x t² + (ν+1) t − y from q0 = 1.
        let p = params(4.0, 2.0, 3.0);
        let q1 = operator_apply_denominator(&LaurentPolynomial::constant(1.0), &p);
        assert_eq!(q1, LaurentPolynomial::from_coeffs(0, vec![-2.0, 4.0, 4.0]));
    }

    #[test]
    fn operator_on_plain_t() {
        // q = t at (x=1, y=0, ν=0): t²·1 + (t² + t)·t = t³ + 2t².
        let p = params(1.0, 0.0, 0.0);
        let got = operator_apply_denominator(&LaurentPolynomial::term(1.0, 1), &p);
        assert_eq!(got, LaurentPolynomial::from_coeffs(2, vec![2.0, 1.0]));
    }

    #[test]
    fn first_numerator_polynomial_is_t_squared() {
        let n1 = operator_apply_numerator(
            &LaurentPolynomial::zero(),
            &LaurentPolynomial::constant(1.0),
        );
        assert_eq!(n1, LaurentPolynomial::term(1.0, 2));
    }

    #[test]
    fn second_numerator_polynomial() {
        // Ñ2 = 2t³ + t²·q1 = x t⁴ + (ν+3) t³ − y t² for generic arguments.
        let (x, y, nu) = (4.0, 2.0, 3.0);
        let p = params(x, y, nu);
        let q1 = operator_apply_denominator(&LaurentPolynomial::constant(1.0), &p);
        let n2 = operator_apply_numerator(&LaurentPolynomial::term(1.0, 2), &q1);
        assert_eq!(n2, LaurentPolynomial::from_coeffs(2, vec![-y, nu + 3.0, x]));
        // At t=1 over 2! this is (x+ν+3−y)/2, the engine's second numerator.
        assert_eq!(n2.eval_at_one() / 2.0, (x + nu + 3.0 - y) / 2.0);
    }

    #[test]
    fn trajectory_base_and_first_orders() {
        let p = params(4.0, 2.0, 3.0);
        let tr = oracle_trajectory(&p, 3).unwrap();
        assert_eq!(tr[0], OracleTerm { order: 0, numerator: 0.0, denominator: 1.0 });
        assert_eq!(tr[1], OracleTerm { order: 1, numerator: 1.0, denominator: 6.0 });
        // Hand-expanded: q2(1) = 48, q3(1) = 464, Ñ3(1) = 78.
        assert_eq!(tr[2].denominator, 24.0);
        assert_eq!(tr[3].denominator, 464.0 / 6.0);
        assert_eq!(tr[3].numerator, 13.0);
    }

    #[test]
    fn derivative_drops_constants_and_handles_negative_powers() {
        let q = LaurentPolynomial::from_coeffs(-2, vec![3.0, 0.0, 5.0, 1.0]);
        // 3t^-2 + 5 + t  →  -6t^-3 + 1
        let d = q.derivative();
        assert_eq!(d, LaurentPolynomial::from_coeffs(-3, vec![-6.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn zero_polynomial_stays_canonical() {
        let z = LaurentPolynomial::from_coeffs(5, vec![0.0, 0.0]);
        assert!(z.is_zero());
        assert_eq!(z.min_power(), 0);
        assert_eq!(z.derivative(), LaurentPolynomial::zero());
        assert_eq!(z.eval(2.0), 0.0);
    }

    #[test]
    fn numerator_purity_min_power_at_least_two() {
        for &(x, y, nu) in &[(1.0, 0.0, 0.0), (4.0, 2.0, 3.0), (10.0, 5.0, 1.0)] {
            let p = params(x, y, nu);
            let mut q = LaurentPolynomial::constant(1.0);
            let mut ntilde = LaurentPolynomial::zero();
            for _ in 1..=12 {
                let next = operator_apply_numerator(&ntilde, &q);
                q = operator_apply_denominator(&q, &p);
                ntilde = next;
                assert!(ntilde.min_power() >= 2);
            }
        }
    }

    #[test]
    fn span_growth_per_application() {
        // span grows by 2 per step for y > 0 and by 1 for y = 0 (the low end
        // is pinned by the −y·q term only when y is present).
        for &(x, y, nu) in &[(4.0, 2.0, 3.0), (10.0, 5.0, 0.0), (4.0, 0.0, 3.0), (1.0, 0.0, 1.0)] {
            let p = params(x, y, nu);
            let mut q = LaurentPolynomial::constant(1.0);
            for _ in 1..=15 {
                let next = operator_apply_denominator(&q, &p);
                let growth = next.span() - q.span();
                assert!(
                    growth == 1 || growth == 2,
                    "span grew by {growth} at ({x},{y},{nu})"
                );
                q = next;
            }
        }
    }

    #[test]
    fn overflow_reports_largest_valid_order() {
        // Large x makes the coefficients blow up quickly; the error carries
        // the last order that was still finite.
        let p = params(1e150, 0.0, 0.0);
        match oracle_trajectory(&p, 30) {
            Err(OracleOverflow { largest_valid }) => assert!(largest_valid < 30),
            Ok(_) => panic!("expected coefficient overflow"),
        }
    }
}
