//! Argument triple `(x, y, ν)` with domain validation.

use thiserror::Error;

/// The argument triple of `K_ν(x, y) = ∫₁^∞ e^{−xt−y/t} t^{−ν−1} dt`.
///
/// Validated on construction:
/// * `x > 0` — the integrand must decay as `t → ∞` for every order `ν`;
/// * `y ≥ 0`;
/// * all three fields finite.
///
/// The order `ν` may be any finite real, including negative values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parameters {
    x: f64,
    y: f64,
    nu: f64,
}

/// Rejected argument triple.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParameterError {
    #[error("x must be strictly positive, got {0}")]
    NonPositiveX(f64),
    #[error("y must be non-negative, got {0}")]
    NegativeY(f64),
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
}

impl Parameters {
    /// Validates and wraps an argument triple.
    pub fn new(x: f64, y: f64, nu: f64) -> Result<Self, ParameterError> {
        for (name, value) in [("x", x), ("y", y), ("nu", nu)] {
            if !value.is_finite() {
                return Err(ParameterError::NonFinite { name, value });
            }
        }
        if x <= 0.0 {
            return Err(ParameterError::NonPositiveX(x));
        }
        if y < 0.0 {
            return Err(ParameterError::NegativeY(y));
        }
        Ok(Self { x, y, nu })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// The integrand `e^{−xt−y/t} t^{−ν−1}` of the defining tail integral.
    pub fn integrand(&self, t: f64) -> f64 {
        (-self.x * t - self.y / t).exp() * t.powf(-self.nu - 1.0)
    }
}

impl std::fmt::Display for Parameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K_{}({}, {})", self.nu, self.x, self.y)
    }
}
