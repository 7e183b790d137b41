use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfinementCase {
    /// the field is bounded on the whole plane
    A,
    /// the initial curve lies in a disk of radius `R0 < σ1/(|σ2| + C0)`
    B,
    /// integrable growth: the confinement ODE has a solution past `1/(σ1π)`
    C,
}

/// Length threshold: a finite value or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthThreshold {
    Finite(f64),
    Infinite,
}

impl LengthThreshold {
    /// `L < M`, with everything finite below `+∞`.
    pub fn exceeds(&self, length: f64) -> bool {
        match *self {
            LengthThreshold::Finite(m) => length < m,
            LengthThreshold::Infinite => length.is_finite(),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            LengthThreshold::Finite(m) => m,
            LengthThreshold::Infinite => f64::INFINITY,
        }
    }
}

/// `(πσ2 + √(π²σ2² + 3π²σ1β))/β`: the length below which the quadratic in the
/// length-derivative estimate stays non-positive, where `β` is the weight
/// `α·C1 + (1−α)²·C0²/σ1` left after Young's inequality.
pub fn length_bound_for_beta(sigma1: f64, sigma2: f64, beta: f64) -> f64 {
    (PI * sigma2 + (PI * PI * sigma2 * sigma2 + 3.0 * PI * PI * sigma1 * beta).sqrt()) / beta
}

/// `β(α) = α·C1 + (1−α)²·C0²/σ1`.
pub fn alpha_weight(sigma1: f64, c0: f64, c1: f64, alpha: f64) -> f64 {
    alpha * c1 + (1.0 - alpha).powi(2) * c0 * c0 / sigma1
}

pub fn length_threshold_m(
    case: ConfinementCase,
    sigma1: f64,
    sigma2: f64,
    c0: f64,
    c1: f64,
    x_t0: Option<f64>,
) -> Result<LengthThreshold> {
    if !(sigma1 > 0.0) || !(c0 >= 0.0) || !(c1 >= 0.0) {
        return Err(Error::Domain(format!("need sigma1 > 0, C0 >= 0, C1 >= 0; got ({sigma1}, {c0}, {c1})")));
    }
    match case {
        ConfinementCase::A | ConfinementCase::B => {
            if c0 == 0.0 || c1 == 0.0 {
                return Ok(LengthThreshold::Infinite);
            }
            // minimise β over α ∈ [0, 1): interior minimiser α* = 1 − σ1C1/(2C0²)
            let u = sigma1 * c1 / (c0 * c0);
            let beta = if u < 2.0 { c1 * (1.0 - 0.25 * u) } else { c0 * c0 / sigma1 };
            Ok(LengthThreshold::Finite(length_bound_for_beta(sigma1, sigma2, beta)))
        }
        ConfinementCase::C => {
            let x = x_t0.ok_or_else(|| Error::MissingInput("case (c) needs x(1/(sigma1*pi))".into()))?;
            if !(x >= 0.0) {
                return Err(Error::Domain(format!("x(T0) must be non-negative, got {x}")));
            }
            let s = sigma2.abs() - sigma2;
            let d1 = s + (s * s + 4.0 * PI * x * x).sqrt();
            let d2 = 0.5 * s + x;
            let m1 = if d1 > 0.0 { 4.0 * sigma1 * PI / d1 } else { f64::INFINITY };
            let m2 = if d2 > 0.0 { sigma1 * PI / d2 } else { f64::INFINITY };
            let m = m1.min(m2);
            Ok(if m.is_finite() { LengthThreshold::Finite(m) } else { LengthThreshold::Infinite })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(length_threshold_m(ConfinementCase::B, 1.0, 0.0, 1.0, 0.0, None).unwrap(), LengthThreshold::Infinite);
        assert_eq!(length_threshold_m(ConfinementCase::A, 1.0, 0.0, 0.0, 2.0, None).unwrap(), LengthThreshold::Infinite);
        // first branch of the closed form at C0 = 1, σ2 = 0: √(3π²)
        assert!((length_bound_for_beta(1.0, 0.0, 1.0) - 3f64.sqrt() * PI).abs() < 1e-12);
        let m = length_threshold_m(ConfinementCase::C, 1.0, 0.0, 0.0, 0.0, Some(1.0)).unwrap();
        assert!((m.as_f64() - PI).abs() < 1e-12);
        assert!(matches!(length_threshold_m(ConfinementCase::C, 1.0, 0.0, 0.0, 0.0, None), Err(Error::MissingInput(_))));
    }

    #[test]
    fn infinity_compares_correctly() {
        assert!(LengthThreshold::Infinite.exceeds(1e300));
        assert!(!LengthThreshold::Finite(2.0).exceeds(2.0));
    }

    #[test]
    fn large_c1_uses_alpha_zero() {
        // σ1C1 ≥ 2C0²: the interior minimiser leaves [0,1), β = C0²/σ1
        let m = length_threshold_m(ConfinementCase::B, 1.0, 0.5, 1.0, 3.0, None).unwrap().as_f64();
        assert!((m - length_bound_for_beta(1.0, 0.5, 1.0)).abs() < 1e-12);
    }
}
