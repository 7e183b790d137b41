use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicBranch {
    /// three real roots, trigonometric form (includes `q = 0`)
    Trig,
    /// one real root, hyperbolic form
    Cosh,
    /// `p = 0`, real cube root
    Cbrt,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicData {
    /// coefficients of `x³, x², x, 1`
    pub coefficients: [f64; 4],
    /// shift of the depressed variable, `x = t + shift`
    pub shift: f64,
    pub p: f64,
    pub q: f64,
    pub discriminant: f64,
    pub branch: CubicBranch,
    pub bisection_root: f64,
}

/// `P(x) = σ1x³ − ½(|σ2|−σ2)x² − 3C1x − C2`.
pub fn threshold_polynomial(sigma1: f64, sigma2: f64, c1: f64, c2: f64) -> [f64; 4] {
    let s = sigma2.abs() - sigma2;
    [sigma1, -0.5 * s, -3.0 * c1, -c2]
}

pub fn eval_poly(c: &[f64; 4], x: f64) -> f64 {
    ((c[0] * x + c[1]) * x + c[2]) * x + c[3]
}

pub fn bisect_largest_root(c: &[f64; 4]) -> f64 {
    // P has exactly one positive root unless all lower coefficients vanish
    if c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0 {
        return 0.0;
    }
    let hi0 = 1.0 + c[1..].iter().map(|a| (a / c[0]).abs()).fold(0.0, f64::max);
    let (mut lo, mut hi) = (0.0f64, hi0);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval_poly(c, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest non-negative root `K` of the threshold cubic, from the closed form
/// selected by the sign of `Δ = −(4p³ + 27q²)` and checked against bisection.
pub fn curvature_threshold_k(sigma1: f64, sigma2: f64, c1: f64, c2: f64) -> Result<(f64, CubicData)> {
    if !(sigma1 > 0.0) || !(c1 >= 0.0) || !(c2 >= 0.0) || !sigma2.is_finite() || !c1.is_finite() || !c2.is_finite() {
        return Err(Error::Domain(format!("need sigma1 > 0, C1 >= 0, C2 >= 0; got ({sigma1}, {sigma2}, {c1}, {c2})")));
    }
    let coefficients = threshold_polynomial(sigma1, sigma2, c1, c2);
    let s = sigma2.abs() - sigma2;
    let shift = s / (6.0 * sigma1);
    let p = -(36.0 * sigma1 * c1 + s * s) / (12.0 * sigma1 * sigma1);
    let q = (-s.powi(3) / 4.0 - 13.5 * sigma1 * s * c1 - 27.0 * sigma1 * sigma1 * c2) / (27.0 * sigma1.powi(3));
    let discriminant = -(4.0 * p.powi(3) + 27.0 * q * q);
    let (t, branch) = if p == 0.0 {
        ((-q).cbrt(), CubicBranch::Cbrt)
    } else if discriminant >= 0.0 {
        let arg = ((3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        (2.0 * (-p / 3.0).sqrt() * (arg.acos() / 3.0).cos(), CubicBranch::Trig)
    } else {
        let arg = (-3.0 * q.abs() / (2.0 * p)) * (-3.0 / p).sqrt();
        (-2.0 * q.signum() * (-p / 3.0).sqrt() * (arg.max(1.0).acosh() / 3.0).cosh(), CubicBranch::Cosh)
    };
    let closed = (t + shift).max(0.0);
    let bis = bisect_largest_root(&coefficients);
    if (closed - bis).abs() > 1e-9 * closed.max(1.0) {
        return Err(Error::Consistency(format!("closed-form root {closed} disagrees with bisection {bis}")));
    }
    Ok((closed, CubicData { coefficients, shift, p, q, discriminant, branch, bisection_root: bis }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(curvature_threshold_k(1.0, 0.0, 0.0, 0.0).unwrap().0, 0.0);
        assert!((curvature_threshold_k(1.0, 0.0, 0.0, 8.0).unwrap().0 - 2.0).abs() < 1e-12);
        let (k, d) = curvature_threshold_k(1.0, -2.0, 0.0, 0.0).unwrap();
        assert!((k - 2.0).abs() < 1e-12);
        assert_eq!(d.branch, CubicBranch::Trig);
        // positive σ2 drops out
        assert_eq!(curvature_threshold_k(2.0, 3.0, 1.0, 0.5).unwrap().0, curvature_threshold_k(2.0, 0.0, 1.0, 0.5).unwrap().0);
    }

    #[test]
    fn branch_selection() {
        assert_eq!(curvature_threshold_k(1.0, 0.0, 1.0, 0.0).unwrap().1.branch, CubicBranch::Trig);
        assert_eq!(curvature_threshold_k(1.0, 0.0, 0.1, 5.0).unwrap().1.branch, CubicBranch::Cosh);
        assert_eq!(curvature_threshold_k(1.0, 0.0, 0.0, 8.0).unwrap().1.branch, CubicBranch::Cbrt);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(curvature_threshold_k(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(curvature_threshold_k(1.0, 0.0, -1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn root_properties(s1 in 0.1f64..10.0, s2 in -5.0f64..5.0, c1 in 0.0f64..10.0, c2 in 0.0f64..10.0) {
            let (k, d) = curvature_threshold_k(s1, s2, c1, c2).unwrap();
            prop_assert!(k >= 0.0);
            prop_assert!(eval_poly(&d.coefficients, k).abs() <= 1e-9 * (1.0 + k.powi(3) * s1));
            for e in 1..=3 {
                let x = k + 10f64.powi(-e) * (1.0 + k);
                prop_assert!(eval_poly(&d.coefficients, x) > 0.0);
            }
        }

        #[test]
        fn monotone(s1 in 0.1f64..10.0, s2 in -5.0f64..5.0, c1 in 0.0f64..10.0, c2 in 0.0f64..10.0, d in 0.0f64..2.0) {
            let k = curvature_threshold_k(s1, s2, c1, c2).unwrap().0;
            let tol = 1e-12 * (1.0 + k);
            prop_assert!(curvature_threshold_k(s1, s2, c1 + d, c2).unwrap().0 >= k - tol);
            prop_assert!(curvature_threshold_k(s1, s2, c1, c2 + d).unwrap().0 >= k - tol);
            prop_assert!(curvature_threshold_k(s1 + d, s2, c1, c2).unwrap().0 <= k + tol);
        }
    }
}
