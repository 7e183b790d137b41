use super::speed::periodic_d2;
use crate::flow::{FlowParams, RescaledTrajectory};
use crate::geometry::{compute_geometry, to_angle_param};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundnessRow {
    pub t_hat: f64,
    pub area: f64,
    pub length: f64,
    pub kmin: f64,
    pub kmax: f64,
    pub ratio: f64,
    /// `f(t̂) = ∫u dθ`; NaN when not convex
    pub f: f64,
    /// `2k̂max·Â − L̂`
    pub slack: f64,
    pub convex: bool,
}

/// `u = −1 + σ1k̂(k̂_θθ + k̂) − 2√(2T)σ2e^{−t̂}k̂` integrated over the angle grid.
pub fn rescaled_f(k: &[f64], sigma1: f64, sigma2: f64, beta: f64) -> f64 {
    let m = k.len();
    let h = std::f64::consts::TAU / m as f64;
    let kt = periodic_d2(k, h);
    (0..m).map(|j| -1.0 + sigma1 * k[j] * (kt[j] + k[j]) - 2.0 * beta * sigma2 * k[j]).sum::<f64>() * h
}

/// Roundness quantities on every rescaled snapshot.
pub fn rescaled_roundness(rescaled: &RescaledTrajectory, params: &FlowParams, m: usize) -> Vec<RoundnessRow> {
    rescaled
        .snapshots
        .par_iter()
        .map(|s| {
            let g = match compute_geometry(&s.curve) {
                Ok(g) => g,
                Err(_) => {
                    return RoundnessRow {
                        t_hat: s.t_hat,
                        area: f64::NAN,
                        length: f64::NAN,
                        kmin: f64::NAN,
                        kmax: f64::NAN,
                        ratio: f64::NAN,
                        f: f64::NAN,
                        slack: f64::NAN,
                        convex: false,
                    }
                }
            };
            let (kmin, kmax) = (g.min_curvature(), g.max_curvature());
            let prof = to_angle_param(&g, m);
            let convex = prof.is_ok();
            let f = prof
                .map(|p| rescaled_f(p.samples(), params.sigma1, params.sigma2, 1.0 / s.phi))
                .unwrap_or(f64::NAN);
            RoundnessRow {
                t_hat: s.t_hat,
                area: g.area,
                length: g.length,
                kmin,
                kmax,
                ratio: if kmin > 0.0 { kmax / kmin } else { f64::INFINITY },
                f,
                slack: 2.0 * kmax * g.area - g.length,
                convex,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{RescaledRow, RescaledSnapshot};
    use crate::geometry::{ClosedCurve, Point2};
    use std::f64::consts::PI;

    #[test]
    fn self_shrinker_values() {
        let c = ClosedCurve::circle(Point2::ZERO, 1.0, 512).unwrap();
        let rt = RescaledTrajectory {
            extinction_time: 1.0,
            origin: Point2::ZERO,
            snapshots: vec![RescaledSnapshot { t: 0.0, t_hat: 0.0, phi: 1.0, curve: c }],
            series: Vec::<RescaledRow>::new(),
        };
        let r = rescaled_roundness(&rt, &FlowParams::new(1.0, 0.0).unwrap(), 512)[0];
        assert!((r.area - PI).abs() < 1e-9);
        assert!((r.ratio - 1.0).abs() < 1e-9);
        assert!(r.f.abs() < 1e-6, "{}", r.f);
        assert!(r.slack >= -1e-3);
    }

    #[test]
    fn f_of_a_circle_profile() {
        // k̂ ≡ c: f = 2π(−1 + σ1c²)
        let k = vec![1.5; 64];
        assert!((rescaled_f(&k, 2.0, 0.0, 1.0) - 2.0 * PI * (-1.0 + 4.5)).abs() < 1e-12);
    }
}
