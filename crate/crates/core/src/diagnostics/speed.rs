use crate::error::Result;
use crate::field::{AmbientField, FieldBounds};
use crate::flow::{FlowParams, Snapshot};
use crate::geometry::{angle_positions, compute_geometry, to_angle_param, Point2, Vec2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Speed `F(θ)` on the uniform tangent-angle grid, with its central θ-derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleSpeed {
    pub f: Vec<f64>,
    pub f_theta: Vec<f64>,
}

impl AngleSpeed {
    pub fn dtheta(&self) -> f64 {
        TAU / self.f.len() as f64
    }

    /// `∫|F| dθ` by the periodic trapezoid rule.
    pub fn abs_integral(&self) -> f64 {
        self.f.iter().map(|x| x.abs()).sum::<f64>() * self.dtheta()
    }

    pub fn max(&self) -> (usize, f64) {
        self.f.iter().copied().enumerate().fold((0, f64::NEG_INFINITY), |a, (i, x)| if x > a.1 { (i, x) } else { a })
    }
}

/// Central difference on a periodic uniform grid.
pub fn periodic_d1(f: &[f64], h: f64) -> Vec<f64> {
    let m = f.len();
    (0..m).map(|j| (f[(j + 1) % m] - f[(j + m - 1) % m]) / (2.0 * h)).collect()
}

pub fn periodic_d2(f: &[f64], h: f64) -> Vec<f64> {
    let m = f.len();
    (0..m).map(|j| (f[(j + 1) % m] - 2.0 * f[j] + f[(j + m - 1) % m]) / (h * h)).collect()
}

/// `F(θ) = σ1·k(θ) + σ2 + ⟨V(x(θ)), ν(θ)⟩` with `ν(θ) = (−sin θ, cos θ)`.
/// Errors on a non-convex curve.
pub fn speed_in_angle(snapshot: &Snapshot, field: &AmbientField, params: &FlowParams, m: usize) -> Result<AngleSpeed> {
    let g = compute_geometry(&snapshot.curve)?;
    let prof = to_angle_param(&g, m)?;
    let pos: Vec<Point2> = angle_positions(&snapshot.curve, &g, m)?;
    let f: Vec<f64> = (0..m)
        .map(|j| {
            let th = prof.theta(j);
            let nu = Vec2::new(-th.sin(), th.cos());
            params.sigma1 * prof.samples()[j] + params.sigma2 + field.value(pos[j]).dot(nu)
        })
        .collect();
    let f_theta = periodic_d1(&f, prof.dtheta());
    Ok(AngleSpeed { f, f_theta })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeedRow {
    pub t: f64,
    pub convex: bool,
    pub f_min: f64,
    pub f_max: f64,
    pub abs_integral: f64,
    pub sup_f_theta: f64,
    /// `M + ∫|F| − sup|F_θ|`
    pub gradient_margin: f64,
    /// `M1(1 + ∫|F|) − F_max`
    pub max_margin: f64,
    /// `min over |θ − θ*| ≤ 1/(4π)` of `2F(θ) + M/(2π) − F_max`
    pub local_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeedMonitor {
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "M1")]
    pub m1: f64,
    /// the constant subtracted from `F` (`C1/K`, or 0 when `K = 0`)
    pub shift: f64,
    pub rows: Vec<SpeedRow>,
    pub skipped: usize,
    /// `(t, which)` with `which` one of `gradient`, `max`, `local`
    pub violations: Vec<(f64, String)>,
}

impl SpeedMonitor {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the three speed estimates on every convex snapshot. The first
/// snapshot must be convex because it fixes `M`.
pub fn speed_monitor(
    snapshots: &[Snapshot],
    field: &AmbientField,
    bounds: &FieldBounds,
    params: &FlowParams,
    k_threshold: f64,
    m_theta: usize,
) -> Result<SpeedMonitor> {
    let first = snapshots
        .first()
        .ok_or_else(|| crate::Error::InsufficientData("speed monitor needs snapshots".into()))?;
    let shift = if k_threshold > 0.0 { bounds.c1 / k_threshold } else { 0.0 };
    let s0 = speed_in_angle(first, field, params, m_theta)?;
    let ft: Vec<f64> = s0.f.iter().map(|f| f - shift).collect();
    let ft_theta = periodic_d1(&ft, s0.dtheta());
    let init = ft.iter().zip(&ft_theta).map(|(a, b)| a * a + b * b).fold(0.0, f64::max);
    let floor = shift + params.sigma2.abs() + bounds.c0;
    let m = init.max(floor * floor).sqrt();
    let m1 = (TAU * m).max(TAU + 1.0 / TAU);
    let window = 1.0 / (4.0 * PI);

    let rows: Vec<SpeedRow> = snapshots
        .par_iter()
        .map(|s| match speed_in_angle(s, field, params, m_theta) {
            Err(_) => SpeedRow {
                t: s.t,
                convex: false,
                f_min: f64::NAN,
                f_max: f64::NAN,
                abs_integral: f64::NAN,
                sup_f_theta: f64::NAN,
                gradient_margin: f64::NAN,
                max_margin: f64::NAN,
                local_margin: f64::NAN,
            },
            Ok(sp) => {
                let ia = sp.abs_integral();
                let (jstar, fmax) = sp.max();
                let sup_ft = sp.f_theta.iter().map(|x| x.abs()).fold(0.0, f64::max);
                let h = sp.dtheta();
                let mm = sp.f.len();
                let local = (0..mm)
                    .filter(|&j| {
                        let d = (j as f64 - jstar as f64).abs() * h;
                        d.min(TAU - d) <= window
                    })
                    .map(|j| 2.0 * sp.f[j] + m / TAU - fmax)
                    .fold(f64::INFINITY, f64::min);
                SpeedRow {
                    t: s.t,
                    convex: true,
                    f_min: sp.f.iter().copied().fold(f64::INFINITY, f64::min),
                    f_max: fmax,
                    abs_integral: ia,
                    sup_f_theta: sup_ft,
                    gradient_margin: m + ia - sup_ft,
                    max_margin: m1 * (1.0 + ia) - fmax,
                    local_margin: local,
                }
            }
        })
        .collect();
    let mut violations = Vec::new();
    for r in rows.iter().filter(|r| r.convex) {
        let tol = |scale: f64| 1e-9 * (1.0 + scale.abs());
        if r.gradient_margin < -tol(r.sup_f_theta) {
            violations.push((r.t, "gradient".to_string()));
        }
        if r.max_margin < -tol(r.f_max) {
            violations.push((r.t, "max".to_string()));
        }
        if r.local_margin < -tol(r.f_max) {
            violations.push((r.t, "local".to_string()));
        }
    }
    let skipped = rows.iter().filter(|r| !r.convex).count();
    Ok(SpeedMonitor { m, m1, shift, rows, skipped, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::estimate_bounds;
    use crate::flow::{evolve, StepControl};
    use crate::geometry::ClosedCurve;

    #[test]
    fn circle_has_flat_speed() {
        let p = FlowParams::new(1.0, 0.0).unwrap();
        let c = ClosedCurve::circle(Point2::new(0.2, 0.1), 0.5, 256).unwrap();
        let s = speed_in_angle(&Snapshot { t: 0.0, curve: c }, &AmbientField::Zero, &p, 256).unwrap();
        assert!(s.f.iter().all(|f| (f - 2.0).abs() < 1e-4));
        assert!(s.f_theta.iter().all(|f| f.abs() < 1e-2));
    }

    #[test]
    fn ellipse_run_has_no_violations() {
        let p = FlowParams::new(1.0, 0.0).unwrap();
        let c = ClosedCurve::ellipse(Point2::ZERO, 1.0, 0.5, 128).unwrap();
        let ctl = StepControl { area_floor: 1e-3, snapshot_every: 200, ..Default::default() };
        let tr = evolve(&c, &AmbientField::Zero, &p, &ctl).unwrap();
        let b = estimate_bounds(&AmbientField::Zero, 2.0, 64).unwrap();
        let mon = speed_monitor(&tr.snapshots, &AmbientField::Zero, &b, &p, 0.0, 256).unwrap();
        assert!(mon.ok(), "{:?}", mon.violations);
        assert!(mon.rows[0].gradient_margin >= 0.0);
        assert!(mon.m >= 0.0);
    }
}
