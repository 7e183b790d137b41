use super::Trajectory;
use crate::error::{Error, Result};
use crate::geometry::{compute_geometry, ClosedCurve, Point2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct RescaledSnapshot {
    pub t: f64,
    pub t_hat: f64,
    /// `φ(t) = (2T − 2t)^{−1/2}`
    pub phi: f64,
    /// `γ̂ = φ·(γ − 𝒪)`
    pub curve: ClosedCurve,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RescaledRow {
    pub t_hat: f64,
    pub length: f64,
    pub area: f64,
    pub kmin: f64,
    pub kmax: f64,
}

#[derive(Clone, Debug)]
pub struct RescaledTrajectory {
    pub extinction_time: f64,
    pub origin: Point2,
    pub snapshots: Vec<RescaledSnapshot>,
    pub series: Vec<RescaledRow>,
}

/// Parabolic blow-up of a trajectory at `(T, 𝒪)` with `t̂ = −½·log(1 − t/T)`.
pub fn rescale_trajectory(traj: &Trajectory, t_ext: f64, origin: Point2) -> Result<RescaledTrajectory> {
    if !(t_ext > 0.0) || !t_ext.is_finite() {
        return Err(Error::Domain(format!("extinction time must be positive, got {t_ext}")));
    }
    if let Some(s) = traj.snapshots.iter().find(|s| s.t >= t_ext) {
        return Err(Error::Domain(format!("snapshot at t = {} is not before T = {t_ext}", s.t)));
    }
    let snapshots: Vec<RescaledSnapshot> = traj
        .snapshots
        .iter()
        .map(|s| {
            let phi = 1.0 / (2.0 * (t_ext - s.t)).sqrt();
            RescaledSnapshot {
                t: s.t,
                t_hat: -0.5 * (-s.t / t_ext).ln_1p(),
                phi,
                curve: s.curve.affine_scale(origin, phi),
            }
        })
        .collect();
    let series = snapshots
        .par_iter()
        .map(|s| {
            let g = compute_geometry(&s.curve)?;
            Ok(RescaledRow {
                t_hat: s.t_hat,
                length: g.length,
                area: g.area,
                kmin: g.min_curvature(),
                kmax: g.max_curvature(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RescaledTrajectory { extinction_time: t_ext, origin, snapshots, series })
}

impl RescaledTrajectory {
    /// Indices of the snapshots with `t̂` in the last `span` units of `t̂`.
    pub fn tail(&self, span: f64) -> Vec<usize> {
        let last = self.snapshots.last().map(|s| s.t_hat).unwrap_or(0.0);
        (0..self.snapshots.len()).filter(|&i| self.snapshots[i].t_hat >= last - span).collect()
    }
}
