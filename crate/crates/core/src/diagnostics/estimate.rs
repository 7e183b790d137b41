use crate::flow::Snapshot;
use crate::geometry::{compute_geometry, median_curvature, to_angle_param};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricEstimateRow {
    pub t: f64,
    pub convex: bool,
    /// median curvature `k*` (NaN when not convex)
    pub k_star: f64,
    pub l_over_a: f64,
    /// `k* < L/A`; `None` when skipped
    pub verdict: Option<bool>,
}

/// `k* < L/A` on every convex snapshot, with `k*` from an `m`-point angle profile.
pub fn geometric_estimate(snapshots: &[Snapshot], m: usize) -> Vec<GeometricEstimateRow> {
    snapshots
        .par_iter()
        .map(|s| {
            let g = compute_geometry(&s.curve);
            let l_over_a = g.as_ref().map(|g| g.length / g.area).unwrap_or(f64::NAN);
            match g.and_then(|g| to_angle_param(&g, m)) {
                Ok(p) => {
                    let ks = median_curvature(&p);
                    GeometricEstimateRow { t: s.t, convex: true, k_star: ks, l_over_a, verdict: Some(ks < l_over_a) }
                }
                Err(_) => GeometricEstimateRow { t: s.t, convex: false, k_star: f64::NAN, l_over_a, verdict: None },
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeRow {
    pub t: f64,
    pub kmax: f64,
    pub max_ks: f64,
    pub max_kss: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeReport {
    pub rows: Vec<DerivativeRow>,
    /// first time a derivative became non-finite or exceeded the scale-free cap
    pub unbounded_at: Option<f64>,
}

/// Scale-free cap on `|k_s|/k_max²` and `|k_ss|/k_max³` before growth is flagged.
pub const DERIVATIVE_CAP: f64 = 1e3;

/// `max|k_s|` and `max|k_ss|` per snapshot.
pub fn derivative_boundedness(snapshots: &[Snapshot]) -> DerivativeReport {
    let rows: Vec<DerivativeRow> = snapshots
        .par_iter()
        .map(|s| match compute_geometry(&s.curve) {
            Ok(g) => {
                let ks = g.d_ds(&g.curvature);
                let kss = g.d2_ds2(&g.curvature);
                let m = |v: &[f64]| v.iter().map(|x| x.abs()).fold(0.0, f64::max);
                DerivativeRow { t: s.t, kmax: g.max_abs_curvature(), max_ks: m(&ks), max_kss: m(&kss) }
            }
            Err(_) => DerivativeRow { t: s.t, kmax: f64::NAN, max_ks: f64::NAN, max_kss: f64::NAN },
        })
        .collect();
    let unbounded_at = rows
        .iter()
        .find(|r| {
            !(r.max_ks.is_finite() && r.max_kss.is_finite())
                || r.max_ks > DERIVATIVE_CAP * r.kmax.powi(2)
                || r.max_kss > DERIVATIVE_CAP * r.kmax.powi(3)
        })
        .map(|r| r.t);
    DerivativeReport { rows, unbounded_at }
}
