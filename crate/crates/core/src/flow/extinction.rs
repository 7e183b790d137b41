use super::{StopReason, Trajectory};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extinction {
    /// Extinction time `T`.
    pub time: f64,
    /// Extinction point `𝒪` (centroid of the final snapshot).
    pub origin: Point2,
}

/// Extrapolates `A(t) → 0` from the tail of the area series.
///
/// A quadratic is fitted through the last row and the rows whose areas are
/// closest to twice and three times the last area; its root past the last time
/// is `T`. Since `A` is asymptotically linear in `T − t`, the error is cubic in
/// the remaining time.
pub fn estimate_extinction(traj: &Trajectory) -> Result<Extinction> {
    if traj.stop_reason != StopReason::Extinct {
        return Err(Error::EstimatorInapplicable(format!(
            "trajectory stopped with `{}`, not at the area floor",
            traj.stop_reason.as_str()
        )));
    }
    let s = &traj.series;
    if s.len() < 3 {
        return Err(Error::InsufficientData("need at least 3 series rows".into()));
    }
    let n = s.len() - 1;
    let a_last = s[n].area;
    let pick = |target: f64, below: usize| -> usize {
        (0..below)
            .min_by(|&i, &j| (s[i].area - target).abs().partial_cmp(&(s[j].area - target).abs()).unwrap())
            .unwrap()
    };
    let i1 = pick(2.0 * a_last, n);
    let i0 = pick(3.0 * a_last, i1.max(1));
    let (i0, i1) = if i0 == i1 { (i1.saturating_sub(1), i1) } else { (i0, i1) };
    let (i0, i1) = if i1 == n { (n - 2, n - 1) } else { (i0, i1) };
    let pts = [(s[i0].t, s[i0].area), (s[i1].t, s[i1].area), (s[n].t, a_last)];
    let lagrange = |t: f64| -> (f64, f64) {
        let mut v = 0.0;
        let mut d = 0.0;
        for a in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&b| b != a).collect();
            let (b, c) = (others[0], others[1]);
            let den = (pts[a].0 - pts[b].0) * (pts[a].0 - pts[c].0);
            v += pts[a].1 * (t - pts[b].0) * (t - pts[c].0) / den;
            d += pts[a].1 * ((t - pts[b].0) + (t - pts[c].0)) / den;
        }
        (v, d)
    };
    // linear guess from the last two points, then Newton on the quadratic
    let slope = (pts[2].1 - pts[1].1) / (pts[2].0 - pts[1].0);
    if !(slope < 0.0) {
        return Err(Error::EstimatorInapplicable("area is not decreasing at the end of the run".into()));
    }
    let mut t = pts[2].0 - pts[2].1 / slope;
    for _ in 0..50 {
        let (v, d) = lagrange(t);
        if d >= 0.0 {
            break;
        }
        let next = t - v / d;
        if (next - t).abs() <= 1e-15 * t.abs() {
            t = next;
            break;
        }
        t = next;
    }
    if !(t > pts[2].0) || !t.is_finite() {
        t = pts[2].0 - pts[2].1 / slope;
    }
    Ok(Extinction { time: t, origin: traj.final_snapshot().curve.centroid() })
}
