use super::{Snapshot, Trajectory};
use crate::field::{killing_integral_curve, AmbientField};

/// Maps a trajectory of the flow without ambient field to the flow under the
/// Killing field `V = a·(y, −x) + (b, c)`.
///
/// `V` generates the rigid motions `x ↦ e^{−atR}x + c(t)` with `c` the integral
/// curve of `V` through the origin, so each snapshot at time `t` is rotated by
/// `−a·t` about the origin and shifted by `killing_integral_curve(−a, b, c, t)`.
pub fn rigid_motion_killing(base: &Trajectory, a: f64, b: f64, c: f64) -> Trajectory {
    let snapshots = base
        .snapshots
        .iter()
        .map(|s| Snapshot { t: s.t, curve: s.curve.rigid_motion(-a * s.t, killing_integral_curve(-a, b, c, s.t)) })
        .collect();
    Trajectory {
        params: base.params,
        field: AmbientField::Killing { a, b, c },
        snapshots,
        series: Vec::new(),
        stop_reason: base.stop_reason,
        nonconvex_time: base.nonconvex_time,
        steps: base.steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{evolve, FlowParams, StepControl};
    use crate::geometry::{hausdorff_distance, ClosedCurve, Point2};

    fn base() -> Trajectory {
        let c = ClosedCurve::ellipse(Point2::new(0.5, 0.2), 1.0, 0.7, 64).unwrap();
        let ctl = StepControl { max_time: 0.05, snapshot_every: 20, ..Default::default() };
        evolve(&c, &AmbientField::Zero, &FlowParams::new(1.0, 0.0).unwrap(), &ctl).unwrap()
    }

    #[test]
    fn zero_motion_is_identity_and_pure_translation() {
        let b = base();
        let id = rigid_motion_killing(&b, 0.0, 0.0, 0.0);
        for (x, y) in b.snapshots.iter().zip(&id.snapshots) {
            assert_eq!(x.curve, y.curve);
        }
        let tr = rigid_motion_killing(&b, 0.0, 1.0, 0.0);
        for (x, y) in b.snapshots.iter().zip(&tr.snapshots) {
            for (p, q) in x.curve.vertices().iter().zip(y.curve.vertices()) {
                assert!((*q - *p - Point2::new(x.t, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn unit_rate_rotates_clockwise() {
        let b = base();
        let m = rigid_motion_killing(&b, 1.0, 1.0, 0.0);
        for (x, y) in b.snapshots.iter().zip(&m.snapshots) {
            let t = x.t;
            let shift = Point2::new(t.sin(), t.cos() - 1.0);
            for (p, q) in x.curve.vertices().iter().zip(y.curve.vertices()) {
                assert!((*q - (p.rotate(-t) + shift)).norm() < 1e-14);
            }
        }
        assert!(hausdorff_distance(&b.snapshots[0].curve, &m.snapshots[0].curve) == 0.0);
    }
}
