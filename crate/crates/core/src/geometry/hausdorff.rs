use super::curve::ClosedCurve;
use super::discrete::closest_on_segment;
use super::point::Point2;

/// Distance from `p` to the closed polygon through `v`.
pub fn point_polygon_distance(p: Point2, v: &[Point2]) -> f64 {
    let n = v.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let (q, _) = closest_on_segment(p, v[i], v[(i + 1) % n]);
        best = best.min(q.distance(p));
    }
    best
}

fn directed(a: &[Point2], b: &[Point2]) -> f64 {
    a.iter().map(|&p| point_polygon_distance(p, b)).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between the vertex sets, measured against the
/// other polygon's edges.
pub fn hausdorff_distance(c1: &ClosedCurve, c2: &ClosedCurve) -> f64 {
    directed(c1.vertices(), c2.vertices()).max(directed(c2.vertices(), c1.vertices()))
}
