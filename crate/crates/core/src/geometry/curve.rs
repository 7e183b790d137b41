use super::point::{Point2, Vec2};
use crate::error::{Error, Result};

/// Ordered periodic vertex list of an embedded, counterclockwise planar curve.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedCurve {
    vertices: Vec<Point2>,
}

impl ClosedCurve {
    pub const MIN_VERTICES: usize = 8;

    /// Validates the vertex list and normalizes the orientation to counterclockwise.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < Self::MIN_VERTICES {
            return Err(Error::InvalidCurve(format!(
                "need at least {} vertices, got {n}",
                Self::MIN_VERTICES
            )));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidCurve(format!("vertex {i} is not finite")));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(Error::InvalidCurve(format!("vertices {i} and {j} coincide")));
            }
        }
        if !is_simple_polygon(&vertices) {
            return Err(Error::InvalidCurve("polygon self-intersects".into()));
        }
        let a = shoelace_area(&vertices);
        if a == 0.0 {
            return Err(Error::InvalidCurve("zero enclosed area".into()));
        }
        if a < 0.0 {
            vertices.reverse();
        }
        Ok(ClosedCurve { vertices })
    }

    /// Skips validation; the integrator uses this on curves it has just moved.
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point2>) -> Self {
        ClosedCurve { vertices }
    }

    /// Regular `n`-gon inscribed in the circle of radius `r`, vertex 0 at angle 0.
    pub fn circle(center: Point2, r: f64, n: usize) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidCurve(format!("circle radius must be positive, got {r}")));
        }
        let v = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                center + Point2::from_angle(t) * r
            })
            .collect();
        Self::new(v)
    }

    /// Ellipse with semi-axes `a` (along x) and `b`, equispaced in arc length, vertex 0 at `(center.x + a, center.y)`.
    pub fn ellipse(center: Point2, a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::InvalidCurve("ellipse semi-axes must be positive".into()));
        }
        let dense = (8 * n).max(512);
        let v = (0..dense)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / dense as f64;
                center + Point2::new(a * t.cos(), b * t.sin())
            })
            .collect();
        let c = Self::new(v)?;
        super::spline::resample_arclength(&c, n)
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2> {
        self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Exact polygon area (positive for counterclockwise curves).
    pub fn polygon_area(&self) -> f64 {
        shoelace_area(&self.vertices)
    }

    /// Area centroid of the polygon.
    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len();
        let o = self.vertex_mean();
        let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i] - o;
            let q = self.vertices[(i + 1) % n] - o;
            let w = p.cross(q);
            a += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        if a == 0.0 {
            return o;
        }
        o + Point2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    pub fn vertex_mean(&self) -> Point2 {
        let n = self.vertices.len() as f64;
        let s = self.vertices.iter().fold(Point2::ZERO, |acc, &p| acc + p);
        s / n
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n).map(|i| self.vertices[(i + 1) % n].distance(self.vertices[i])).collect()
    }

    pub fn min_edge(&self) -> f64 {
        self.edge_lengths().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_edge(&self) -> f64 {
        self.edge_lengths().into_iter().fold(0.0, f64::max)
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                d = d.max(v[i].distance(v[j]));
            }
        }
        d
    }

    pub fn max_radius(&self) -> f64 {
        self.vertices.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    /// Applies `p ↦ rotate(p, angle) + shift`.
    pub fn rigid_motion(&self, angle: f64, shift: Vec2) -> Self {
        ClosedCurve { vertices: self.vertices.iter().map(|&p| p.rotate(angle) + shift).collect() }
    }

    /// Applies `p ↦ scale·(p − origin)`; `scale > 0` keeps the orientation.
    pub fn affine_scale(&self, origin: Point2, scale: f64) -> Self {
        ClosedCurve { vertices: self.vertices.iter().map(|&p| (p - origin) * scale).collect() }
    }

    pub fn is_embedded(&self) -> bool {
        is_simple_polygon(&self.vertices)
    }
}

pub(crate) fn shoelace_area(v: &[Point2]) -> f64 {
    let n = v.len();
    if n == 0 {
        return 0.0;
    }
    let o = v[0];
    let mut s = 0.0;
    for i in 1..n.saturating_sub(1) {
        s += (v[i] - o).cross(v[i + 1] - o);
    }
    0.5 * s
}

#[inline]
fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

#[inline]
fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

pub(crate) fn segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Uniform-grid broad phase followed by exact orientation tests; expected O(N) on
/// evenly sampled curves.
pub(crate) fn is_simple_polygon(v: &[Point2]) -> bool {
    let n = v.len();
    if n < 3 {
        return false;
    }
    // adjacent edges folding back onto each other
    for i in 0..n {
        let a = v[(i + n - 1) % n];
        let b = v[i];
        let c = v[(i + 1) % n];
        let e0 = b - a;
        let e1 = c - b;
        if e0.cross(e1) == 0.0 && e0.dot(e1) < 0.0 {
            return false;
        }
    }
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in v {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    let w = (xmax - xmin).max(ymax - ymin);
    if !(w > 0.0) || !w.is_finite() {
        return false;
    }
    let cells_per_side = ((n as f64).sqrt().ceil() as usize).clamp(1, 512);
    let cell = w / cells_per_side as f64 * (1.0 + 1e-9);
    let idx = |x: f64, lo: f64| (((x - lo) / cell) as usize).min(cells_per_side - 1);
    let mut grid: Vec<Vec<u32>> = vec![Vec::new(); cells_per_side * cells_per_side];
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let (cx0, cx1) = (idx(a.x.min(b.x), xmin), idx(a.x.max(b.x), xmin));
        let (cy0, cy1) = (idx(a.y.min(b.y), ymin), idx(a.y.max(b.y), ymin));
        for cy in cy0..=cy1 {
            for cx in cx0..=cx1 {
                grid[cy * cells_per_side + cx].push(i as u32);
            }
        }
    }
    for bucket in &grid {
        for (ii, &i) in bucket.iter().enumerate() {
            let i = i as usize;
            for &j in &bucket[ii + 1..] {
                let j = j as usize;
                if j == (i + 1) % n || i == (j + 1) % n {
                    continue;
                }
                if segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_simple(v: &[Point2]) -> bool {
        let n = v.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                if segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn clockwise_input_is_reversed() {
        let mut v: Vec<Point2> = (0..16)
            .map(|i| Point2::from_angle(std::f64::consts::TAU * i as f64 / 16.0))
            .collect();
        v.reverse();
        let c = ClosedCurve::new(v).unwrap();
        assert!(c.polygon_area() > 0.0);
    }

    #[test]
    fn rejects_short_coincident_and_crossing() {
        let sq: Vec<Point2> = (0..4).map(|i| Point2::from_angle(i as f64)).collect();
        assert!(ClosedCurve::new(sq).is_err());
        let mut v: Vec<Point2> = (0..10).map(|i| Point2::from_angle(0.6 * i as f64)).collect();
        v[3] = v[2];
        assert!(ClosedCurve::new(v).is_err());
        // figure eight
        let fig: Vec<Point2> = (0..64)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / 64.0;
                Point2::new(t.sin(), (2.0 * t).sin() * 0.5)
            })
            .collect();
        assert!(matches!(ClosedCurve::new(fig), Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn grid_check_matches_brute_force_on_star_polygons() {
        for k in 2..7 {
            for n in [20usize, 41, 64] {
                let v: Vec<Point2> = (0..n)
                    .map(|i| {
                        let t = std::f64::consts::TAU * (i * k) as f64 / n as f64;
                        Point2::from_angle(t) * (1.0 + 0.3 * (3.0 * t).cos())
                    })
                    .collect();
                assert_eq!(is_simple_polygon(&v), brute_simple(&v), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn centroid_of_translated_circle() {
        let c = ClosedCurve::circle(Point2::new(2.0, 3.0), 0.5, 64).unwrap();
        assert!((c.centroid() - Point2::new(2.0, 3.0)).norm() < 1e-12);
    }
}
