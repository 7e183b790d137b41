use super::curve::ClosedCurve;
use super::discrete::compute_geometry;
use super::point::Point2;
use super::spline::gauss_legendre;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Strictly convex closed curve that coincides with the graph `y = εx²` on
/// `|x| ≤ δ`.
///
/// The curve is built in tangent-angle form from its radius of curvature `ρ(θ)`:
/// the exact parabola up to the angle at `x = δ`, a quintic smoothstep blend up
/// to the angle at `x = 2δ`, then `ρ = A + B·cos θ` up to `θ = π`, mirrored to
/// the left half. `B` closes the curve; `A` is the smallest value keeping the
/// closing arc's curvature below `4/δ`.
pub fn build_parabola_closure(eps: f64, delta: f64, n: usize) -> Result<ClosedCurve> {
    build_parabola_closure_with_cap(eps, delta, n, 4.0 / delta)
}

pub fn build_parabola_closure_with_cap(eps: f64, delta: f64, n: usize, k_cap: f64) -> Result<ClosedCurve> {
    if !(eps > 0.0 && eps <= 1.0) || !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Domain(format!("need 0 < eps <= 1 and 0 < delta <= 1, got eps={eps}, delta={delta}")));
    }
    if n < ClosedCurve::MIN_VERTICES || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("need an even vertex count >= 8, got {n}")));
    }
    let shape = Shape::new(eps, delta, k_cap)?;
    let table = shape.table();
    let half = table.total_arc();
    let total = 2.0 * half;
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let s = total * i as f64 / n as f64;
        if s <= half {
            v.push(table.point_at(&shape, s));
        } else {
            let p = table.point_at(&shape, total - s);
            v.push(Point2::new(-p.x, p.y));
        }
    }
    let curve = ClosedCurve::new(v)?;
    let g = compute_geometry(&curve)?;
    if !(g.min_curvature() > 0.0) {
        return Err(Error::Construction(format!(
            "closure is not strictly convex at n={n} (min k = {})",
            g.min_curvature()
        )));
    }
    Ok(curve)
}

struct Shape {
    eps: f64,
    th_d: f64,
    th_b: f64,
    a: f64,
    b: f64,
}

fn smoothstep5(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x * x * x * (10.0 + x * (-15.0 + 6.0 * x))
}

/// Composite 8-point Gauss–Legendre over `panels` equal panels.
fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels).map(|i| gauss_legendre(&f, a + h * i as f64, a + h * (i + 1) as f64)).sum()
}

impl Shape {
    fn new(eps: f64, delta: f64, k_cap: f64) -> Result<Self> {
        let th_d = (2.0 * eps * delta).atan();
        let th_b = (4.0 * eps * delta).atan();
        let mut sh = Shape { eps, th_d, th_b, a: 0.0, b: 0.0 };
        // x(π) = xp + A·ia + B·ib must vanish
        let xp = integrate(|t| (1.0 - sh.weight(t)) * sh.rho_parabola(t) * t.cos(), 0.0, th_b, 64);
        let ia = integrate(|t| sh.weight(t) * t.cos(), th_d, PI, 256);
        let ib = integrate(|t| sh.weight(t) * t.cos() * t.cos(), th_d, PI, 256);
        // B = b0 + b1·A
        let (b0, b1) = (-xp / ib, -ia / ib);
        let rho_min = 1.0 / k_cap;
        let grid: Vec<f64> = (0..=512).map(|j| th_b + (PI - th_b) * j as f64 / 512.0).collect();
        let mut a = f64::NEG_INFINITY;
        for &t in &grid {
            let c = t.cos();
            let denom = 1.0 + b1 * c;
            if !(denom > 0.0) {
                return Err(Error::Construction("closing arc cannot be made positive".into()));
            }
            a = a.max((rho_min - b0 * c) / denom);
        }
        sh.a = a;
        sh.b = b0 + b1 * a;
        let rho_max = grid.iter().map(|&t| sh.rho_closing(t)).fold(0.0, f64::max);
        if !(rho_max < 1.0 / (2.0 * eps)) {
            return Err(Error::Construction(format!(
                "closing arc curvature {} does not exceed 2eps = {}",
                1.0 / rho_max,
                2.0 * eps
            )));
        }
        Ok(sh)
    }

    fn rho_parabola(&self, t: f64) -> f64 {
        1.0 / (2.0 * self.eps * t.cos().powi(3))
    }

    fn rho_closing(&self, t: f64) -> f64 {
        self.a + self.b * t.cos()
    }

    fn weight(&self, t: f64) -> f64 {
        smoothstep5((t - self.th_d) / (self.th_b - self.th_d))
    }

    fn rho(&self, t: f64) -> f64 {
        if t <= self.th_d {
            self.rho_parabola(t)
        } else if t >= self.th_b {
            self.rho_closing(t)
        } else {
            let w = self.weight(t);
            (1.0 - w) * self.rho_parabola(t) + w * self.rho_closing(t)
        }
    }

    /// Exact parabola point with tangent angle `t`.
    fn parabola_point(&self, t: f64) -> Point2 {
        let x = t.tan() / (2.0 * self.eps);
        Point2::new(x, self.eps * x * x)
    }

    fn table(&self) -> Table {
        let mut nodes = Vec::new();
        let seg = |a: f64, b: f64, k: usize, out: &mut Vec<f64>| {
            for j in 0..k {
                out.push(a + (b - a) * j as f64 / k as f64);
            }
        };
        seg(0.0, self.th_d, 64, &mut nodes);
        seg(self.th_d, self.th_b, 128, &mut nodes);
        seg(self.th_b, PI, 512, &mut nodes);
        nodes.push(PI);
        let mut arc = vec![0.0];
        let mut pos = vec![Point2::ZERO];
        for w in nodes.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            arc.push(arc.last().unwrap() + gauss_legendre(|t| self.rho(t), t0, t1));
            let p = if t1 <= self.th_d {
                self.parabola_point(t1)
            } else {
                *pos.last().unwrap() + self.chord(t0, t1)
            };
            pos.push(p);
        }
        Table { nodes, arc, pos }
    }

    fn chord(&self, t0: f64, t1: f64) -> Point2 {
        Point2::new(
            gauss_legendre(|t| self.rho(t) * t.cos(), t0, t1),
            gauss_legendre(|t| self.rho(t) * t.sin(), t0, t1),
        )
    }
}

struct Table {
    nodes: Vec<f64>,
    arc: Vec<f64>,
    pos: Vec<Point2>,
}

impl Table {
    fn total_arc(&self) -> f64 {
        *self.arc.last().unwrap()
    }

    fn point_at(&self, sh: &Shape, s: f64) -> Point2 {
        let last = self.nodes.len() - 1;
        let i = (self.arc.partition_point(|&a| a <= s).max(1) - 1).min(last - 1);
        let (t0, t1) = (self.nodes[i], self.nodes[i + 1]);
        let target = s - self.arc[i];
        if target <= 0.0 {
            return self.pos[i];
        }
        let (mut lo, mut hi) = (t0, t1);
        let mut t = t0 + (t1 - t0) * target / (self.arc[i + 1] - self.arc[i]);
        for _ in 0..60 {
            let g = gauss_legendre(|u| sh.rho(u), t0, t) - target;
            if g > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let mut next = t - g / sh.rho(t);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let done = (next - t).abs() <= 1e-16 * (1.0 + t.abs());
            t = next;
            if done {
                break;
            }
        }
        if t <= sh.th_d {
            sh.parabola_point(t)
        } else {
            self.pos[i] + sh.chord(t0, t)
        }
    }
}
