use super::curve::ClosedCurve;
use super::point::Point2;
use crate::error::{Error, Result};

// 8-point Gauss–Legendre nodes/weights on [-1, 1]
const GL_X: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL_W: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Gauss–Legendre quadrature of `f` on `[a, b]`.
pub(crate) fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
    GL_X.iter().zip(GL_W.iter()).map(|(&x, &w)| w * f(m + r * x)).sum::<f64>() * r
}

/// Solves the cyclic tridiagonal system `sub[i]·x[i−1] + diag[i]·x[i] + sup[i]·x[i+1] = rhs[i]`
/// (indices mod n) by Sherman–Morrison on top of the Thomas algorithm.
pub(crate) fn solve_cyclic_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let gamma = -diag[0];
    let mut b = diag.to_vec();
    b[0] -= gamma;
    b[n - 1] -= sup[n - 1] * sub[0] / gamma;
    let x = thomas(sub, &b, sup, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = sup[n - 1];
    let z = thomas(sub, &b, sup, &u);
    let fact = (x[0] + sub[0] * x[n - 1] / gamma) / (1.0 + z[0] + sub[0] * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect()
}

fn thomas(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for i in 1..n {
        let m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

/// Periodic interpolating cubic spline through the vertices, chord-length parametrized.
pub struct PeriodicSpline {
    pts: Vec<Point2>,
    h: Vec<f64>,
    /// second derivatives at the knots
    m: Vec<Point2>,
    /// cumulative spline arc length at the knots (len n+1)
    arc: Vec<f64>,
}

impl PeriodicSpline {
    pub fn new(pts: &[Point2]) -> Self {
        let n = pts.len();
        let h: Vec<f64> = (0..n).map(|i| pts[(i + 1) % n].distance(pts[i])).collect();
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rx = vec![0.0; n];
        let mut ry = vec![0.0; n];
        for i in 0..n {
            let im = (i + n - 1) % n;
            let ip = (i + 1) % n;
            sub[i] = h[im];
            diag[i] = 2.0 * (h[im] + h[i]);
            sup[i] = h[i];
            let dp = (pts[ip] - pts[i]) / h[i];
            let dm = (pts[i] - pts[im]) / h[im];
            rx[i] = 6.0 * (dp.x - dm.x);
            ry[i] = 6.0 * (dp.y - dm.y);
        }
        let mx = solve_cyclic_tridiagonal(&sub, &diag, &sup, &rx);
        let my = solve_cyclic_tridiagonal(&sub, &diag, &sup, &ry);
        let m: Vec<Point2> = mx.into_iter().zip(my).map(|(x, y)| Point2::new(x, y)).collect();
        let mut sp = PeriodicSpline { pts: pts.to_vec(), h, m, arc: Vec::with_capacity(n + 1) };
        let mut acc = 0.0;
        sp.arc.push(0.0);
        for i in 0..n {
            acc += sp.segment_arc(i, sp.h[i]);
            sp.arc.push(acc);
        }
        sp
    }

    pub fn total_arc_length(&self) -> f64 {
        *self.arc.last().unwrap()
    }

    /// Position on segment `i` at local parameter `u ∈ [0, h_i]`.
    pub fn eval(&self, i: usize, u: f64) -> Point2 {
        let n = self.pts.len();
        let (p0, p1) = (self.pts[i], self.pts[(i + 1) % n]);
        let (m0, m1) = (self.m[i], self.m[(i + 1) % n]);
        let h = self.h[i];
        let a = h - u;
        (m0 * (a * a * a) + m1 * (u * u * u)) / (6.0 * h) + (p0 / h - m0 * (h / 6.0)) * a + (p1 / h - m1 * (h / 6.0)) * u
    }

    pub fn deriv(&self, i: usize, u: f64) -> Point2 {
        let n = self.pts.len();
        let (p0, p1) = (self.pts[i], self.pts[(i + 1) % n]);
        let (m0, m1) = (self.m[i], self.m[(i + 1) % n]);
        let h = self.h[i];
        let a = h - u;
        (m1 * (u * u) - m0 * (a * a)) / (2.0 * h) + (p1 - p0) / h - (m1 - m0) * (h / 6.0)
    }

    fn segment_arc(&self, i: usize, u: f64) -> f64 {
        // two panels keep the quadrature error far below the interpolation error
        let mid = 0.5 * u;
        gauss_legendre(|x| self.deriv(i, x).norm(), 0.0, mid) + gauss_legendre(|x| self.deriv(i, x).norm(), mid, u)
    }

    /// Point at spline arc length `s ∈ [0, total)`.
    pub fn point_at_arc(&self, s: f64) -> Point2 {
        let n = self.pts.len();
        let total = self.total_arc_length();
        let s = s.rem_euclid(total);
        let i = match self.arc.binary_search_by(|a| a.partial_cmp(&s).unwrap()) {
            Ok(k) => k.min(n - 1),
            Err(k) => k - 1,
        };
        let target = s - self.arc[i];
        let seg_len = self.arc[i + 1] - self.arc[i];
        if target <= 0.0 {
            return self.pts[i];
        }
        let h = self.h[i];
        let (mut lo, mut hi) = (0.0, h);
        let mut u = h * target / seg_len;
        // Newton on a single panel; the residual only shifts the point along the spline
        for _ in 0..50 {
            let g = gauss_legendre(|x| self.deriv(i, x).norm(), 0.0, u) - target;
            if g > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            if g.abs() <= 1e-14 * seg_len {
                break;
            }
            let d = self.deriv(i, u).norm();
            let mut next = u - g / d;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - u).abs() <= 1e-15 * h {
                u = next;
                break;
            }
            u = next;
        }
        self.eval(i, u)
    }
}

/// Resamples a curve to `n` vertices equispaced in the arc length of its periodic
/// cubic spline interpolant; vertex 0 is kept in place.
pub fn resample_arclength(curve: &ClosedCurve, n: usize) -> Result<ClosedCurve> {
    if n < ClosedCurve::MIN_VERTICES {
        return Err(Error::InvalidCurve(format!("resampling needs n >= {}, got {n}", ClosedCurve::MIN_VERTICES)));
    }
    let v = resample_points(curve.vertices(), n);
    if v.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidCurve("resampling produced non-finite vertices".into()));
    }
    Ok(ClosedCurve::from_vertices_unchecked(v))
}

pub(crate) fn resample_points(pts: &[Point2], n: usize) -> Vec<Point2> {
    let sp = PeriodicSpline::new(pts);
    let total = sp.total_arc_length();
    let mut out = Vec::with_capacity(n);
    out.push(pts[0]);
    for j in 1..n {
        out.push(sp.point_at_arc(total * j as f64 / n as f64));
    }
    out
}
