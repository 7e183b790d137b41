use super::curve::ClosedCurve;
use super::discrete::CurveGeometry;
use super::point::Point2;
use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::f64::consts::TAU;

/// Curvature sampled on the uniform tangent-angle grid `θ_j = 2πj/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleProfile {
    k: Vec<f64>,
}

impl AngleProfile {
    pub fn new(k: Vec<f64>) -> Result<Self> {
        if k.len() < 4 {
            return Err(Error::Domain("angle profile needs at least 4 samples".into()));
        }
        if let Some(j) = k.iter().position(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::ConvexityRequired(format!("profile sample {j} is {}", k[j])));
        }
        Ok(AngleProfile { k })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(m: usize, f: F) -> Result<Self> {
        Self::new((0..m).map(|j| f(TAU * j as f64 / m as f64)).collect())
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.k
    }

    pub fn dtheta(&self) -> f64 {
        TAU / self.k.len() as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.k.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.k.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.k.iter().copied().fold(0.0, f64::max)
    }

    /// Curve rebuilt from `γ' = (cos θ, sin θ)/k`, starting at the origin, together
    /// with the closure gap `|∫ e^{iθ}/k dθ|`.
    pub fn reconstruct(&self) -> (Vec<Point2>, f64) {
        let m = self.k.len();
        let d = self.dtheta();
        let step = |j: usize| Point2::from_angle(self.theta(j % m)) / self.k[j % m];
        let mut pts = Vec::with_capacity(m);
        let mut p = Point2::ZERO;
        for j in 0..m {
            pts.push(p);
            p += (step(j) + step(j + 1)) * (0.5 * d);
        }
        (pts, p.norm())
    }
}

/// Locates `t` among the unwrapped vertex angles and returns `(i, w)` with
/// `t = (1−w)·θ_i + w·θ_{i+1}` (indices mod n).
fn locate(angles: &[f64], t: f64) -> (usize, f64) {
    let n = angles.len();
    let t = angles[0] + (t - angles[0]).rem_euclid(TAU);
    // first index with angle > t, minus one (left endpoint on ties)
    let i = angles.partition_point(|&a| a <= t).max(1) - 1;
    let next = if i + 1 < n { angles[i + 1] } else { angles[0] + TAU };
    let span = next - angles[i];
    let w = if span > 0.0 { ((t - angles[i]) / span).clamp(0.0, 1.0) } else { 0.0 };
    (i, w)
}

fn check_convex(geom: &CurveGeometry) -> Result<()> {
    if let Some(i) = geom.curvature.iter().position(|&k| !(k > 0.0)) {
        return Err(Error::ConvexityRequired(format!("curvature {} at vertex {i}", geom.curvature[i])));
    }
    Ok(())
}

/// Samples `k` on `m` uniform tangent angles by linear interpolation in `θ(s)`.
pub fn to_angle_param(geom: &CurveGeometry, m: usize) -> Result<AngleProfile> {
    check_convex(geom)?;
    let angles = geom.tangent_angles();
    let n = angles.len();
    let k = (0..m)
        .map(|j| {
            let (i, w) = locate(&angles, TAU * j as f64 / m as f64);
            (1.0 - w) * geom.curvature[i] + w * geom.curvature[(i + 1) % n]
        })
        .collect();
    AngleProfile::new(k)
}

/// Curve positions at the `m` uniform tangent angles, interpolated like the profile.
pub fn angle_positions(curve: &ClosedCurve, geom: &CurveGeometry, m: usize) -> Result<Vec<Point2>> {
    check_convex(geom)?;
    let angles = geom.tangent_angles();
    let v = curve.vertices();
    let n = v.len();
    Ok((0..m)
        .map(|j| {
            let (i, w) = locate(&angles, TAU * j as f64 / m as f64);
            v[i] * (1.0 - w) + v[(i + 1) % n] * w
        })
        .collect())
}

/// Largest window minimum over all closed windows of `⌈m/2⌉` consecutive samples.
pub fn median_curvature(profile: &AngleProfile) -> f64 {
    let k = profile.samples();
    let m = k.len();
    let w = m.div_ceil(2);
    let mut dq: VecDeque<usize> = VecDeque::new();
    let mut best = f64::NEG_INFINITY;
    for idx in 0..(m + w - 1) {
        let val = k[idx % m];
        while let Some(&b) = dq.back() {
            if k[b % m] >= val {
                dq.pop_back();
            } else {
                break;
            }
        }
        dq.push_back(idx);
        if let Some(&f) = dq.front() {
            if f + w <= idx {
                dq.pop_front();
            }
        }
        if idx + 1 >= w {
            best = best.max(k[dq[0] % m]);
        }
    }
    best
}

/// Periodic trapezoid value of `∫ log k dθ`.
pub fn entropy(profile: &AngleProfile) -> Result<f64> {
    if let Some(j) = profile.samples().iter().position(|&x| !(x > 0.0)) {
        return Err(Error::Domain(format!("non-positive curvature sample at {j}")));
    }
    Ok(profile.samples().iter().map(|k| k.ln()).sum::<f64>() * profile.dtheta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{compute_geometry, hausdorff_distance, ClosedCurve};
    use proptest::prelude::*;

    fn brute_median(k: &[f64]) -> f64 {
        let m = k.len();
        let w = m.div_ceil(2);
        (0..m)
            .map(|s| (0..w).map(|o| k[(s + o) % m]).fold(f64::INFINITY, f64::min))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn median_examples() {
        let c = AngleProfile::from_fn(256, |_| 3.5).unwrap();
        assert_eq!(median_curvature(&c), 3.5);
        let step = AngleProfile::from_fn(256, |t| if t < std::f64::consts::PI { 2.0 } else { 1.0 }).unwrap();
        assert_eq!(median_curvature(&step), 2.0);
        let s = AngleProfile::from_fn(256, |t| 1.0 + 0.5 * t.sin()).unwrap();
        assert!((median_curvature(&s) - 1.0).abs() < 1e-12);
        assert_eq!(median_curvature(&s), brute_median(s.samples()));
    }

    #[test]
    fn entropy_examples() {
        let one = AngleProfile::from_fn(64, |_| 1.0).unwrap();
        assert_eq!(entropy(&one).unwrap(), 0.0);
        let e = AngleProfile::from_fn(64, |_| std::f64::consts::E).unwrap();
        assert!((entropy(&e).unwrap() - TAU).abs() < 1e-12);
    }

    #[test]
    fn circle_profile_is_constant() {
        let c = ClosedCurve::circle(Point2::new(1.0, -1.0), 0.5, 512).unwrap();
        let g = compute_geometry(&c).unwrap();
        let p = to_angle_param(&g, 256).unwrap();
        for &k in p.samples() {
            assert!((k - 2.0).abs() < 1e-6);
        }
    }

    #[test]
    fn ellipse_profile_and_entropy() {
        let c = ClosedCurve::ellipse(Point2::ZERO, 2.0, 1.0, 1024).unwrap();
        let g = compute_geometry(&c).unwrap();
        let p = to_angle_param(&g, 1024).unwrap();
        assert!((p.max() - 2.0).abs() < 1e-2);
        assert!((p.min() - 0.25).abs() < 1e-2);
        let (_, gap) = p.reconstruct();
        assert!(gap <= 1e-3 * g.length);
        // oracle: with ψ the outward normal angle, k = (a²cos²ψ + b²sin²ψ)^{3/2}/(a²b²)
        let (a, b) = (2.0f64, 1.0f64);
        let kth = |th: f64| {
            let phi = th - std::f64::consts::FRAC_PI_2;
            (a * a * phi.cos().powi(2) + b * b * phi.sin().powi(2)).powf(1.5) / (a * b).powi(2)
        };
        let fine = 200000;
        let oracle: f64 = (0..fine).map(|j| kth(TAU * j as f64 / fine as f64).ln()).sum::<f64>() * TAU / fine as f64;
        let exact_profile = AngleProfile::from_fn(1024, kth).unwrap();
        assert!((entropy(&exact_profile).unwrap() - oracle).abs() < 1e-6);
        assert!((p.samples()[0] - kth(0.0)).abs() < 1e-2);
        assert!((entropy(&p).unwrap() - oracle).abs() < 1e-3);
    }

    #[test]
    fn reconstruction_matches_curve_up_to_translation() {
        let c = ClosedCurve::ellipse(Point2::new(0.4, 0.1), 1.3, 0.8, 512).unwrap();
        let g = compute_geometry(&c).unwrap();
        let p = to_angle_param(&g, 1024).unwrap();
        let (pts, _) = p.reconstruct();
        let start = angle_positions(&c, &g, 1024).unwrap()[0];
        let moved: Vec<Point2> = pts.iter().map(|&q| q + start).collect();
        let r = ClosedCurve::new(moved).unwrap();
        assert!(hausdorff_distance(&r, &c) <= 1e-2 * g.length);
    }

    #[test]
    fn nonconvex_rejected() {
        let v: Vec<Point2> = (0..128)
            .map(|i| {
                let t = TAU * i as f64 / 128.0;
                Point2::from_angle(t) * (1.0 + 0.4 * (3.0 * t).cos())
            })
            .collect();
        let g = compute_geometry(&ClosedCurve::new(v).unwrap()).unwrap();
        assert!(matches!(to_angle_param(&g, 64), Err(Error::ConvexityRequired(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn median_matches_brute_force(
            m in 8usize..200,
            a in proptest::collection::vec(-0.3f64..0.3, 4),
            ph in proptest::collection::vec(0.0f64..TAU, 4),
        ) {
            let p = AngleProfile::from_fn(m, |t| {
                1.5 + (0..4).map(|j| a[j] * ((j + 1) as f64 * t + ph[j]).sin()).sum::<f64>()
            }).unwrap();
            let k = median_curvature(&p);
            prop_assert_eq!(k, brute_median(p.samples()));
            prop_assert!(p.min() <= k && k <= p.max());
        }
    }
}
