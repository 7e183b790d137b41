use super::AmbientField;
use crate::error::{Error, Result};
use crate::geometry::{Point2, Vec2};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

pub const DEFAULT_BOUNDS_GRID: usize = 256;
const DIRECTIONS: usize = 64;
const GROWTH_SAMPLES: usize = 64;

/// Bounds of a field on the disk `B_{R0}(0)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldBounds {
    /// `sup |V|`
    pub c0: f64,
    /// `sup |DV|` (spectral norm)
    pub c1: f64,
    /// `sup |⟨D²_{X,X}V, RX⟩|` over unit `X`
    pub c2: f64,
    pub r0: f64,
    /// `(r, sup_{B_r} |V|)` for `r` from 0 to `R0`
    pub growth: Vec<(f64, f64)>,
    /// sampled `sup |V|`, kept as a cross-check on the closed form in `c0`
    pub c0_sampled: f64,
}

impl FieldBounds {
    /// Piecewise-linear interpolation of the growth table (clamped to its range).
    pub fn growth_at(&self, r: f64) -> f64 {
        let g = &self.growth;
        if r <= g[0].0 {
            return g[0].1;
        }
        for w in g.windows(2) {
            if r <= w[1].0 {
                let t = (r - w[0].0) / (w[1].0 - w[0].0);
                return w[0].1 + t * (w[1].1 - w[0].1);
            }
        }
        g.last().unwrap().1
    }
}

fn c2_at(field: &AmbientField, p: Point2, dirs: &[Vec2]) -> f64 {
    let j = field.eval_jet(p, 2);
    dirs.iter().map(|&x| j.dir2(x, x).dot(x.rot90()).abs()).fold(0.0, f64::max)
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if (b - a).abs() <= 1e-13 * (1.0 + b.abs()) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

/// Sup of `f` over `[0, r0]` from `grid + 1` samples, refining every sampled local
/// maximum by golden-section search.
fn ray_sup<F: Fn(f64) -> f64>(f: F, r0: f64, grid: usize) -> f64 {
    let rs: Vec<f64> = (0..=grid).map(|i| r0 * i as f64 / grid as f64).collect();
    let q: Vec<f64> = rs.iter().map(|&r| f(r)).collect();
    let mut best = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for i in 1..grid {
        if q[i] >= q[i - 1] && q[i] >= q[i + 1] && (q[i] > q[i - 1] || q[i] > q[i + 1]) {
            best = best.max(golden_max(&f, rs[i - 1], rs[i + 1]));
        }
    }
    best
}

/// Polar-grid estimate of `C0`, `C1`, `C2` on `B_{R0}(0)` plus the growth table.
///
/// `C1` and `C2` are lower bounds on the true suprema; `C0` and the growth table
/// use the closed-form disk suprema of the built-in fields.
pub fn estimate_bounds(field: &AmbientField, r0: f64, grid: usize) -> Result<FieldBounds> {
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(Error::Domain(format!("region radius must be positive and finite, got {r0}")));
    }
    if grid < 64 {
        return Err(Error::Domain(format!("bounds grid must be at least 64, got {grid}")));
    }
    let dirs: Vec<Vec2> = (0..DIRECTIONS).map(|i| Vec2::from_angle(PI * i as f64 / DIRECTIONS as f64)).collect();
    let (mut c0s, mut c1, mut c2) = (0.0f64, 0.0f64, 0.0f64);
    for a in 0..grid {
        let e = Vec2::from_angle(TAU * a as f64 / grid as f64);
        c0s = c0s.max(ray_sup(|r| field.value(e * r).norm(), r0, grid));
        c1 = c1.max(ray_sup(|r| field.eval_jet(e * r, 1).d1_norm(), r0, grid));
        c2 = c2.max(ray_sup(|r| c2_at(field, e * r, &dirs), r0, grid));
    }
    if !(c0s.is_finite() && c1.is_finite() && c2.is_finite()) {
        return Err(Error::UnboundedField(format!("non-finite field values on the disk of radius {r0}")));
    }
    let growth: Vec<(f64, f64)> = (0..=GROWTH_SAMPLES)
        .map(|j| {
            let r = r0 * j as f64 / GROWTH_SAMPLES as f64;
            (r, field.sup_norm_on_disk(r))
        })
        .collect();
    let c0 = field.sup_norm_on_disk(r0);
    // the sampled value is a lower bound limited by the angular resolution
    if c0s > c0 * (1.0 + 1e-9) + 1e-12 || c0s < c0 * (1.0 - 1e-3) {
        return Err(Error::Consistency(format!("sampled sup |V| = {c0s} disagrees with closed form {c0}")));
    }
    Ok(FieldBounds { c0, c1, c2, r0, growth, c0_sampled: c0s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_and_constant() {
        let z = estimate_bounds(&AmbientField::Zero, 2.0, 64).unwrap();
        assert_eq!((z.c0, z.c1, z.c2), (0.0, 0.0, 0.0));
        let c = estimate_bounds(&AmbientField::Constant { b: 3.0, c: 4.0 }, 7.0, 64).unwrap();
        assert!((c.c0 - 5.0).abs() < 1e-12);
        assert_eq!((c.c1, c.c2), (0.0, 0.0));
    }

    #[test]
    fn radial_linear_growth_is_r_squared() {
        let b = estimate_bounds(&AmbientField::RadialLinear { alpha: [0.6, 0.8] }, 3.0, 64).unwrap();
        for &(r, g) in &b.growth {
            assert!((g - r * r).abs() < 1e-12);
        }
        assert!((b.growth_at(1.5) - 2.25).abs() < 0.01);
    }

    #[test]
    fn saddle_bounds_match_closed_forms() {
        // C1 = sup √(1+4x²)… spectral norm of [[1,0],[−2x,0]] is √(1+4x²); C2 = 2
        let b = estimate_bounds(&AmbientField::Saddle, 0.5, 128).unwrap();
        assert!((b.c1 - 2f64.sqrt()).abs() < 1e-9, "{}", b.c1);
        assert!((b.c2 - 2.0).abs() < 1e-12);
        assert!((b.c0 - 0.5 * 1.25f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn killing_bounds() {
        let b = estimate_bounds(&AmbientField::Killing { a: 2.0, b: 0.0, c: 1.0 }, 1.5, 64).unwrap();
        assert!((b.c1 - 2.0).abs() < 1e-12);
        assert_eq!(b.c2, 0.0);
        assert!((b.c0 - 4.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn monotone_in_radius(r1 in 0.05f64..3.0, r2 in 0.05f64..3.0, idx in 0usize..6) {
            let fields = [
                AmbientField::Constant { b: 1.0, c: -2.0 },
                AmbientField::Killing { a: 0.7, b: 0.1, c: 0.2 },
                AmbientField::Saddle,
                AmbientField::RadialPower { p: 1.5 },
                AmbientField::RadialPower { p: -3.0 },
                AmbientField::RadialLinear { alpha: [0.3, -0.4] },
            ];
            let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            let f = &fields[idx];
            let a = estimate_bounds(f, lo, 64).unwrap();
            let b = estimate_bounds(f, hi, 64).unwrap();
            let tol = 1e-12;
            prop_assert!(a.c0 <= b.c0 * (1.0 + tol) + tol);
            prop_assert!(a.c1 <= b.c1 * (1.0 + tol) + tol);
            prop_assert!(a.c2 <= b.c2 * (1.0 + tol) + tol);
        }
    }
}
