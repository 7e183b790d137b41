use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OdeOptions {
    /// local error tolerance per unit step (relative to `1 + |x|`)
    pub tol: f64,
    pub ceiling: f64,
    pub h_init: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { tol: 1e-10, ceiling: 1e12, h_init: 1e-3, max_steps: 10_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfinementSolution {
    /// accepted `(r, x(r))` pairs
    pub table: Vec<(f64, f64)>,
    /// `r` at which `x` passed the ceiling (or the step size collapsed)
    pub blow_up: Option<f64>,
}

impl ConfinementSolution {
    /// `x(r)` by cubic Hermite interpolation between accepted steps.
    pub fn value_at(&self, r: f64, rhs: impl Fn(f64) -> f64) -> Option<f64> {
        let t = &self.table;
        if r < t[0].0 || r > t.last()?.0 {
            return None;
        }
        let i = t.partition_point(|p| p.0 <= r).clamp(1, t.len() - 1) - 1;
        let (r0, x0) = t[i];
        let (r1, x1) = t[(i + 1).min(t.len() - 1)];
        if r1 == r0 {
            return Some(x0);
        }
        let h = r1 - r0;
        let s = (r - r0) / h;
        let (d0, d1) = (rhs(x0) * h, rhs(x1) * h);
        let h00 = 2.0 * s.powi(3) - 3.0 * s * s + 1.0;
        let h10 = s.powi(3) - 2.0 * s * s + s;
        let h01 = -2.0 * s.powi(3) + 3.0 * s * s;
        let h11 = s.powi(3) - s * s;
        Some(h00 * x0 + h10 * d0 + h01 * x1 + h11 * d1)
    }

    pub fn end(&self) -> (f64, f64) {
        *self.table.last().unwrap()
    }
}

fn rk4(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let k1 = f(x);
    let k2 = f(x + 0.5 * h * k1);
    let k3 = f(x + 0.5 * h * k2);
    let k4 = f(x + h * k3);
    x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates `x' = |σ2| + R(x)`, `x(0) = r0` on `[0, r_max]` with classical RK4
/// and step doubling.
pub fn solve_confinement_ode(
    sigma2: f64,
    growth: &dyn Fn(f64) -> f64,
    r0: f64,
    r_max: f64,
    opts: &OdeOptions,
) -> ConfinementSolution {
    let rhs = |x: f64| sigma2.abs() + growth(x);
    let mut table = vec![(0.0, r0)];
    let (mut r, mut x) = (0.0f64, r0);
    let mut h = opts.h_init.min(r_max.max(f64::MIN_POSITIVE));
    let mut steps = 0;
    while r < r_max && steps < opts.max_steps {
        steps += 1;
        let h_try = h.min(r_max - r);
        let full = rk4(&rhs, x, h_try);
        let half = rk4(&rhs, x, 0.5 * h_try);
        let two = rk4(&rhs, half, 0.5 * h_try);
        let err = (two - full).abs() / 15.0;
        let scale = opts.tol * h_try * (1.0 + two.abs());
        if !two.is_finite() || two > opts.ceiling {
            if h_try <= 1e-15 * (1.0 + r) || two > opts.ceiling && err <= scale {
                return ConfinementSolution { table, blow_up: Some(r + h_try) };
            }
            h = 0.5 * h_try;
            continue;
        }
        if err <= scale {
            r += h_try;
            // Richardson-corrected value
            x = two + (two - full) / 15.0;
            table.push((r, x));
            let fac = if err > 0.0 { 0.9 * (scale / err).powf(0.2) } else { 4.0 };
            h = h_try * fac.clamp(0.2, 4.0);
        } else {
            let fac = 0.9 * (scale / err).powf(0.2);
            h = h_try * fac.clamp(0.1, 0.9);
        }
        if h <= 1e-15 * (1.0 + r) {
            return ConfinementSolution { table, blow_up: Some(r) };
        }
    }
    ConfinementSolution { table, blow_up: None }
}
