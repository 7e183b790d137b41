//! Analytic ambient force fields with exact derivative jets.

mod bounds;
mod killing;

pub use bounds::{estimate_bounds, FieldBounds, DEFAULT_BOUNDS_GRID};
pub use killing::killing_integral_curve;

use crate::geometry::{Point2, Vec2};
use serde::{Deserialize, Serialize};

/// Built-in planar vector fields `V: ℝ² → ℝ²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmbientField {
    Zero,
    /// `V = (b, c)`.
    Constant { b: f64, c: f64 },
    /// `V = a·(y, −x) + (b, c)`.
    Killing { a: f64, b: f64, c: f64 },
    /// `V = (x, −x²)`.
    Saddle,
    /// `V = (1 + x² + y²)^{p/2}·(x, y)`.
    RadialPower { p: f64 },
    /// `V = ⟨α, γ⟩·γ`.
    RadialLinear { alpha: [f64; 2] },
}

/// Value and derivatives of a field at a point; `d1[i][j] = ∂_j V_i`,
/// `d2[i][j][k] = ∂_k ∂_j V_i`, and so on.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet {
    pub value: [f64; 2],
    pub d1: [[f64; 2]; 2],
    pub d2: [[[f64; 2]; 2]; 2],
    pub d3: [[[[f64; 2]; 2]; 2]; 2],
}

impl Jet {
    pub fn v(&self) -> Vec2 {
        Vec2::new(self.value[0], self.value[1])
    }

    /// `D_X V`.
    pub fn dir1(&self, x: Vec2) -> Vec2 {
        let x = [x.x, x.y];
        let c = |i: usize| (0..2).map(|j| self.d1[i][j] * x[j]).sum::<f64>();
        Vec2::new(c(0), c(1))
    }

    /// `D²_{X,Y} V`.
    pub fn dir2(&self, x: Vec2, y: Vec2) -> Vec2 {
        let (x, y) = ([x.x, x.y], [y.x, y.y]);
        let c = |i: usize| {
            let mut s = 0.0;
            for j in 0..2 {
                for k in 0..2 {
                    s += self.d2[i][j][k] * x[j] * y[k];
                }
            }
            s
        };
        Vec2::new(c(0), c(1))
    }

    /// `D³_{X,Y,Z} V`.
    pub fn dir3(&self, x: Vec2, y: Vec2, z: Vec2) -> Vec2 {
        let (x, y, z) = ([x.x, x.y], [y.x, y.y], [z.x, z.y]);
        let c = |i: usize| {
            let mut s = 0.0;
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        s += self.d3[i][j][k][l] * x[j] * y[k] * z[l];
                    }
                }
            }
            s
        };
        Vec2::new(c(0), c(1))
    }

    /// Spectral norm of `DV`.
    pub fn d1_norm(&self) -> f64 {
        let [[a, b], [c, d]] = self.d1;
        let s = a * a + b * b + c * c + d * d;
        let det = a * d - b * c;
        let disc = (s * s - 4.0 * det * det).max(0.0).sqrt();
        (0.5 * (s + disc)).sqrt()
    }
}

impl AmbientField {
    pub fn is_zero(&self) -> bool {
        match *self {
            AmbientField::Zero => true,
            AmbientField::Constant { b, c } => b == 0.0 && c == 0.0,
            AmbientField::Killing { a, b, c } => a == 0.0 && b == 0.0 && c == 0.0,
            AmbientField::RadialLinear { alpha } => alpha == [0.0, 0.0],
            AmbientField::Saddle | AmbientField::RadialPower { .. } => false,
        }
    }

    /// Whether `|V|` is bounded on the whole plane.
    pub fn is_globally_bounded(&self) -> bool {
        match *self {
            AmbientField::Zero | AmbientField::Constant { .. } => true,
            AmbientField::Killing { a, .. } => a == 0.0,
            AmbientField::RadialPower { p } => p <= -1.0,
            AmbientField::RadialLinear { alpha } => alpha == [0.0, 0.0],
            AmbientField::Saddle => false,
        }
    }

    pub fn value(&self, p: Point2) -> Vec2 {
        let (x, y) = (p.x, p.y);
        match *self {
            AmbientField::Zero => Vec2::ZERO,
            AmbientField::Constant { b, c } => Vec2::new(b, c),
            AmbientField::Killing { a, b, c } => Vec2::new(a * y + b, -a * x + c),
            AmbientField::Saddle => Vec2::new(x, -x * x),
            AmbientField::RadialPower { p: e } => p * (1.0 + x * x + y * y).powf(0.5 * e),
            AmbientField::RadialLinear { alpha } => p * (alpha[0] * x + alpha[1] * y),
        }
    }

    /// Closed-form jet up to `order` (at most 3); higher entries are zero.
    pub fn eval_jet(&self, p: Point2, order: usize) -> Jet {
        let mut j = Jet { value: [0.0; 2], ..Default::default() };
        let v = self.value(p);
        j.value = [v.x, v.y];
        if order == 0 {
            return j;
        }
        let xs = [p.x, p.y];
        let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        match *self {
            AmbientField::Zero | AmbientField::Constant { .. } => {}
            AmbientField::Killing { a, .. } => {
                j.d1 = [[0.0, a], [-a, 0.0]];
            }
            AmbientField::Saddle => {
                j.d1 = [[1.0, 0.0], [-2.0 * p.x, 0.0]];
                if order >= 2 {
                    j.d2[1][0][0] = -2.0;
                }
            }
            AmbientField::RadialPower { p: e } => {
                // V_i = g(u)·x_i with u = |x|², g(u) = (1+u)^{e/2}
                let u = p.norm_sq();
                let h = 0.5 * e;
                let g0 = (1.0 + u).powf(h);
                let g1 = h * (1.0 + u).powf(h - 1.0);
                let g2 = h * (h - 1.0) * (1.0 + u).powf(h - 2.0);
                let g3 = h * (h - 1.0) * (h - 2.0) * (1.0 + u).powf(h - 3.0);
                for i in 0..2 {
                    for a in 0..2 {
                        j.d1[i][a] = 2.0 * g1 * xs[a] * xs[i] + g0 * delta(i, a);
                        if order < 2 {
                            continue;
                        }
                        for b in 0..2 {
                            j.d2[i][a][b] = 4.0 * g2 * xs[a] * xs[b] * xs[i]
                                + 2.0 * g1 * (delta(a, b) * xs[i] + delta(i, a) * xs[b] + delta(i, b) * xs[a]);
                            if order < 3 {
                                continue;
                            }
                            for c in 0..2 {
                                j.d3[i][a][b][c] = 8.0 * g3 * xs[i] * xs[a] * xs[b] * xs[c]
                                    + 4.0
                                        * g2
                                        * (delta(a, c) * xs[b] * xs[i]
                                            + delta(b, c) * xs[a] * xs[i]
                                            + delta(i, c) * xs[a] * xs[b]
                                            + delta(a, b) * xs[i] * xs[c]
                                            + delta(i, a) * xs[b] * xs[c]
                                            + delta(i, b) * xs[a] * xs[c])
                                    + 2.0
                                        * g1
                                        * (delta(a, b) * delta(i, c)
                                            + delta(i, a) * delta(b, c)
                                            + delta(i, b) * delta(a, c));
                            }
                        }
                    }
                }
            }
            AmbientField::RadialLinear { alpha } => {
                // V_i = ⟨α,x⟩·x_i
                let ax = alpha[0] * p.x + alpha[1] * p.y;
                for i in 0..2 {
                    for a in 0..2 {
                        j.d1[i][a] = alpha[a] * xs[i] + ax * delta(i, a);
                        if order >= 2 {
                            for b in 0..2 {
                                j.d2[i][a][b] = alpha[a] * delta(i, b) + alpha[b] * delta(i, a);
                            }
                        }
                    }
                }
            }
        }
        if order < 2 {
            j.d2 = Default::default();
        }
        if order < 3 {
            j.d3 = Default::default();
        }
        j
    }

    /// `⟨D²_{τ,τ}V(p), Rτ⟩`.
    pub fn convexity_indicator(&self, p: Point2, tau: Vec2) -> f64 {
        self.eval_jet(p, 2).dir2(tau, tau).dot(tau.rot90())
    }

    /// Exact `sup_{|x| ≤ r} |V(x)|` (the growth function).
    pub fn sup_norm_on_disk(&self, r: f64) -> f64 {
        let r = r.max(0.0);
        match *self {
            AmbientField::Zero => 0.0,
            AmbientField::Constant { b, c } => b.hypot(c),
            AmbientField::Killing { a, b, c } => a.abs() * r + b.hypot(c),
            AmbientField::Saddle => r * (1.0 + r * r).sqrt(),
            AmbientField::RadialPower { p } => {
                // ρ(1+ρ²)^{p/2} increases up to ρ* = 1/√(−p−1) when p < −1
                let f = |s: f64| s * (1.0 + s * s).powf(0.5 * p);
                if p < -1.0 {
                    let rs = 1.0 / (-p - 1.0).sqrt();
                    f(r.min(rs))
                } else {
                    f(r)
                }
            }
            AmbientField::RadialLinear { alpha } => alpha[0].hypot(alpha[1]) * r * r,
        }
    }
}

/// Largest relative discrepancy between analytic derivatives and central
/// differences of the next-lower analytic order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JetResidual {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl JetResidual {
    pub fn max(&self) -> f64 {
        self.d1.max(self.d2).max(self.d3)
    }
}

pub fn verify_jet_fd(field: &AmbientField, p: Point2) -> JetResidual {
    const H: f64 = 1e-4;
    let rel = |a: f64, fd: f64| (a - fd).abs() / a.abs().max(1.0);
    let mut out = JetResidual { d1: 0.0, d2: 0.0, d3: 0.0 };
    let at = p;
    let j0 = field.eval_jet(at, 3);
    for dir in 0..2 {
        let e = if dir == 0 { Vec2::new(H, 0.0) } else { Vec2::new(0.0, H) };
        let jp = field.eval_jet(at + e, 3);
        let jm = field.eval_jet(at - e, 3);
        for i in 0..2 {
            let fd = (jp.value[i] - jm.value[i]) / (2.0 * H);
            out.d1 = out.d1.max(rel(j0.d1[i][dir], fd));
            for a in 0..2 {
                let fd = (jp.d1[i][a] - jm.d1[i][a]) / (2.0 * H);
                out.d2 = out.d2.max(rel(j0.d2[i][a][dir], fd));
                for b in 0..2 {
                    let fd = (jp.d2[i][a][b] - jm.d2[i][a][b]) / (2.0 * H);
                    out.d3 = out.d3.max(rel(j0.d3[i][a][b][dir], fd));
                }
            }
        }
    }
    out
}
