use super::{step, time_step, DtPolicy, FlowParams, FlowState, StepControl};
use crate::error::{Error, Result};
use crate::field::AmbientField;
use crate::geometry::{ClosedCurve, Point2, Vec2};
use serde::{Deserialize, Serialize};

/// Local graph `γ(x) = p + x·τ + u(x)·Rτ` on the uniform grid over `[−δ/2, δ/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphState {
    pub p: Point2,
    pub tau: Vec2,
    pub half_width: f64,
    pub u: Vec<f64>,
    pub t: f64,
}

impl GraphState {
    /// `n` must be odd so that `x = 0` is a grid node.
    pub fn from_fn<F: Fn(f64) -> f64>(p: Point2, tau: Vec2, delta: f64, n: usize, f: F) -> Result<Self> {
        if n < 5 || n.is_multiple_of(2) {
            return Err(Error::Domain(format!("graph grid needs an odd size >= 5, got {n}")));
        }
        if !(delta > 0.0) {
            return Err(Error::Domain(format!("graph interval width must be positive, got {delta}")));
        }
        let tau = tau.normalized();
        let mut g = GraphState { p, tau, half_width: 0.5 * delta, u: vec![0.0; n], t: 0.0 };
        for i in 0..n {
            g.u[i] = f(g.x(i));
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / (self.u.len() - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.half_width + self.dx() * i as f64
    }

    pub fn embed(&self, i: usize) -> Point2 {
        self.p + self.tau * self.x(i) + self.tau.rot90() * self.u[i]
    }

    /// Second difference at the centre node.
    pub fn uxx_center(&self) -> f64 {
        let c = self.u.len() / 2;
        (self.u[c + 1] - 2.0 * self.u[c] + self.u[c - 1]) / self.dx().powi(2)
    }

    pub fn max_slope(&self) -> f64 {
        let h = self.dx();
        self.u.windows(2).map(|w| ((w[1] - w[0]) / h).abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub enum GraphBoundary {
    /// Boundary values stay at their initial values.
    Fixed,
    /// Boundary values are read off a closed curve evolved alongside the graph.
    Host(ClosedCurve),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GraphControl {
    pub dt: Option<f64>,
    pub c_cfl: f64,
    pub max_time: f64,
    pub max_steps: usize,
    pub slope_cap: f64,
    pub record_every: usize,
}

impl Default for GraphControl {
    fn default() -> Self {
        GraphControl { dt: None, c_cfl: 0.2, max_time: 0.01, max_steps: 1_000_000, slope_cap: 10.0, record_every: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct GraphRun {
    pub times: Vec<f64>,
    /// `u_xx(0, t)` at the recorded times
    pub uxx0: Vec<f64>,
    pub states: Vec<GraphState>,
    pub graphicality_lost: bool,
    pub host: Option<ClosedCurve>,
}

/// Height of the host curve above the graph frame at abscissa `xb`, choosing the
/// crossing closest to `guess`.
fn host_height(host: &ClosedCurve, p: Point2, tau: Vec2, xb: f64, guess: f64) -> Option<f64> {
    let v = host.vertices();
    let n = v.len();
    let nrm = tau.rot90();
    let mut best: Option<f64> = None;
    for j in 0..n {
        let (a, b) = (v[j] - p, v[(j + 1) % n] - p);
        let (xa, xb2) = (a.dot(tau), b.dot(tau));
        if (xa - xb) * (xb2 - xb) > 0.0 || xa == xb2 {
            continue;
        }
        let w = (xb - xa) / (xb2 - xa);
        let h = (1.0 - w) * a.dot(nrm) + w * b.dot(nrm);
        if best.is_none_or(|c| (h - guess).abs() < (c - guess).abs()) {
            best = Some(h);
        }
    }
    best
}

/// Explicit scheme for
/// `u_t = σ1·u_xx/(1+u_x²) + √(1+u_x²)·(σ2 + ⟨V(γ), ν⟩)`, `ν = (Rτ − u_x τ)/√(1+u_x²)`.
pub fn evolve_graph(
    g0: &GraphState,
    boundary: &GraphBoundary,
    field: &AmbientField,
    params: &FlowParams,
    control: &GraphControl,
) -> Result<GraphRun> {
    params.validate()?;
    let mut g = g0.clone();
    let mut host = match boundary {
        GraphBoundary::Fixed => None,
        GraphBoundary::Host(c) => Some(FlowState::new(c.clone(), g.t)?),
    };
    let h = g.dx();
    let n = g.len();
    let nrm = g.tau.rot90();
    let mut run = GraphRun { times: vec![g.t], uxx0: vec![g.uxx_center()], states: vec![g.clone()], graphicality_lost: false, host: None };
    let mut steps = 0;
    while g.t < control.max_time * (1.0 - 1e-14) && steps < control.max_steps {
        let mut dt = control.dt.unwrap_or(control.c_cfl * h * h / params.sigma1);
        if let Some(hs) = &host {
            let hc = StepControl::default();
            dt = dt.min(time_step(hs, field, params, &hc));
        }
        dt = dt.min(control.max_time - g.t);
        let mut next = g.u.clone();
        for i in 1..n - 1 {
            let ux = (g.u[i + 1] - g.u[i - 1]) / (2.0 * h);
            let uxx = (g.u[i + 1] - 2.0 * g.u[i] + g.u[i - 1]) / (h * h);
            let q = (1.0 + ux * ux).sqrt();
            let nu = (nrm - g.tau * ux) / q;
            let vn = field.value(g.embed(i)).dot(nu);
            next[i] = g.u[i] + dt * (params.sigma1 * uxx / (q * q) + q * (params.sigma2 + vn));
        }
        if let Some(hs) = host.take() {
            let ctl = StepControl { dt: DtPolicy::Fixed { dt }, ..Default::default() };
            let (hn, _) = step(&hs, field, params, &ctl)?;
            for &i in &[0, n - 1] {
                next[i] = host_height(&hn.curve, g.p, g.tau, g.x(i), g.u[i])
                    .ok_or_else(|| Error::Domain(format!("host curve no longer spans the graph interval at t = {}", g.t)))?;
            }
            host = Some(hn);
        }
        g.u = next;
        g.t += dt;
        steps += 1;
        if g.max_slope() > control.slope_cap || g.u.iter().any(|x| !x.is_finite()) {
            run.graphicality_lost = true;
        }
        if steps % control.record_every.max(1) == 0 || run.graphicality_lost {
            run.times.push(g.t);
            run.uxx0.push(g.uxx_center());
            run.states.push(g.clone());
        }
        if run.graphicality_lost {
            break;
        }
    }
    if run.states.last().map(|s| s.t) != Some(g.t) {
        run.times.push(g.t);
        run.uxx0.push(g.uxx_center());
        run.states.push(g);
    }
    run.host = host.map(|h| h.curve);
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_parabola_closure;

    fn initial_slope(run: &GraphRun, upto: f64) -> f64 {
        let k = run.times.iter().position(|&t| t >= upto).unwrap();
        (run.uxx0[k] - run.uxx0[0]) / (run.times[k] - run.times[0])
    }

    #[test]
    fn flat_line_is_stationary() {
        let g = GraphState::from_fn(Point2::ZERO, Vec2::new(1.0, 0.0), 0.5, 41, |_| 0.0).unwrap();
        let run = evolve_graph(&g, &GraphBoundary::Fixed, &AmbientField::Zero, &FlowParams::new(1.0, 0.0).unwrap(), &GraphControl::default())
            .unwrap();
        assert!(run.states.last().unwrap().u.iter().all(|&u| u == 0.0));
    }

    #[test]
    fn parabola_curvature_decay_without_field() {
        let eps = 0.5;
        let host = build_parabola_closure(eps, 0.5, 512).unwrap();
        let g = GraphState::from_fn(Point2::ZERO, Vec2::new(1.0, 0.0), 0.5, 101, |x| eps * x * x).unwrap();
        let ctl = GraphControl { max_time: 2e-4, ..Default::default() };
        let p = FlowParams::new(1.0, 0.0).unwrap();
        let run = evolve_graph(&g, &GraphBoundary::Host(host), &AmbientField::Zero, &p, &ctl).unwrap();
        let slope = initial_slope(&run, 1e-4);
        let expect = -2.0 * (2.0 * eps).powi(3);
        assert!((slope - expect).abs() < 0.05 * expect.abs(), "{slope} vs {expect}");
    }

    #[test]
    fn saddle_forcing_dominates_for_small_eps() {
        let eps = 0.05;
        let host = build_parabola_closure(eps, 0.5, 512).unwrap();
        let g = GraphState::from_fn(Point2::ZERO, Vec2::new(1.0, 0.0), 0.5, 101, |x| eps * x * x).unwrap();
        let ctl = GraphControl { max_time: 2e-4, ..Default::default() };
        let p = FlowParams::new(1.0, 0.0).unwrap();
        let run = evolve_graph(&g, &GraphBoundary::Host(host), &AmbientField::Saddle, &p, &ctl).unwrap();
        let slope = initial_slope(&run, 1e-4);
        // −2 from the field's second derivative, −4ε from its first, −16ε³ from diffusion
        let expect = -2.0 - 4.0 * eps - 16.0 * eps.powi(3);
        assert!((slope - expect).abs() < 0.05 * expect.abs(), "{slope} vs {expect}");
    }
}
