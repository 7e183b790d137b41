//! Time integration of the flow `∂γ/∂t = (σ1·k + σ2 + ⟨V, ν⟩)·ν`.

mod extinction;
mod graph;
mod killing;
mod rescale;
mod residual;

pub use extinction::{estimate_extinction, Extinction};
pub use graph::{evolve_graph, GraphBoundary, GraphControl, GraphRun, GraphState};
pub use killing::rigid_motion_killing;
pub use rescale::{rescale_trajectory, RescaledRow, RescaledSnapshot, RescaledTrajectory};
pub use residual::{curvature_residual, CurvatureResidual};

use crate::error::{Error, Result};
use crate::field::AmbientField;
use crate::geometry::{compute_geometry, resample_points, ClosedCurve, CurveGeometry, Point2};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowParams {
    pub sigma1: f64,
    pub sigma2: f64,
}

impl FlowParams {
    pub fn new(sigma1: f64, sigma2: f64) -> Result<Self> {
        let p = FlowParams { sigma1, sigma2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma1 > 0.0) || !self.sigma1.is_finite() || !self.sigma2.is_finite() {
            return Err(Error::Domain(format!("need sigma1 > 0 and finite sigma2, got {self:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DtPolicy {
    Fixed { dt: f64 },
    /// `dt = min(c_cfl·h²/σ1, c_adv·h/max|V|)` with `h` the shortest edge.
    Cfl { c_cfl: f64, c_adv: f64 },
}

impl Default for DtPolicy {
    fn default() -> Self {
        DtPolicy::Cfl { c_cfl: 0.2, c_adv: 0.5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StepControl {
    pub dt: DtPolicy,
    pub dt_max: Option<f64>,
    /// Resample to equal arc length every this many steps; 0 disables.
    pub resample_every: usize,
    #[serde(with = "inf_f64")]
    pub max_time: f64,
    pub max_steps: usize,
    pub area_floor: f64,
    pub stop_on_nonconvex: bool,
    /// Multiple of the curvature noise floor that `min k` must fall below.
    pub nonconvex_factor: f64,
    pub snapshot_every: usize,
    /// Extra snapshot times; the step is shortened to land on each exactly.
    pub snapshot_times: Vec<f64>,
}

/// Serializes `±∞` as the strings `"inf"`/`"-inf"` so the value survives JSON.
mod inf_f64 {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_infinite() {
            s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*x)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) => match s.as_str() {
                "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
                "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
                _ => Err(de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
            },
        }
    }
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            dt: DtPolicy::default(),
            dt_max: None,
            resample_every: 1,
            max_time: f64::INFINITY,
            max_steps: 5_000_000,
            area_floor: 1e-6,
            stop_on_nonconvex: false,
            nonconvex_factor: 10.0,
            snapshot_every: 100,
            snapshot_times: Vec::new(),
        }
    }
}

impl StepControl {
    pub fn validate(&self) -> Result<()> {
        match self.dt {
            DtPolicy::Fixed { dt } if !(dt > 0.0) => return Err(Error::Domain(format!("dt must be positive, got {dt}"))),
            DtPolicy::Cfl { c_cfl, c_adv } if !(c_cfl > 0.0 && c_adv > 0.0) => {
                return Err(Error::Domain("CFL factors must be positive".into()))
            }
            _ => {}
        }
        if !(self.area_floor > 0.0) {
            return Err(Error::Domain(format!("area floor must be positive, got {}", self.area_floor)));
        }
        if self.snapshot_every == 0 {
            return Err(Error::Domain("snapshot cadence must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Extinct,
    Nonembedded,
    NonconvexEvent,
    MaxTime,
    MaxSteps,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Extinct => "extinct",
            StopReason::Nonembedded => "nonembedded",
            StopReason::NonconvexEvent => "nonconvex-event",
            StopReason::MaxTime => "max-time",
            StopReason::MaxSteps => "max-steps",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FlowState {
    pub curve: ClosedCurve,
    pub geometry: CurveGeometry,
    pub t: f64,
    pub steps: usize,
}

impl FlowState {
    pub fn new(curve: ClosedCurve, t: f64) -> Result<Self> {
        let geometry = compute_geometry(&curve)?;
        Ok(FlowState { curve, geometry, t, steps: 0 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub t: f64,
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "A")]
    pub area: f64,
    #[serde(rename = "W")]
    pub winding: f64,
    pub kmin: f64,
    pub kmax: f64,
    #[serde(rename = "Fmin")]
    pub fmin: f64,
    /// whether the step ending at this row resampled the curve
    #[serde(skip)]
    pub resampled: bool,
}

#[derive(Clone, Debug)]
pub struct Snapshot {
    pub t: f64,
    pub curve: ClosedCurve,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub params: FlowParams,
    pub field: AmbientField,
    pub snapshots: Vec<Snapshot>,
    pub series: Vec<SeriesRow>,
    pub stop_reason: StopReason,
    /// Time of the first detected nonconvex event, if any.
    pub nonconvex_time: Option<f64>,
    pub steps: usize,
}

impl Trajectory {
    pub fn final_snapshot(&self) -> &Snapshot {
        self.snapshots.last().expect("trajectory has at least one snapshot")
    }

    /// Snapshot whose time is closest to `t`.
    pub fn snapshot_near(&self, t: f64) -> &Snapshot {
        self.snapshots
            .iter()
            .min_by(|a, b| (a.t - t).abs().partial_cmp(&(b.t - t).abs()).unwrap())
            .unwrap()
    }
}

/// Normal speed `F = σ1·k + σ2 + ⟨V, ν⟩` at every vertex.
pub fn normal_speed(curve: &ClosedCurve, geom: &CurveGeometry, field: &AmbientField, params: &FlowParams) -> Vec<f64> {
    curve
        .vertices()
        .iter()
        .zip(geom.curvature.iter().zip(&geom.normal))
        .map(|(&p, (&k, &n))| params.sigma1 * k + params.sigma2 + field.value(p).dot(n))
        .collect()
}

/// Largest magnitude of negative curvature that discretization jitter can produce.
pub fn curvature_noise_floor(curve: &ClosedCurve, geom: &CurveGeometry) -> f64 {
    let kmax = geom.max_abs_curvature();
    let h = curve.max_edge();
    kmax * (h * kmax).powi(2)
}

fn nonconvex(curve: &ClosedCurve, geom: &CurveGeometry, factor: f64) -> bool {
    geom.min_curvature() < -factor * curvature_noise_floor(curve, geom)
}

pub(crate) fn time_step(state: &FlowState, field: &AmbientField, params: &FlowParams, control: &StepControl) -> f64 {
    let mut dt = match control.dt {
        DtPolicy::Fixed { dt } => dt,
        DtPolicy::Cfl { c_cfl, c_adv } => {
            let h = state.geometry.edge_arc.iter().copied().fold(f64::INFINITY, f64::min);
            let mut dt = c_cfl * h * h / params.sigma1;
            let vmax = state.curve.vertices().iter().map(|&p| field.value(p).norm()).fold(0.0, f64::max);
            if vmax > 0.0 {
                dt = dt.min(c_adv * h / vmax);
            }
            dt
        }
    };
    if let Some(m) = control.dt_max {
        dt = dt.min(m);
    }
    let next_mark = control.snapshot_times.iter().copied().filter(|&m| m - state.t > 1e-12 * (1.0 + m.abs())).fold(f64::INFINITY, f64::min);
    for target in [control.max_time, next_mark] {
        if target.is_finite() {
            let rest = target - state.t;
            if rest > 0.0 && rest < dt {
                dt = rest;
            }
        }
    }
    dt
}

/// One explicit Euler step in the normal direction, followed by arc-length
/// resampling when due. Returns the new state and the step size.
pub fn step(state: &FlowState, field: &AmbientField, params: &FlowParams, control: &StepControl) -> Result<(FlowState, f64)> {
    let dt = time_step(state, field, params, control);
    let f = normal_speed(&state.curve, &state.geometry, field, params);
    let mut v: Vec<Point2> = state
        .curve
        .vertices()
        .iter()
        .zip(f.iter().zip(&state.geometry.normal))
        .map(|(&p, (&fi, &n))| p + n * (fi * dt))
        .collect();
    let steps = state.steps + 1;
    if control.resample_every > 0 && steps.is_multiple_of(control.resample_every) {
        v = resample_points(&v, v.len());
    }
    if v.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain(format!("non-finite vertex after step at t = {}", state.t)));
    }
    let curve = ClosedCurve::from_vertices_unchecked(v);
    let geometry = compute_geometry(&curve)?;
    Ok((FlowState { curve, geometry, t: state.t + dt, steps }, dt))
}

fn series_row(state: &FlowState, field: &AmbientField, params: &FlowParams, resampled: bool) -> SeriesRow {
    let g = &state.geometry;
    let f = normal_speed(&state.curve, g, field, params);
    SeriesRow {
        t: state.t,
        length: g.length,
        area: g.area,
        winding: g.turning_number,
        kmin: g.min_curvature(),
        kmax: g.max_curvature(),
        fmin: f.iter().copied().fold(f64::INFINITY, f64::min),
        resampled,
    }
}

/// Runs the flow until a stop condition and records the trajectory.
pub fn evolve(curve: &ClosedCurve, field: &AmbientField, params: &FlowParams, control: &StepControl) -> Result<Trajectory> {
    params.validate()?;
    control.validate()?;
    if !curve.is_embedded() {
        return Err(Error::InvalidCurve("initial curve is not embedded".into()));
    }
    let mut state = FlowState::new(curve.clone(), 0.0)?;
    let mut snapshots = vec![Snapshot { t: 0.0, curve: state.curve.clone() }];
    let mut series = vec![series_row(&state, field, params, false)];
    let mut nonconvex_time = None;
    let mut last_snap_step = 0;
    let stop_reason = loop {
        if nonconvex_time.is_none() && nonconvex(&state.curve, &state.geometry, control.nonconvex_factor) {
            nonconvex_time = Some(state.t);
            if control.stop_on_nonconvex {
                break StopReason::NonconvexEvent;
            }
        }
        if state.geometry.area < control.area_floor {
            break StopReason::Extinct;
        }
        if state.t >= control.max_time * (1.0 - 1e-14) {
            break StopReason::MaxTime;
        }
        if state.steps >= control.max_steps {
            break StopReason::MaxSteps;
        }
        let (next, _) = step(&state, field, params, control)?;
        state = next;
        let resampled = control.resample_every > 0 && state.steps % control.resample_every == 0;
        series.push(series_row(&state, field, params, resampled));
        let marked = control.snapshot_times.iter().any(|&m| (m - state.t).abs() <= 1e-12 * (1.0 + m.abs()));
        if state.steps % control.snapshot_every == 0 || marked {
            if !state.curve.is_embedded() {
                break StopReason::Nonembedded;
            }
            snapshots.push(Snapshot { t: state.t, curve: state.curve.clone() });
            last_snap_step = state.steps;
        }
    };
    if last_snap_step != state.steps && stop_reason != StopReason::Nonembedded && state.curve.is_embedded() {
        snapshots.push(Snapshot { t: state.t, curve: state.curve.clone() });
    }
    Ok(Trajectory {
        params: *params,
        field: field.clone(),
        snapshots,
        series,
        stop_reason,
        nonconvex_time,
        steps: state.steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hausdorff_distance;

    fn unit_circle(n: usize) -> ClosedCurve {
        ClosedCurve::circle(Point2::ZERO, 1.0, n).unwrap()
    }

    #[test]
    fn normal_speed_examples() {
        let c = unit_circle(256);
        let g = compute_geometry(&c).unwrap();
        let f = normal_speed(&c, &g, &AmbientField::Zero, &FlowParams::new(1.0, 0.0).unwrap());
        assert!(f.iter().all(|x| (x - 1.0).abs() < 1e-3));
        let f = normal_speed(&c, &g, &AmbientField::Zero, &FlowParams::new(1.0, -1.0).unwrap());
        assert!(f.iter().all(|x| x.abs() < 1e-3));
        let f = normal_speed(&c, &g, &AmbientField::Constant { b: 0.0, c: 1.0 }, &FlowParams::new(1.0, 0.0).unwrap());
        // vertex 64 of 256 sits at (0, 1)
        assert!((c.vertices()[64] - Point2::new(0.0, 1.0)).norm() < 1e-12);
        assert!(f[64].abs() < 1e-3);
    }

    #[test]
    fn one_step_shrinks_radius_by_dt() {
        let s = FlowState::new(unit_circle(128), 0.0).unwrap();
        let ctl = StepControl { dt: DtPolicy::Fixed { dt: 1e-4 }, ..Default::default() };
        let (n, dt) = step(&s, &AmbientField::Zero, &FlowParams::new(1.0, 0.0).unwrap(), &ctl).unwrap();
        let r = n.curve.vertices()[0].norm();
        assert!((1.0 - r - dt).abs() < 1e-6);
        assert!((n.geometry.turning_number - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stationary_circle_stays_put() {
        let c = ClosedCurve::circle(Point2::ZERO, 0.5, 128).unwrap();
        let ctl = StepControl { max_time: 0.05, snapshot_every: 50, ..Default::default() };
        let tr = evolve(&c, &AmbientField::Zero, &FlowParams::new(1.0, -2.0).unwrap(), &ctl).unwrap();
        assert_eq!(tr.stop_reason, StopReason::MaxTime);
        assert!(hausdorff_distance(&c, &tr.final_snapshot().curve) < 1e-8);
    }

    #[test]
    fn circle_with_forcing_matches_scalar_ode() {
        // r' = −(1/r + 1), integrated with fine RK4 as the oracle
        let c = unit_circle(256);
        let ctl = StepControl { area_floor: 1e-3, snapshot_every: 200, ..Default::default() };
        let tr = evolve(&c, &AmbientField::Zero, &FlowParams::new(1.0, 1.0).unwrap(), &ctl).unwrap();
        assert_eq!(tr.stop_reason, StopReason::Extinct);
        let rhs = |r: f64| -(1.0 / r + 1.0);
        for s in &tr.snapshots {
            let (mut r, mut t) = (1.0f64, 0.0f64);
            let n = 20000;
            let h = s.t / n as f64;
            for _ in 0..n {
                let k1 = rhs(r);
                let k2 = rhs(r + 0.5 * h * k1);
                let k3 = rhs(r + 0.5 * h * k2);
                let k4 = rhs(r + h * k3);
                r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                t += h;
            }
            if r < 0.1 {
                continue;
            }
            let g = compute_geometry(&s.curve).unwrap();
            let rad = g.length / std::f64::consts::TAU;
            assert!((rad - r).abs() < 1e-3, "t={t} r={rad} oracle={r}");
        }
        assert!(tr.series.last().unwrap().t < 0.5);
    }

    #[test]
    fn resample_cadence_does_not_change_geometry() {
        let c = ClosedCurve::ellipse(Point2::ZERO, 1.0, 0.6, 128).unwrap();
        let p = FlowParams::new(1.0, 0.0).unwrap();
        let h = c.max_edge();
        let base = StepControl { max_time: 0.05, snapshot_every: 1_000_000, ..Default::default() };
        let a = evolve(&c, &AmbientField::Saddle, &p, &StepControl { resample_every: 1, ..base.clone() }).unwrap();
        let b = evolve(&c, &AmbientField::Saddle, &p, &StepControl { resample_every: 5, ..base }).unwrap();
        let d = hausdorff_distance(&a.final_snapshot().curve, &b.final_snapshot().curve);
        assert!(d <= 5.0 * h, "{d} vs {h}");
    }
}
