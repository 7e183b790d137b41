use super::config::{CurveSpec, ScenarioConfig, ScenarioKind};
use super::export::{bool_f, table_csv, write_atomic, write_trajectory, TrajectoryMeta};
use super::json::to_json_17;
use super::svg::{render_svg, SvgStyle};
use crate::constants::{
    case_c_horizon, check_hypotheses, constants_report, solve_confinement_ode, ConfinementCase, ConstantsReport, OdeOptions,
};
use crate::diagnostics::{
    derivative_boundedness, gaussian_monitor, geometric_estimate, identity_audit, identity_level, rescaled_roundness, speed_monitor,
    DerivativeRow, GaussianRow, GeometricEstimateRow, IdentityRow, RoundnessRow, SpeedRow,
};
use crate::error::{Error, Result};
use crate::field::{estimate_bounds, AmbientField, DEFAULT_BOUNDS_GRID};
use crate::flow::{
    estimate_extinction, evolve, rescale_trajectory, rigid_motion_killing, FlowParams, RescaledTrajectory, StepControl, StopReason,
    Trajectory,
};
use crate::geometry::{build_parabola_closure, hausdorff_distance, ClosedCurve, Point2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

/// Tolerances of the built-in verdicts.
pub const WINDING_TOL: f64 = 1e-8;
pub const IDENTITY_TOL: f64 = 1e-3;
pub const KILLING_TOL: f64 = 1e-3;
pub const KILLING_TIMES: usize = 20;
pub const ROUND_AREA_TOL: f64 = 0.02;
pub const ROUND_RATIO_MAX: f64 = 1.02;
pub const ROUND_F_MAX: f64 = 0.05;
pub const CURVATURE_SLACK: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub scenario: String,
    pub software: String,
    pub config: ScenarioConfig,
    pub trajectory: Option<TrajectoryMeta>,
    pub headline: Map<String, Value>,
    pub verdicts: BTreeMap<String, bool>,
    pub monitors: Map<String, Value>,
    pub files: Vec<String>,
}

impl RunManifest {
    fn new(cfg: &ScenarioConfig) -> Self {
        RunManifest {
            scenario: cfg.scenario.as_str().to_string(),
            software: format!("ambientflow {}", env!("CARGO_PKG_VERSION")),
            config: cfg.clone(),
            trajectory: None,
            headline: Map::new(),
            verdicts: BTreeMap::new(),
            monitors: Map::new(),
            files: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn failed_verdicts(&self) -> Vec<String> {
        self.verdicts.iter().filter(|(_, &v)| !v).map(|(k, _)| k.clone()).collect()
    }

    fn head(&mut self, k: &str, v: Value) {
        self.headline.insert(k.to_string(), v);
    }

    fn verdict(&mut self, k: &str, v: bool) {
        self.verdicts.insert(k.to_string(), v);
    }

    fn file(&mut self, dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
        write_atomic(&dir.join(name), bytes)?;
        self.files.push(name.to_string());
        Ok(())
    }

    /// Writes `manifest.json` last, after every other file of the run.
    pub fn write(&self, dir: &Path) -> Result<()> {
        write_atomic(&dir.join("manifest.json"), to_json_17(self)?.as_bytes())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(dir.join("manifest.json"))?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn pt(p: Point2) -> Value {
    json!([p.x, p.y])
}

fn base_dir(cfg: &ScenarioConfig) -> PathBuf {
    cfg.config_dir.clone().unwrap_or_else(|| PathBuf::from("."))
}

/// Runs a scenario and writes its files plus `manifest.json` into `out`.
pub fn run_scenario(cfg: &ScenarioConfig, out: &Path) -> Result<RunManifest> {
    cfg.validate()?;
    std::fs::create_dir_all(out)?;
    let m = match cfg.scenario {
        ScenarioKind::BaselineCircle => run_single(cfg, out, false)?,
        ScenarioKind::RoundPoint => run_single(cfg, out, true)?,
        ScenarioKind::KillingEquivalence => run_killing(cfg, out)?,
        ScenarioKind::LossOfConvexity => run_loss_of_convexity(cfg, out)?,
        ScenarioKind::IdentityAudit => run_identity(cfg, out)?,
        ScenarioKind::Constants => run_constants(cfg, out)?,
    };
    m.write(out)?;
    Ok(m)
}

fn meta(traj: &Trajectory, cfg: &ScenarioConfig, control: &StepControl) -> TrajectoryMeta {
    TrajectoryMeta {
        params: traj.params,
        field: traj.field.clone(),
        stop_reason: traj.stop_reason,
        nonconvex_time: traj.nonconvex_time,
        steps: traj.steps,
        resample_every: control.resample_every,
        region: cfg.region,
        m_theta: cfg.m_theta,
    }
}

fn snapshot_svg(traj: &Trajectory, max_paths: usize) -> String {
    let n = traj.snapshots.len();
    let stride = n.div_ceil(max_paths.max(1)).max(1);
    let paths: Vec<Vec<Point2>> = traj.snapshots.iter().step_by(stride).map(|s| s.curve.vertices().to_vec()).collect();
    render_svg(&paths, SvgStyle::Ramp)
}

/// Monitors shared by every single-trajectory scenario; they also back the
/// `verify` subcommand.
pub fn analyze_trajectory(traj: &Trajectory, meta: &TrajectoryMeta, dir: &Path, m: &mut RunManifest) -> Result<Option<RescaledTrajectory>> {
    let field = &traj.field;
    let params = &traj.params;
    m.head("stop_reason", json!(traj.stop_reason.as_str()));
    m.head("steps", json!(traj.steps));
    m.head("t_end", json!(traj.series.last().map(|r| r.t).unwrap_or(0.0)));
    if let Some(t) = traj.nonconvex_time {
        m.head("nonconvex_time", json!(t));
    }
    let wdev = traj.series.iter().map(|r| (r.winding - 1.0).abs()).fold(0.0, f64::max);
    m.head("winding_max_deviation", json!(wdev));
    m.verdict("winding", wdev <= WINDING_TOL);

    let ge = geometric_estimate(&traj.snapshots, meta.m_theta);
    m.file(
        dir,
        "geometric.csv",
        &table_csv(
            &ge,
            &[
                ("t", &|r: &GeometricEstimateRow| r.t),
                ("k_star", &|r| r.k_star),
                ("L_over_A", &|r| r.l_over_a),
                ("convex", &|r| bool_f(r.convex)),
                ("holds", &|r| bool_f(r.verdict == Some(true))),
            ],
        )?,
    )?;
    let convex_count = ge.iter().filter(|r| r.convex).count();
    m.verdict("geometric_estimate", ge.iter().all(|r| r.verdict != Some(false)));
    m.monitors.insert("geometric_estimate".into(), json!({"convex_snapshots": convex_count, "skipped": ge.len() - convex_count}));

    let der = derivative_boundedness(&traj.snapshots);
    m.file(
        dir,
        "derivatives.csv",
        &table_csv(
            &der.rows,
            &[("t", &|r: &DerivativeRow| r.t), ("kmax", &|r| r.kmax), ("max_ks", &|r| r.max_ks), ("max_kss", &|r| r.max_kss)],
        )?,
    )?;
    m.monitors.insert("derivatives".into(), json!({"unbounded_at": der.unbounded_at}));

    match identity_level(traj, field, params) {
        Ok(lv) => {
            m.file(
                dir,
                "identity.csv",
                &table_csv(
                    &lv.rows,
                    &[("t", &|r: &IdentityRow| r.t), ("L", &|r| r.length), ("A", &|r| r.area), ("W", &|r| r.winding)],
                )?,
            )?;
            m.monitors.insert(
                "identity".into(),
                json!({"rows": lv.rows.len(), "max_length": lv.max_length, "max_area": lv.max_area, "max_winding": lv.max_winding}),
            );
        }
        Err(e) => {
            m.monitors.insert("identity".into(), json!({"skipped": e.to_string()}));
        }
    }

    if let Some(r0) = meta.region.or(Some(2.0 * traj.snapshots[0].curve.max_radius().max(1e-12))) {
        let first_convex = ge.first().map(|r| r.convex).unwrap_or(false);
        if first_convex {
            let bounds = estimate_bounds(field, r0, DEFAULT_BOUNDS_GRID)?;
            let (k, _) = crate::constants::curvature_threshold_k(params.sigma1, params.sigma2, bounds.c1, bounds.c2)?;
            let sm = speed_monitor(&traj.snapshots, field, &bounds, params, k, meta.m_theta)?;
            m.file(
                dir,
                "speed.csv",
                &table_csv(
                    &sm.rows,
                    &[
                        ("t", &|r: &SpeedRow| r.t),
                        ("convex", &|r| bool_f(r.convex)),
                        ("Fmin", &|r| r.f_min),
                        ("Fmax", &|r| r.f_max),
                        ("int_abs_F", &|r| r.abs_integral),
                        ("sup_F_theta", &|r| r.sup_f_theta),
                        ("gradient_margin", &|r| r.gradient_margin),
                        ("max_margin", &|r| r.max_margin),
                        ("local_margin", &|r| r.local_margin),
                    ],
                )?,
            )?;
            m.verdict("speed_bounds", sm.ok());
            m.monitors.insert(
                "speed".into(),
                json!({"M": sm.m, "M1": sm.m1, "shift": sm.shift, "K": k, "skipped": sm.skipped,
                       "violations": sm.violations.iter().map(|(t, w)| json!({"t": t, "which": w})).collect::<Vec<_>>()}),
            );
        }
    }

    if traj.stop_reason != StopReason::Extinct {
        return Ok(None);
    }
    let ext = estimate_extinction(traj)?;
    m.head("T", json!(ext.time));
    m.head("origin", pt(ext.origin));
    let rs = rescale_trajectory(traj, ext.time, ext.origin)?;
    let rd = rescaled_roundness(&rs, params, meta.m_theta);
    m.file(
        dir,
        "roundness.csv",
        &table_csv(
            &rd,
            &[
                ("t_hat", &|r: &RoundnessRow| r.t_hat),
                ("A", &|r| r.area),
                ("L", &|r| r.length),
                ("kmin", &|r| r.kmin),
                ("kmax", &|r| r.kmax),
                ("ratio", &|r| r.ratio),
                ("f", &|r| r.f),
                ("slack", &|r| r.slack),
                ("convex", &|r| bool_f(r.convex)),
            ],
        )?,
    )?;
    let slack_ok = rd.iter().filter(|r| r.convex).all(|r| r.slack >= -1e-3);
    m.verdict("reverse_isoperimetric", slack_ok);
    if let Ok(g) = gaussian_monitor(&rs, field, params) {
        m.file(
            dir,
            "gaussian.csv",
            &table_csv(
                &g.rows,
                &[
                    ("t_hat", &|r: &GaussianRow| r.t_hat),
                    ("R", &|r| r.r),
                    ("dissipation", &|r| r.dissipation),
                    ("forcing", &|r| r.forcing),
                    ("max_Q", &|r| r.max_q),
                    ("dR", &|r| r.dr),
                    ("residual", &|r| r.residual),
                ],
            )?,
        )?;
        m.monitors.insert(
            "gaussian".into(),
            json!({"max_relative_residual": g.max_relative_residual, "max_relative_increase": g.max_relative_increase}),
        );
    }
    let tail = rs.tail(0.5 * 10f64.ln());
    let area_target = params.sigma1 * PI;
    let (mut area_dev, mut ratio_max, mut f_max) = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for &i in &tail {
        let r = &rd[i];
        area_dev = area_dev.max(((r.area - area_target) / area_target).abs());
        ratio_max = ratio_max.max(r.ratio);
        f_max = f_max.max(if r.convex { r.f } else { f64::INFINITY });
    }
    m.monitors.insert(
        "final_decade".into(),
        json!({"t_hat_from": tail.first().map(|&i| rs.snapshots[i].t_hat), "snapshots": tail.len(),
               "area_relative_deviation": area_dev, "ratio_max": ratio_max, "f_max": f_max}),
    );
    let paths: Vec<Vec<Point2>> = tail.iter().map(|&i| rs.snapshots[i].curve.vertices().to_vec()).collect();
    m.file(dir, "rescaled.svg", render_svg(&paths, SvgStyle::Centered).as_bytes())?;
    Ok(Some(rs))
}

fn run_single(cfg: &ScenarioConfig, out: &Path, round_point: bool) -> Result<RunManifest> {
    let mut m = RunManifest::new(cfg);
    let spec = cfg.curve.as_ref().expect("validated");
    let curve = spec.build(&base_dir(cfg))?;
    let (field, params) = (&cfg.field, &cfg.params);
    if round_point {
        let h = check_hypotheses(&curve, field, params, cfg.region)?;
        m.verdict("hypotheses", h.all_hold());
        m.head("K", json!(h.k));
        m.head("M", serde_json::to_value(h.m)?);
        m.monitors.insert("hypotheses".into(), serde_json::to_value(&h)?);
    }
    let traj = evolve(&curve, field, params, &cfg.control)?;
    let tm = meta(&traj, cfg, &cfg.control);
    m.files.extend(write_trajectory(out, &traj)?);
    m.file(out, "trajectory.svg", snapshot_svg(&traj, 40).as_bytes())?;
    let rescaled = analyze_trajectory(&traj, &tm, out, &mut m)?;
    m.trajectory = Some(tm);

    if let (CurveSpec::Circle { r, .. }, false) = (spec, round_point) {
        if field.is_zero() && params.sigma2 == 0.0 {
            let t_exact = r * r / (2.0 * params.sigma1);
            let dev = traj
                .series
                .iter()
                .filter(|row| row.t <= 0.9 * t_exact)
                .map(|row| ((row.area / PI).sqrt() - (r * r - 2.0 * params.sigma1 * row.t).sqrt()).abs())
                .fold(0.0, f64::max);
            m.head("T_exact", json!(t_exact));
            m.head("radius_max_deviation", json!(dev));
            m.verdict("radius_oracle", dev <= 1e-3 * r);
            let t = m.headline.get("T").and_then(|v| v.as_f64());
            m.verdict("extinction_time", t.map(|t| ((t - t_exact) / t_exact).abs() <= 0.01).unwrap_or(false));
        }
    }
    if round_point {
        let h = m.headline.get("K").and_then(|v| v.as_f64()).unwrap_or(0.0);
        let kmin = traj.series.iter().map(|r| r.kmin).fold(f64::INFINITY, f64::min);
        m.head("min_k", json!(kmin));
        m.verdict("curvature_above_K", kmin >= h - CURVATURE_SLACK);
        m.verdict("extinct", traj.stop_reason == StopReason::Extinct);
        if rescaled.is_some() {
            let fd = &m.monitors["final_decade"];
            let (a, r, f) = (fd["area_relative_deviation"].as_f64(), fd["ratio_max"].as_f64(), fd["f_max"].as_f64());
            m.verdict("rescaled_area", a.map(|a| a <= ROUND_AREA_TOL).unwrap_or(false));
            m.verdict("curvature_ratio", r.map(|r| r <= ROUND_RATIO_MAX).unwrap_or(false));
            m.verdict("rescaled_f", f.map(|f| f <= ROUND_F_MAX).unwrap_or(false));
        }
    }
    Ok(m)
}

/// Hausdorff distances between the Killing-field flow and the rigidly moved
/// field-free flow at `KILLING_TIMES` matched times up to `0.9·T`.
pub fn killing_comparison(
    curve: &ClosedCurve,
    a: f64,
    b: f64,
    c: f64,
    params: &FlowParams,
    control: &StepControl,
) -> Result<(f64, Vec<(f64, f64)>)> {
    let zero = AmbientField::Zero;
    let probe = evolve(curve, &zero, params, control)?;
    let t_ext = estimate_extinction(&probe)?.time;
    let times: Vec<f64> = (1..=KILLING_TIMES).map(|i| 0.9 * t_ext * i as f64 / KILLING_TIMES as f64).collect();
    let ctl = StepControl { snapshot_times: times.clone(), max_time: 0.9 * t_ext * (1.0 + 1e-12), ..control.clone() };
    let kf = AmbientField::Killing { a, b, c };
    let (base, moved) = rayon::join(|| evolve(curve, &zero, params, &ctl), || evolve(curve, &kf, params, &ctl));
    let (base, moved) = (base?, moved?);
    let rigid = rigid_motion_killing(&base, a, b, c);
    let find = |tr: &Trajectory, t: f64| tr.snapshots.iter().find(|s| (s.t - t).abs() <= 1e-9 * (1.0 + t)).map(|s| s.curve.clone());
    let mut out = Vec::new();
    for &t in &times {
        let (Some(x), Some(y)) = (find(&rigid, t), find(&moved, t)) else {
            return Err(Error::InsufficientData(format!("no snapshot at matched time {t}")));
        };
        out.push((t, hausdorff_distance(&x, &y) / x.diameter()));
    }
    Ok((t_ext, out))
}

fn run_killing(cfg: &ScenarioConfig, out: &Path) -> Result<RunManifest> {
    let mut m = RunManifest::new(cfg);
    let curve = cfg.curve.as_ref().expect("validated").build(&base_dir(cfg))?;
    let AmbientField::Killing { a, b, c } = cfg.field else { unreachable!("validated") };
    let (t_ext, d) = killing_comparison(&curve, a, b, c, &cfg.params, &cfg.control)?;
    let worst = d.iter().map(|x| x.1).fold(0.0, f64::max);
    m.file(out, "killing.csv", &table_csv(&d, &[("t", &|r: &(f64, f64)| r.0), ("hausdorff_over_diam", &|r| r.1)])?)?;
    m.head("T", json!(t_ext));
    m.head("max_hausdorff_over_diam", json!(worst));
    m.verdict("killing_equivalence", worst <= KILLING_TOL);
    Ok(m)
}

fn run_loss_of_convexity(cfg: &ScenarioConfig, out: &Path) -> Result<RunManifest> {
    let mut m = RunManifest::new(cfg);
    let Some(CurveSpec::ParabolaClosure { delta, n, .. }) = cfg.curve.clone() else { unreachable!("validated") };
    let control = StepControl { stop_on_nonconvex: true, ..cfg.control.clone() };
    let runs = cfg
        .sweep
        .par_iter()
        .enumerate()
        .map(|(i, &eps)| {
            let dir = out.join(format!("eps_{i:02}"));
            let child_cfg = ScenarioConfig {
                curve: Some(CurveSpec::ParabolaClosure { eps, delta, n }),
                sweep: vec![eps],
                output: Some(dir.clone()),
                control: control.clone(),
                ..cfg.clone()
            };
            let curve = build_parabola_closure(eps, delta, n)?;
            let traj = evolve(&curve, &cfg.field, &cfg.params, &control)?;
            let mut cm = RunManifest::new(&child_cfg);
            std::fs::create_dir_all(&dir)?;
            cm.files.extend(write_trajectory(&dir, &traj)?);
            cm.file(&dir, "trajectory.svg", snapshot_svg(&traj, 40).as_bytes())?;
            let tm = meta(&traj, &child_cfg, &control);
            cm.head("eps", json!(eps));
            cm.head("stop_reason", json!(traj.stop_reason.as_str()));
            cm.head("steps", json!(traj.steps));
            if let Some(t) = traj.nonconvex_time {
                cm.head("nonconvex_time", json!(t));
            }
            let wdev = traj.series.iter().map(|r| (r.winding - 1.0).abs()).fold(0.0, f64::max);
            cm.head("winding_max_deviation", json!(wdev));
            cm.verdict("winding", wdev <= WINDING_TOL);
            cm.verdict("nonconvex_event", traj.nonconvex_time.is_some());
            cm.trajectory = Some(tm);
            cm.write(&dir)?;
            Ok((eps, traj.nonconvex_time, format!("eps_{i:02}"), cm.passed()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = runs.clone();
    sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let times: Vec<Option<f64>> = sorted.iter().map(|r| r.1).collect();
    let all_events = times.iter().all(|t| t.is_some());
    let monotone = all_events && times.windows(2).all(|w| w[1].unwrap() <= w[0].unwrap());
    m.verdict("nonconvex_events", all_events);
    m.verdict("event_times_non_increasing", monotone);
    m.verdict("child_runs", runs.iter().all(|r| r.3));
    m.head(
        "events",
        json!(sorted.iter().map(|(eps, t, d, _)| json!({"eps": eps, "nonconvex_time": t, "dir": d})).collect::<Vec<_>>()),
    );
    for (_, _, d, _) in &runs {
        m.files.push(format!("{d}/manifest.json"));
    }
    Ok(m)
}

fn run_identity(cfg: &ScenarioConfig, out: &Path) -> Result<RunManifest> {
    let mut m = RunManifest::new(cfg);
    let curve = cfg.curve.as_ref().expect("validated").build(&base_dir(cfg))?;
    let l = cfg.ladder.as_ref().expect("validated");
    let rep = identity_audit(&curve, &cfg.field, &cfg.params, l.dt, l.t_end, l.snapshots, l.levels)?;
    for (i, lv) in rep.levels.iter().enumerate() {
        m.file(
            out,
            &format!("identity_level{i}.csv"),
            &table_csv(&lv.rows, &[("t", &|r: &IdentityRow| r.t), ("L", &|r| r.length), ("A", &|r| r.area), ("W", &|r| r.winding)])?,
        )?;
    }
    let f = rep.finest();
    m.head("finest_dt", json!(f.dt));
    m.head("max_length_residual", json!(f.max_length));
    m.head("max_area_residual", json!(f.max_area));
    m.head("max_winding_residual", json!(f.max_winding));
    m.monitors.insert("identity".into(), serde_json::to_value(&rep)?);
    m.verdict("residuals", f.max_length <= IDENTITY_TOL && f.max_area <= IDENTITY_TOL);
    m.verdict("winding_residual", f.max_winding <= 1e-6);
    m.verdict("first_order", rep.first_order());
    Ok(m)
}

/// Constants report for explicit or measured bounds.
pub fn constants_from_config(cfg: &ScenarioConfig) -> Result<ConstantsReport> {
    let input = cfg.constants.clone().unwrap_or_default();
    let measured = if input.c0.is_none() || input.c1.is_none() || input.c2.is_none() {
        let r0 = cfg.region.ok_or_else(|| Error::MissingInput("bounds need a region or explicit c0, c1, c2".into()))?;
        Some(estimate_bounds(&cfg.field, r0, DEFAULT_BOUNDS_GRID)?)
    } else {
        None
    };
    let pick = |x: Option<f64>, f: fn(&crate::field::FieldBounds) -> f64| x.unwrap_or_else(|| measured.as_ref().map(f).unwrap_or(0.0));
    let (c0, c1, c2) = (pick(input.c0, |b| b.c0), pick(input.c1, |b| b.c1), pick(input.c2, |b| b.c2));
    let case = input.case.unwrap_or(if cfg.region.is_some() { ConfinementCase::B } else { ConfinementCase::A });
    let (mut x_t0, mut blow) = (input.x_t0, None);
    if case == ConfinementCase::C && x_t0.is_none() {
        let x0 = match (input.x0, &cfg.curve) {
            (Some(x), _) => x,
            (None, Some(c)) => c.build(&base_dir(cfg))?.max_radius(),
            (None, None) => return Err(Error::MissingInput("case (c) needs x_t0, x0 or a curve".into())),
        };
        let sol = solve_confinement_ode(cfg.params.sigma2, &|x| cfg.field.sup_norm_on_disk(x), x0, case_c_horizon(cfg.params.sigma1), &OdeOptions::default());
        blow = Some(sol.blow_up.is_some());
        if sol.blow_up.is_none() {
            x_t0 = Some(sol.end().1);
        }
    }
    constants_report(&cfg.params, c0, c1, c2, case, x_t0, blow)
}

fn run_constants(cfg: &ScenarioConfig, out: &Path) -> Result<RunManifest> {
    let mut m = RunManifest::new(cfg);
    let rep = constants_from_config(cfg)?;
    m.file(out, "constants.json", to_json_17(&rep)?.as_bytes())?;
    m.head("K", json!(rep.k));
    m.head("M", serde_json::to_value(rep.m)?);
    m.head("case", serde_json::to_value(rep.case)?);
    Ok(m)
}
