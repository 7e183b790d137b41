use crate::error::{Error, Result};
use crate::field::AmbientField;
use crate::flow::{evolve, DtPolicy, FlowParams, SeriesRow, StepControl, Trajectory};
use crate::geometry::{compute_geometry, ClosedCurve};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Residuals of the length, area and winding identities at one snapshot.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub t: f64,
    /// `(FD L' − rhs)/Σ|rhs terms|`
    pub length: f64,
    pub area: f64,
    /// absolute `FD (∫k ds)'`
    pub winding: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityLevel {
    /// mean step size of the level
    pub dt: f64,
    pub rows: Vec<IdentityRow>,
    pub max_length: f64,
    pub max_area: f64,
    pub max_winding: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidualReport {
    /// coarse to fine
    pub levels: Vec<IdentityLevel>,
    /// `max residual(level i) / max residual(level i+1)` for consecutive levels
    pub length_ratios: Vec<f64>,
    pub area_ratios: Vec<f64>,
    pub winding_ratios: Vec<f64>,
    /// `max|r_i − r_{i+1}| / max|r_{i+1} − r_{i+2}|` over matched times: the
    /// order ratio with the step-independent spatial part of the residual removed
    pub length_difference_ratios: Vec<f64>,
    pub area_difference_ratios: Vec<f64>,
}

/// Accepted ratio window for first order under halving.
pub const ORDER_WINDOW: (f64, f64) = (1.5, 3.0);

impl IdentityResidualReport {
    pub fn finest(&self) -> &IdentityLevel {
        self.levels.last().expect("at least one level")
    }

    /// Whether the length and area order ratios fall in [`ORDER_WINDOW`]: the
    /// difference ratios with three or more levels, the raw ratios with two. The
    /// winding residual sits at rounding level and carries no order.
    pub fn first_order(&self) -> bool {
        let ok = |r: &f64| *r >= ORDER_WINDOW.0 && *r <= ORDER_WINDOW.1;
        if self.levels.len() >= 3 {
            self.length_difference_ratios.iter().all(ok) && self.area_difference_ratios.iter().all(ok)
        } else {
            self.length_ratios.iter().all(ok) && self.area_ratios.iter().all(ok)
        }
    }
}

/// Analytic right sides `(L', A')` and the sums of absolute values of their terms.
pub fn identity_rhs(curve: &ClosedCurve, field: &AmbientField, params: &FlowParams) -> Result<([f64; 2], [f64; 2])> {
    let g = compute_geometry(curve)?;
    let (mut k2, mut kv, mut v) = (0.0, 0.0, 0.0);
    let (mut k2a, mut kva, mut va) = (0.0, 0.0, 0.0);
    for (i, &p) in curve.vertices().iter().enumerate() {
        let k = g.curvature[i];
        let vn = field.value(p).dot(g.normal[i]);
        let ds = g.ds[i];
        k2 += k * k * ds;
        kv += k * vn * ds;
        v += vn * ds;
        k2a += k * k * ds;
        kva += (k * vn).abs() * ds;
        va += vn.abs() * ds;
    }
    let (s1, s2) = (params.sigma1, params.sigma2);
    let w = TAU * g.turning_number;
    let dl = -s1 * k2 - s2 * w - kv;
    let da = -s1 * w - s2 * g.length - v;
    let sl = s1 * k2a + (s2 * w).abs() + kva;
    let sa = (s1 * w).abs() + (s2 * g.length).abs() + va;
    Ok(([dl, da], [sl, sa]))
}

/// Derivative at `t` of the quadratic through three points.
fn fd_at(t: f64, ts: [f64; 3], fs: [f64; 3]) -> f64 {
    let [t0, t1, t2] = ts;
    fs[0] * ((t - t1) + (t - t2)) / ((t0 - t1) * (t0 - t2))
        + fs[1] * ((t - t0) + (t - t2)) / ((t1 - t0) * (t1 - t2))
        + fs[2] * ((t - t0) + (t - t1)) / ((t2 - t0) * (t2 - t1))
}

/// Three consecutive series rows around `j` whose connecting steps did not
/// resample: central if possible, else one-sided.
fn clean_stencil(s: &[SeriesRow], j: usize) -> Option<[usize; 3]> {
    let n = s.len();
    let clean = |a: usize, b: usize| (a + 1..=b).all(|i| !s[i].resampled);
    if j >= 1 && j + 1 < n && clean(j - 1, j + 1) {
        return Some([j - 1, j, j + 1]);
    }
    if j + 2 < n && clean(j, j + 2) {
        return Some([j, j + 1, j + 2]);
    }
    if j >= 2 && clean(j - 2, j) {
        return Some([j - 2, j - 1, j]);
    }
    None
}

/// Residual rows at every snapshot with a resample-free stencil in the per-step
/// series. Resampling moves vertices by an amount that does not scale with the
/// step, so difference quotients across it are excluded.
pub fn identity_level(traj: &Trajectory, field: &AmbientField, params: &FlowParams) -> Result<IdentityLevel> {
    let s = &traj.series;
    if traj.snapshots.len() < 3 || s.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "identity residuals need at least 3 snapshots, got {}",
            traj.snapshots.len()
        )));
    }
    let rows: Vec<IdentityRow> = traj
        .snapshots
        .par_iter()
        .filter_map(|snap| {
            let j = s.partition_point(|r| r.t < snap.t);
            if j >= s.len() || s[j].t != snap.t {
                return None;
            }
            let st = clean_stencil(s, j)?;
            let ts = st.map(|i| s[i].t);
            let dl = fd_at(snap.t, ts, st.map(|i| s[i].length));
            let da = fd_at(snap.t, ts, st.map(|i| s[i].area));
            let dw = fd_at(snap.t, ts, st.map(|i| s[i].winding * TAU));
            Some(identity_rhs(&snap.curve, field, params).map(|(rhs, scale)| IdentityRow {
                t: snap.t,
                length: (dl - rhs[0]) / scale[0],
                area: (da - rhs[1]) / scale[1],
                winding: dw.abs(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::InsufficientData("no snapshot has a resample-free stencil".into()));
    }
    let mx = |f: fn(&IdentityRow) -> f64| rows.iter().map(|r| f(r).abs()).fold(0.0, f64::max);
    let last = s.last().unwrap();
    Ok(IdentityLevel {
        dt: last.t / (s.len() - 1) as f64,
        max_length: mx(|r| r.length),
        max_area: mx(|r| r.area),
        max_winding: mx(|r| r.winding),
        rows,
    })
}

/// Residual report over a refinement ladder ordered from coarse to fine.
pub fn identity_residuals(levels: &[&Trajectory], field: &AmbientField, params: &FlowParams) -> Result<IdentityResidualReport> {
    if levels.is_empty() {
        return Err(Error::InsufficientData("no trajectory given".into()));
    }
    let lv = levels.iter().map(|t| identity_level(t, field, params)).collect::<Result<Vec<_>>>()?;
    let ratios = |f: fn(&IdentityLevel) -> f64| lv.windows(2).map(|w| f(&w[0]) / f(&w[1])).collect::<Vec<_>>();
    let diff = |a: &IdentityLevel, b: &IdentityLevel, f: fn(&IdentityRow) -> f64| {
        let mut m = 0.0f64;
        for ra in &a.rows {
            let tol = 1e-9 * (1.0 + ra.t.abs());
            if let Some(rb) = b.rows.iter().find(|rb| (rb.t - ra.t).abs() <= tol) {
                m = m.max((f(ra) - f(rb)).abs());
            }
        }
        m
    };
    let diff_ratios = |f: fn(&IdentityRow) -> f64| {
        lv.windows(3).map(|w| diff(&w[0], &w[1], f) / diff(&w[1], &w[2], f)).collect::<Vec<_>>()
    };
    Ok(IdentityResidualReport {
        length_ratios: ratios(|l| l.max_length),
        area_ratios: ratios(|l| l.max_area),
        winding_ratios: ratios(|l| l.max_winding),
        length_difference_ratios: diff_ratios(|r| r.length),
        area_difference_ratios: diff_ratios(|r| r.area),
        levels: lv,
    })
}

/// Runs a fixed-step ladder `dt, dt/2, …` (`levels` runs) over `[0, t_end]` with
/// snapshots at the same times on every level, and reports the residuals. The
/// curve is resampled only at snapshot steps.
pub fn identity_audit(
    curve: &ClosedCurve,
    field: &AmbientField,
    params: &FlowParams,
    dt: f64,
    t_end: f64,
    snapshots: usize,
    levels: usize,
) -> Result<IdentityResidualReport> {
    if levels == 0 || snapshots < 3 || !(dt > 0.0) || !(t_end > dt) {
        return Err(Error::Domain("identity audit needs dt > 0, t_end > dt, >= 3 snapshots, >= 1 level".into()));
    }
    let base_steps = (t_end / dt).round() as usize;
    let every = (base_steps / snapshots).max(3);
    let trajs = (0..levels)
        .into_par_iter()
        .map(|l| {
            let f = 1usize << l;
            let ctl = StepControl {
                dt: DtPolicy::Fixed { dt: dt / f as f64 },
                max_steps: base_steps * f,
                snapshot_every: every * f,
                resample_every: every * f,
                area_floor: 1e-12,
                ..Default::default()
            };
            evolve(curve, field, params, &ctl)
        })
        .collect::<Result<Vec<_>>>()?;
    identity_residuals(&trajs.iter().collect::<Vec<_>>(), field, params)
}
