use super::{FlowParams, Trajectory};
use crate::error::{Error, Result};
use crate::field::AmbientField;
use crate::geometry::{compute_geometry, ClosedCurve, CurveGeometry, Point2, Vec2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureResidual {
    pub times: Vec<f64>,
    /// max over vertices of `|FD k_t − right side|` at each interior snapshot
    pub max_abs: Vec<f64>,
    pub max: f64,
}

/// Right side of the curvature evolution along normal trajectories:
/// `σ1 k_ss + σ1 k³ + σ2 k² − k(2⟨D_τV,τ⟩ − ⟨D_νV,ν⟩) + ⟨D²_{τ,τ}V, ν⟩ − k_s⟨V,τ⟩`.
///
/// The last term converts from the parametrization that also moves tangentially
/// with `V` to pure normal motion.
pub fn curvature_rhs(curve: &ClosedCurve, g: &CurveGeometry, field: &AmbientField, p: &FlowParams) -> Vec<f64> {
    let k = &g.curvature;
    let ks = g.d_ds(k);
    let kss = g.d2_ds2(k);
    curve
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let (t, n) = (g.tangent[i], g.normal[i]);
            let j = field.eval_jet(x, 2);
            let dv = 2.0 * j.dir1(t).dot(t) - j.dir1(n).dot(n);
            p.sigma1 * kss[i] + p.sigma1 * k[i].powi(3) + p.sigma2 * k[i] * k[i] - k[i] * dv + j.dir2(t, t).dot(n)
                - ks[i] * j.v().dot(t)
        })
        .collect()
}

/// Curvature of `other` where the normal line through `x` (direction `nu`) meets it,
/// searching edges near `hint` first. Cubic interpolation in arc length.
fn curvature_at_foot(other: &ClosedCurve, og: &CurveGeometry, x: Point2, nu: Vec2, hint: usize) -> Option<f64> {
    let v = other.vertices();
    let n = v.len();
    let search = |range: &mut dyn Iterator<Item = usize>| -> Option<(usize, f64, f64)> {
        let mut best: Option<(usize, f64, f64)> = None;
        for j in range {
            let e = v[(j + 1) % n] - v[j];
            let den = e.cross(nu);
            if den.abs() < 1e-300 {
                continue;
            }
            let mu = (x - v[j]).cross(nu) / den;
            if !(-1e-12..=1.0 + 1e-12).contains(&mu) {
                continue;
            }
            let lam = (v[j] + e * mu - x).dot(nu);
            if best.is_none_or(|b| lam.abs() < b.2.abs()) {
                best = Some((j, mu.clamp(0.0, 1.0), lam));
            }
        }
        best
    };
    let w = 16usize.min(n / 2);
    let mut local = (0..2 * w + 1).map(|d| (hint + n - w + d) % n);
    let (j, mu, _) = search(&mut local).or_else(|| search(&mut (0..n)))?;
    let k = &og.curvature;
    let h = &og.edge_arc;
    let (jm, jp, jpp) = ((j + n - 1) % n, (j + 1) % n, (j + 2) % n);
    let nodes = [-h[jm], 0.0, h[j], h[j] + h[jp]];
    let vals = [k[jm], k[j], k[jp], k[jpp]];
    let s = mu * h[j];
    let mut out = 0.0;
    for a in 0..4 {
        let mut l = 1.0;
        for b in 0..4 {
            if a != b {
                l *= (s - nodes[b]) / (nodes[a] - nodes[b]);
            }
        }
        out += vals[a] * l;
    }
    Some(out)
}

/// Compares the central time difference of curvature along normal trajectories
/// with the analytic right side, on a trajectory recorded at every step.
pub fn curvature_residual(traj: &Trajectory, field: &AmbientField, params: &FlowParams) -> Result<CurvatureResidual> {
    let s = &traj.snapshots;
    if s.len() < 3 {
        return Err(Error::InsufficientData("need at least 3 snapshots".into()));
    }
    let geoms = s.par_iter().map(|x| compute_geometry(&x.curve)).collect::<Result<Vec<_>>>()?;
    let rows = (1..s.len() - 1)
        .into_par_iter()
        .map(|n| {
            let (c, g) = (&s[n].curve, &geoms[n]);
            let rhs = curvature_rhs(c, g, field, params);
            let (h1, h2) = (s[n].t - s[n - 1].t, s[n + 1].t - s[n].t);
            let mut worst: f64 = 0.0;
            for (i, &x) in c.vertices().iter().enumerate() {
                let nu = g.normal[i];
                let km = curvature_at_foot(&s[n - 1].curve, &geoms[n - 1], x, nu, i)
                    .ok_or_else(|| Error::Domain(format!("no normal correspondence at t = {}", s[n - 1].t)))?;
                let kp = curvature_at_foot(&s[n + 1].curve, &geoms[n + 1], x, nu, i)
                    .ok_or_else(|| Error::Domain(format!("no normal correspondence at t = {}", s[n + 1].t)))?;
                let k0 = g.curvature[i];
                let kt = (h1 * h1 * (kp - k0) + h2 * h2 * (k0 - km)) / (h1 * h2 * (h1 + h2));
                worst = worst.max((kt - rhs[i]).abs());
            }
            Ok((s[n].t, worst))
        })
        .collect::<Result<Vec<_>>>()?;
    let max = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(CurvatureResidual { times: rows.iter().map(|r| r.0).collect(), max_abs: rows.iter().map(|r| r.1).collect(), max })
}
