use crate::error::{Error, Result};
use crate::field::AmbientField;
use crate::flow::{FlowParams, RescaledSnapshot, RescaledTrajectory};
use crate::geometry::compute_geometry;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Gaussian-weighted quantities of one rescaled snapshot.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianTerms {
    /// `R = ∫ρ dŝ`
    pub r: f64,
    /// `∫Q²ρ dŝ`
    pub dissipation: f64,
    /// `(1/(4σ1))∫g²ρ dŝ` with `g = √(2T)e^{−t̂}(σ2 + ⟨V,ν⟩)`
    pub forcing: f64,
    /// `max|Q|`
    pub max_q: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianRow {
    pub t_hat: f64,
    pub r: f64,
    pub dissipation: f64,
    pub forcing: f64,
    pub max_q: f64,
    /// FD `R'` in `t̂`
    pub dr: f64,
    /// `FD R' + ∫Q²ρ dŝ − forcing`
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianMonitor {
    pub rows: Vec<GaussianRow>,
    /// `max |residual|/R`
    pub max_relative_residual: f64,
    /// largest relative increase `(R_{i+1} − R_i)/R_i` (negative when decreasing)
    pub max_relative_increase: f64,
}

/// `ρ = exp(−|γ̂|²/(2σ1))` and `Q = ⟨γ̂,ν⟩/√σ1 + √σ1·k̂ + g/(2√σ1)` integrated over
/// the rescaled curve.
pub fn gaussian_terms(snap: &RescaledSnapshot, origin: crate::geometry::Point2, field: &AmbientField, params: &FlowParams) -> Result<GaussianTerms> {
    let g = compute_geometry(&snap.curve)?;
    let s1 = params.sigma1;
    let rs1 = s1.sqrt();
    let beta = 1.0 / snap.phi;
    let mut out = GaussianTerms { r: 0.0, dissipation: 0.0, forcing: 0.0, max_q: 0.0 };
    for (i, &p) in snap.curve.vertices().iter().enumerate() {
        let nu = g.normal[i];
        let rho = (-p.norm_sq() / (2.0 * s1)).exp();
        let x = origin + p * beta;
        let gi = beta * (params.sigma2 + field.value(x).dot(nu));
        let q = p.dot(nu) / rs1 + rs1 * g.curvature[i] + gi / (2.0 * rs1);
        let w = rho * g.ds[i];
        out.r += w;
        out.dissipation += q * q * w;
        out.forcing += gi * gi * w / (4.0 * s1);
        out.max_q = out.max_q.max(q.abs());
    }
    Ok(out)
}

/// Monotonicity identity of the Gaussian density along a rescaled trajectory:
/// `R' = −∫Q²ρ dŝ + (1/(4σ1))∫g²ρ dŝ`, checked with three-point differences in `t̂`.
pub fn gaussian_monitor(rescaled: &RescaledTrajectory, field: &AmbientField, params: &FlowParams) -> Result<GaussianMonitor> {
    let snaps = &rescaled.snapshots;
    if snaps.len() < 3 {
        return Err(Error::InsufficientData(format!("gaussian monitor needs 3 snapshots, got {}", snaps.len())));
    }
    let terms = snaps
        .par_iter()
        .map(|s| gaussian_terms(s, rescaled.origin, field, params))
        .collect::<Result<Vec<_>>>()?;
    let n = snaps.len();
    let th: Vec<f64> = snaps.iter().map(|s| s.t_hat).collect();
    let rows: Vec<GaussianRow> = (0..n)
        .map(|i| {
            let j = i.clamp(1, n - 2);
            let (t0, t1, t2) = (th[j - 1], th[j], th[j + 1]);
            let (f0, f1, f2) = (terms[j - 1].r, terms[j].r, terms[j + 1].r);
            let t = th[i];
            let dr = f0 * ((t - t1) + (t - t2)) / ((t0 - t1) * (t0 - t2))
                + f1 * ((t - t0) + (t - t2)) / ((t1 - t0) * (t1 - t2))
                + f2 * ((t - t0) + (t - t1)) / ((t2 - t0) * (t2 - t1));
            let tm = terms[i];
            GaussianRow {
                t_hat: t,
                r: tm.r,
                dissipation: tm.dissipation,
                forcing: tm.forcing,
                max_q: tm.max_q,
                dr,
                residual: dr + tm.dissipation - tm.forcing,
            }
        })
        .collect();
    let max_relative_residual = rows.iter().map(|r| (r.residual / r.r).abs()).fold(0.0, f64::max);
    let max_relative_increase = rows.windows(2).map(|w| (w[1].r - w[0].r) / w[0].r).fold(f64::NEG_INFINITY, f64::max);
    Ok(GaussianMonitor { rows, max_relative_residual, max_relative_increase })
}
