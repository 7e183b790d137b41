use super::cubic::{curvature_threshold_k, CubicData};
use super::length::{length_threshold_m, ConfinementCase, LengthThreshold};
use super::ode::{solve_confinement_ode, OdeOptions};
use crate::error::{Error, Result};
use crate::field::{estimate_bounds, AmbientField, FieldBounds, DEFAULT_BOUNDS_GRID};
use crate::flow::FlowParams;
use crate::geometry::{compute_geometry, ClosedCurve};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Radius used to bound a globally bounded field when no region is given: the
/// built-in bounded fields attain their suprema within the unit disk.
const GLOBAL_PROXY_RADIUS: f64 = 64.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub sigma1: f64,
    pub sigma2: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub cubic: CubicData,
    #[serde(rename = "M")]
    pub m: LengthThreshold,
    pub case: ConfinementCase,
    #[serde(rename = "T0", skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(rename = "x_T0", skip_serializing_if = "Option::is_none")]
    pub x_t0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ode_blow_up: Option<bool>,
}

/// `T0 = 1/(σ1π)`.
pub fn case_c_horizon(sigma1: f64) -> f64 {
    1.0 / (sigma1 * PI)
}

/// `K`, `M` and the cubic data. For case (c), `x_t0` must be provided.
pub fn constants_report(
    params: &FlowParams,
    c0: f64,
    c1: f64,
    c2: f64,
    case: ConfinementCase,
    x_t0: Option<f64>,
    ode_blow_up: Option<bool>,
) -> Result<ConstantsReport> {
    params.validate()?;
    let (k, cubic) = curvature_threshold_k(params.sigma1, params.sigma2, c1, c2)?;
    let m = length_threshold_m(case, params.sigma1, params.sigma2, c0, c1, x_t0)?;
    let case_c = case == ConfinementCase::C;
    Ok(ConstantsReport {
        sigma1: params.sigma1,
        sigma2: params.sigma2,
        c0,
        c1,
        c2,
        k,
        cubic,
        m,
        case,
        t0: case_c.then(|| case_c_horizon(params.sigma1)),
        x_t0: if case_c { x_t0 } else { None },
        ode_blow_up: if case_c { ode_blow_up.or(Some(false)) } else { None },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasuredInputs {
    pub min_k0: f64,
    pub length0: f64,
    pub area0: f64,
    pub max_radius0: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    /// `None` stands for `R0 = ∞`
    pub r0: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub inputs: MeasuredInputs,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "M")]
    pub m: LengthThreshold,
    /// `min k(·,0) > K`
    pub curvature_above_k: bool,
    /// `L(γ0) < M`
    pub length_below_m: bool,
    /// first confinement case that holds, if any
    pub case: Option<ConfinementCase>,
    pub case_b_bound: Option<f64>,
    #[serde(rename = "x_T0")]
    pub x_t0: Option<f64>,
    pub ode_blow_up: Option<bool>,
    /// case-(c) extras: `A(γ0) ≤ 1` and `R0 ≥ x(T0)`
    pub case_c_area: Option<bool>,
    pub case_c_radius: Option<bool>,
}

impl HypothesisReport {
    pub fn all_hold(&self) -> bool {
        self.curvature_above_k && self.length_below_m && self.case.is_some()
    }
}

/// Measures the initial data and evaluates the hypotheses of the round-point
/// result: `min k0 > K`, `L0 < M` and a confinement case. `region = None` means `R0 = ∞` (case (a)).
pub fn check_hypotheses(
    curve: &ClosedCurve,
    field: &AmbientField,
    params: &FlowParams,
    region: Option<f64>,
) -> Result<HypothesisReport> {
    params.validate()?;
    let g = compute_geometry(curve)?;
    let max_radius0 = curve.max_radius();
    let (s1, s2) = (params.sigma1, params.sigma2);

    let mut case = None;
    let (mut case_b_bound, mut x_t0, mut ode_blow_up, mut case_c_area, mut case_c_radius) = (None, None, None, None, None);
    let bounds: FieldBounds = match region {
        None => {
            if field.is_globally_bounded() {
                case = Some(ConfinementCase::A);
            }
            estimate_bounds(field, GLOBAL_PROXY_RADIUS.max(4.0 * max_radius0), DEFAULT_BOUNDS_GRID)?
        }
        Some(r0) => {
            if !(r0 > 0.0) {
                return Err(Error::Domain(format!("region radius must be positive, got {r0}")));
            }
            let b = estimate_bounds(field, r0, DEFAULT_BOUNDS_GRID)?;
            let contained = max_radius0 < r0;
            let bound = s1 / (s2.abs() + b.c0);
            case_b_bound = Some(bound);
            if contained && r0 < bound {
                case = Some(ConfinementCase::B);
            } else {
                let t0 = case_c_horizon(s1);
                let sol = solve_confinement_ode(s2, &|x| field.sup_norm_on_disk(x), max_radius0, t0, &OdeOptions::default());
                let blew = sol.blow_up.is_some();
                ode_blow_up = Some(blew);
                case_c_area = Some(g.area <= 1.0);
                if !blew {
                    let x = sol.end().1;
                    x_t0 = Some(x);
                    case_c_radius = Some(r0 >= x);
                    if contained && g.area <= 1.0 && r0 >= x {
                        case = Some(ConfinementCase::C);
                    }
                } else {
                    case_c_radius = Some(false);
                }
            }
            b
        }
    };

    let (k, _) = curvature_threshold_k(s1, s2, bounds.c1, bounds.c2)?;
    let m = match case {
        Some(ConfinementCase::C) => length_threshold_m(ConfinementCase::C, s1, s2, bounds.c0, bounds.c1, x_t0)?,
        Some(c) => length_threshold_m(c, s1, s2, bounds.c0, bounds.c1, None)?,
        None => length_threshold_m(ConfinementCase::B, s1, s2, bounds.c0, bounds.c1, None)?,
    };
    let min_k0 = g.min_curvature();
    Ok(HypothesisReport {
        inputs: MeasuredInputs {
            min_k0,
            length0: g.length,
            area0: g.area,
            max_radius0,
            c0: bounds.c0,
            c1: bounds.c1,
            c2: bounds.c2,
            r0: region,
        },
        k,
        m,
        curvature_above_k: min_k0 > k,
        length_below_m: m.exceeds(g.length),
        case,
        case_b_bound,
        x_t0,
        ode_blow_up,
        case_c_area,
        case_c_radius,
    })
}
