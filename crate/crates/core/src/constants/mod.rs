//! Explicit thresholds: the curvature threshold `K`, the length threshold `M`,
//! the confinement ODE and a checker for the initial-data hypotheses.

mod cubic;
mod hypotheses;
mod length;
mod ode;

pub use cubic::{bisect_largest_root, curvature_threshold_k, eval_poly, threshold_polynomial, CubicBranch, CubicData};
pub use hypotheses::{case_c_horizon, check_hypotheses, constants_report, ConstantsReport, HypothesisReport, MeasuredInputs};
pub use length::{alpha_weight, length_bound_for_beta, length_threshold_m, ConfinementCase, LengthThreshold};
pub use ode::{solve_confinement_ode, ConfinementSolution, OdeOptions};
